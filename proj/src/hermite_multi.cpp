#include "mlt/hermite_multi.hpp"

#include <atomic>
#include <cassert>
#include <set>
#include <stdexcept>
#include <thread>

namespace mlt {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if (a % b != 0 && a < 0) --q;
    return q;
}

// dynamic-schedule fiber loop; worker op counts flow back to the caller's
// counter so totals are schedule-independent
void parallel_for(std::uint64_t count, unsigned threads,
                  const std::function<void(std::uint64_t)>& fn) {
    if (threads <= 1 || count < 2) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    unsigned T = (unsigned)std::min<std::uint64_t>(threads, count);
    MultCounter* parent = detail::current_counter();
    std::vector<MultCounter> locals(T);
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(T);
    for (unsigned t = 0; t < T; ++t) {
        pool.emplace_back([&, t] {
            std::optional<CountScope> scope;
            if (parent) scope.emplace(locals[t]);
            for (;;) {
                std::uint64_t i = next.fetch_add(1);
                if (i >= count) break;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
    if (parent)
        for (auto& c : locals) parent->value += c.value;
}

std::uint64_t tail_weight(const MultiIndex& k, unsigned axis, unsigned n) {
    // k = (j_1..j_{axis-1}, i_{axis+1}..i_n); the i-part starts at axis-1
    std::uint64_t w = 0;
    for (std::size_t t = axis - 1; t + 1 < n; ++t) w += k[t];
    return w;
}

void warm_cache(UniWorkspaceCache& cache, const std::set<std::size_t>& lengths) {
    for (auto m : lengths) (void)cache.get(m);
}

}  // namespace

void multi_hermite_eval(SegVector& v, const EvalOptions& opts) {
    const auto& seg = v.seg;
    if (!seg || !seg->initial()) throw std::invalid_argument("evaluation needs an initial segment");
    if (v.data.size() != seg->size()) throw std::invalid_argument("segment vector size mismatch");
    const unsigned n = seg->n();
    UniWorkspaceCache cache(v.field);
    {
        std::set<std::size_t> lens;
        for (unsigned ax = 1; ax <= n; ++ax) {
            const auto& fm = seg->fibers(ax);
            for (std::uint64_t kr = 0; kr < fm.proj->size(); ++kr) {
                std::size_t len = fm.starts[kr + 1] - fm.starts[kr];
                if (len) lens.insert(len);
            }
        }
        warm_cache(cache, lens);
    }
    FieldElement* data = v.data.data();
    for (unsigned ax = 1; ax <= n; ++ax) {
        const auto& fm = seg->fibers(ax);
        Basis basis_in = ax == 1 ? opts.first_axis_basis : Basis::newton;
        parallel_for(fm.proj->size(), opts.threads, [&, ax](std::uint64_t kr) {
            std::size_t len = fm.starts[kr + 1] - fm.starts[kr];
            if (len == 0) return;
            const std::uint32_t* idx = fm.flat.data() + fm.starts[kr];
            std::int64_t hint = -1;
            if (opts.support_bound) {
                MultiIndex k = fm.proj->unrank(kr);
                std::uint64_t tail = tail_weight(k, ax, n);
                if ((std::int64_t)tail > *opts.support_bound) {
                    assert([&] {
                        for (std::size_t t = 0; t < len; ++t)
                            if (!data[idx[t]].is_zero()) return false;
                        return true;
                    }());
                    return;
                }
                hint = *opts.support_bound - (std::int64_t)tail;
            }
            std::vector<FieldElement> scratch(len);
            for (std::size_t t = 0; t < len; ++t) scratch[t] = data[idx[t]];
            uni_hermite_eval(cache.get(len), scratch, basis_in, hint);
            for (std::size_t t = 0; t < len; ++t) data[idx[t]] = scratch[t];
        });
        if (opts.sweep_hook) opts.sweep_hook(ax);
    }
    v.meaning = SegVector::Meaning::derivative_values;
}

void multi_hermite_interp(SegVector& v, const InterpOptions& opts) {
    const auto& seg = v.seg;
    if (!seg || !seg->initial())
        throw std::invalid_argument("interpolation needs an initial segment");
    if (v.data.size() != seg->size()) throw std::invalid_argument("segment vector size mismatch");
    const unsigned n = seg->n();
    UniWorkspaceCache cache(v.field);
    {
        std::set<std::size_t> lens;
        for (unsigned ax = 1; ax <= n; ++ax) {
            const auto& fm = seg->fibers(ax);
            for (std::uint64_t kr = 0; kr < fm.proj->size(); ++kr) {
                std::size_t len = fm.starts[kr + 1] - fm.starts[kr];
                if (len) lens.insert(len);
            }
        }
        warm_cache(cache, lens);
    }
    FieldElement* data = v.data.data();
    for (unsigned ax = n; ax >= 1; --ax) {
        const auto& fm = seg->fibers(ax);
        Basis basis_out = ax == 1 ? opts.last_axis_basis : Basis::newton;
        parallel_for(fm.proj->size(), opts.threads, [&](std::uint64_t kr) {
            std::size_t len = fm.starts[kr + 1] - fm.starts[kr];
            if (len == 0) return;
            const std::uint32_t* idx = fm.flat.data() + fm.starts[kr];
            std::vector<FieldElement> scratch(len);
            for (std::size_t t = 0; t < len; ++t) scratch[t] = data[idx[t]];
            uni_hermite_interp(cache.get(len), scratch, basis_out);
            for (std::size_t t = 0; t < len; ++t) data[idx[t]] = scratch[t];
        });
        if (ax == 1) break;
    }
    v.meaning = SegVector::Meaning::newton_coeffs;
}

void multi_hermite_eval_R(std::int64_t d, std::uint32_t s, SegVector& v, unsigned threads) {
    auto rs = std::dynamic_pointer_cast<const ResidualSet>(v.seg);
    if (!rs) throw std::invalid_argument("residual evaluation needs a residual set");
    const unsigned n = rs->n();
    if (n < 2) throw std::invalid_argument("residual evaluation needs n >= 2");
    if (d < 0 || d != rs->d() || s != rs->s())
        throw std::invalid_argument("parameters disagree with the residual set");
    if (v.data.size() != rs->size()) throw std::invalid_argument("segment vector size mismatch");
    const FieldSpec& F = *v.field;
    const std::int64_t q = F.q();
    if (d >= (std::int64_t)s * q) throw std::invalid_argument("needs d < sq");

    // U_r = (X^{q-1}-1)^r mod X^{s-r}, r = 0..floor((d+1)/q); multiplication
    // by (X^{q-1}-1) is a shift-and-subtract, so this costs no field mults
    std::int64_t rmax = std::max<std::int64_t>(floor_div(d + 1, q), 0);
    std::vector<polyk::Vec> upow((std::size_t)rmax + 1);
    upow[0] = {F.one()};
    for (std::int64_t r = 1; r <= rmax; ++r) {
        std::size_t cap = (std::size_t)(s - r);
        const polyk::Vec& prev = upow[r - 1];
        polyk::Vec nu(std::min(cap, prev.size() + (std::size_t)q - 1), FieldElement{});
        for (std::size_t j = 0; j < nu.size(); ++j) {
            FieldElement hi = (std::int64_t)j >= q - 1 && j - (q - 1) < prev.size()
                                  ? prev[j - (q - 1)]
                                  : FieldElement{};
            FieldElement lo = j < prev.size() ? prev[j] : FieldElement{};
            nu[j] = F.sub(hi, lo);
        }
        upow[r] = std::move(nu);
    }

    UniWorkspaceCache cache(v.field);
    {
        std::set<std::size_t> lens;
        const auto& fm0 = rs->fibers(1);
        for (std::uint64_t kr = 0; kr < fm0.proj->size(); ++kr) {
            MultiIndex k = fm0.proj->unrank(kr);
            std::int64_t dd = d - (std::int64_t)weight(k);
            std::int64_t kdiv = 0;
            for (auto c : k) kdiv += c / q;
            std::int64_t ss = (std::int64_t)s - kdiv;
            if (dd + 1 >= ss * q) continue;
            std::int64_t rr = std::max<std::int64_t>(floor_div(dd + 1, q), 0);
            lens.insert((std::size_t)((ss - rr) * q));
        }
        warm_cache(cache, lens);
    }

    FieldElement* data = v.data.data();
    for (unsigned ax = 1; ax <= n; ++ax) {
        const auto& fm = rs->fibers(ax);
        parallel_for(fm.proj->size(), threads, [&](std::uint64_t kr) {
            std::size_t len = fm.starts[kr + 1] - fm.starts[kr];
            if (len == 0) return;  // d = sq-1 boundary: empty residual fiber
            const std::uint32_t* idx = fm.flat.data() + fm.starts[kr];
            MultiIndex k = fm.proj->unrank(kr);
            std::int64_t dd = d - (std::int64_t)weight(k);
            std::int64_t kdiv = 0;
            for (auto c : k) kdiv += c / q;
            std::uint32_t ss = (std::uint32_t)((std::int64_t)s - kdiv);
            std::int64_t rr = std::max<std::int64_t>(floor_div(dd + 1, q), 0);
            const polyk::Vec& u = upow[rr];
            std::size_t ucap = (std::size_t)(ss - rr);
            std::span<const FieldElement> uview(u.data(), std::min(u.size(), ucap));
            std::vector<FieldElement> scratch(len);
            for (std::size_t t = 0; t < len; ++t) scratch[t] = data[idx[t]];
            uni_hermite_eval_R(cache, dd, ss, scratch, uview);
            for (std::size_t t = 0; t < len; ++t) data[idx[t]] = scratch[t];
        });
    }
    v.meaning = SegVector::Meaning::derivative_values;
}

}  // namespace mlt
