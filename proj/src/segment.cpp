#include "mlt/segment.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace mlt {

namespace {

constexpr std::uint64_t kMaxSegmentSize = std::uint64_t(1) << 24;

std::uint64_t binom_checked(std::int64_t a, std::int64_t b) {
    if (b < 0 || a < 0 || b > a) return 0;
    b = std::min(b, a - b);
    unsigned __int128 res = 1;
    for (std::int64_t i = 1; i <= b; ++i) {
        res = res * (unsigned __int128)(a - b + i) / (unsigned __int128)i;
        if (res > ~(std::uint64_t)0) throw std::invalid_argument("index set too large");
    }
    return (std::uint64_t)res;
}

// #{ v in [cap]^cnt : |v| = u }
std::uint64_t bounded_count(unsigned cnt, std::int64_t u, std::int64_t cap) {
    if (u < 0) return 0;
    if (cnt == 0) return u == 0 ? 1 : 0;
    __int128 acc = 0;
    for (unsigned k = 0; k <= cnt; ++k) {
        std::int64_t w = u - (std::int64_t)k * cap;
        if (w < 0) break;
        std::uint64_t term = binom_checked(w + cnt - 1, cnt - 1);
        std::uint64_t ways = binom_checked(cnt, k);
        __int128 t = (__int128)term * ways;
        acc += (k & 1) ? -t : t;
    }
    if (acc < 0) throw std::logic_error("negative bounded count");
    return (std::uint64_t)acc;
}

MultiIndex drop_axis(const MultiIndex& i, unsigned axis) {
    if (i.size() == 1) return MultiIndex{0};
    MultiIndex k;
    k.reserve(i.size() - 1);
    for (std::size_t t = 0; t < i.size(); ++t)
        if (t + 1 != axis) k.push_back(i[t]);
    return k;
}

}  // namespace

std::uint64_t weight(const MultiIndex& i) {
    std::uint64_t w = 0;
    for (auto v : i) w += v;
    return w;
}

bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
    std::uint64_t wa = weight(a), wb = weight(b);
    if (wa != wb) return wa < wb;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::uint64_t simplex_size(unsigned n, std::int64_t d) {
    if (d < 0) return 0;
    return binom_checked(d + n, n);
}

std::uint64_t deriv_size(unsigned n, std::uint32_t s, std::uint32_t q) {
    std::uint64_t sigma = binom_checked((std::int64_t)n + s - 1, n);
    unsigned __int128 sz = sigma;
    for (unsigned k = 0; k < n; ++k) {
        sz *= q;
        if (sz > ~(std::uint64_t)0) throw std::invalid_argument("index set too large");
    }
    return (std::uint64_t)sz;
}

// ---------------------------------------------------------------------------
// IndexSet

void IndexSet::check_axis(unsigned axis) const {
    if (axis < 1 || axis > n_) throw std::invalid_argument("axis out of range");
}

const IndexSet::FiberMap& IndexSet::fibers(unsigned axis) const {
    check_axis(axis);
    return fibers_[axis - 1];
}

std::span<const std::uint32_t> IndexSet::fiber_indices(unsigned axis, const MultiIndex& k) const {
    const FiberMap& fm = fibers(axis);
    std::uint64_t kr = fm.proj->rank(k);
    return {fm.flat.data() + fm.starts[kr], fm.flat.data() + fm.starts[kr + 1]};
}

std::vector<MultiIndex> IndexSet::members() const {
    std::vector<MultiIndex> out;
    out.reserve(size_);
    for (std::uint64_t r = 0; r < size_; ++r) out.push_back(unrank(r));
    return out;
}

void IndexSet::build_fiber_maps() {
    fibers_.resize(n_);
    for (unsigned ax = 1; ax <= n_; ++ax) {
        FiberMap& fm = fibers_[ax - 1];
        fm.proj = projection_set(ax);
        std::uint64_t pn = fm.proj->size();
        fm.starts.assign(pn + 1, 0);
        std::vector<std::uint64_t> kr_of(size_);
        for (std::uint64_t r = 0; r < size_; ++r) {
            MultiIndex i = unrank(r);
            std::uint64_t kr = fm.proj->rank(drop_axis(i, ax));
            kr_of[r] = kr;
            ++fm.starts[kr + 1];
        }
        for (std::uint64_t k = 0; k < pn; ++k) fm.starts[k + 1] += fm.starts[k];
        fm.flat.assign(size_, 0);
        std::vector<std::uint32_t> cursor(fm.starts.begin(), fm.starts.end() - 1);
        for (std::uint64_t r = 0; r < size_; ++r) fm.flat[cursor[kr_of[r]]++] = (std::uint32_t)r;
    }
}

// ---------------------------------------------------------------------------
// InitialSegment

std::shared_ptr<InitialSegment> InitialSegment::create(Kind k, unsigned n) {
    auto seg = std::shared_ptr<InitialSegment>(new InitialSegment());
    seg->kind_ = k;
    seg->n_ = n;
    return seg;
}

SegmentPtr InitialSegment::simplex(unsigned n, std::int64_t d) {
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    if (d < 0) throw std::invalid_argument("simplex segment needs d >= 0");
    auto seg = create(Kind::simplex, n);
    seg->d_ = d;
    seg->size_ = simplex_size(n, d);
    seg->finish();
    return seg;
}

SegmentPtr InitialSegment::deriv(unsigned n, std::uint32_t s, std::uint32_t q) {
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    if (s < 1 || q < 2) throw std::invalid_argument("derivative segment needs s >= 1, q >= 2");
    auto seg = create(Kind::deriv, n);
    seg->s_ = s;
    seg->q_ = q;
    seg->size_ = deriv_size(n, s, q);
    seg->finish();
    return seg;
}

SegmentPtr InitialSegment::box(const std::vector<std::uint32_t>& caps) {
    if (caps.empty()) throw std::invalid_argument("dimension must be >= 1");
    for (auto c : caps)
        if (c < 1) throw std::invalid_argument("box cap must be >= 1");
    auto seg = create(Kind::box, (unsigned)caps.size());
    seg->caps_ = caps;
    unsigned __int128 sz = 1;
    for (auto c : caps) {
        sz *= c;
        if (sz > kMaxSegmentSize) throw std::invalid_argument("index set too large");
    }
    seg->size_ = (std::uint64_t)sz;
    seg->finish();
    return seg;
}

SegmentPtr InitialSegment::interval(std::uint64_t m) {
    if (m < 1) throw std::invalid_argument("interval needs m >= 1");
    if (m == 1) {
        // the segment {0}; every 1-dimensional projection lands here, so its
        // own fiber map points at itself (one immortal instance)
        static SegmentPtr point = [] {
            auto seg = create(Kind::interval, 1);
            seg->m_ = 1;
            seg->size_ = 1;
            FiberMap fm;
            fm.proj = seg;
            fm.starts = {0, 1};
            fm.flat = {0};
            seg->fibers_.push_back(std::move(fm));
            return SegmentPtr(seg);
        }();
        return point;
    }
    auto seg = create(Kind::interval, 1);
    seg->m_ = m;
    seg->size_ = m;
    seg->finish();
    return seg;
}

SegmentPtr InitialSegment::custom(unsigned n, std::vector<MultiIndex> members) {
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    for (auto& mi : members)
        if (mi.size() != n) throw std::invalid_argument("member dimension mismatch");
    std::sort(members.begin(), members.end(), graded_lex_less);
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty()) throw std::invalid_argument("initial segment must be nonempty");
    auto present = [&](const MultiIndex& i) {
        return std::binary_search(members.begin(), members.end(), i, graded_lex_less);
    };
    for (const auto& mi : members) {
        for (unsigned t = 0; t < n; ++t) {
            if (mi[t] == 0) continue;
            MultiIndex below = mi;
            --below[t];
            if (!present(below)) throw std::invalid_argument("member set is not downward closed");
        }
    }
    auto seg = create(Kind::custom, n);
    seg->size_ = members.size();
    seg->members_ = std::move(members);
    seg->finish();
    return seg;
}

void InitialSegment::finish() {
    if (size_ == 0) throw std::invalid_argument("initial segment must be nonempty");
    if (size_ > kMaxSegmentSize) throw std::invalid_argument("index set too large");
    if (n_ >= 2 && kind_ != Kind::custom) {
        std::uint64_t wmax;
        switch (kind_) {
            case Kind::simplex: wmax = (std::uint64_t)d_; break;
            case Kind::deriv: wmax = (std::uint64_t)n_ * ((std::uint64_t)s_ * q_ - 1); break;
            default: {
                wmax = 0;
                for (auto c : caps_) wmax += c - 1;
            }
        }
        cum_weight_.assign(wmax + 2, 0);
        for (std::uint64_t w = 0; w <= wmax; ++w)
            cum_weight_[w + 1] = cum_weight_[w] + count_weight(w);
        assert(cum_weight_.back() == size_);
    }
    build_fiber_maps();
}

std::uint64_t InitialSegment::count_weight(std::uint64_t w) const {
    switch (kind_) {
        case Kind::simplex:
            return (std::int64_t)w <= d_ ? binom_checked(w + n_ - 1, n_ - 1) : 0;
        case Kind::deriv:
            return count_suffix(0, (std::int64_t)w, (std::int64_t)s_ - 1);
        default:
            return count_suffix(0, (std::int64_t)w, 0);
    }
}

std::uint64_t InitialSegment::count_suffix(unsigned pos, std::int64_t w, std::int64_t tbudget) const {
    if (w < 0) return 0;
    unsigned cnt = n_ - pos;
    if (cnt == 0) return w == 0 ? 1 : 0;
    switch (kind_) {
        case Kind::simplex:
            return binom_checked(w + cnt - 1, cnt - 1);
        case Kind::deriv: {
            if (tbudget < 0) return 0;
            std::uint64_t acc = 0;
            for (std::int64_t t = 0; t <= tbudget && t * q_ <= w; ++t)
                acc += binom_checked(t + cnt - 1, cnt - 1) * bounded_count(cnt, w - t * q_, q_);
            return acc;
        }
        case Kind::box: {
            bool uniform = true;
            for (unsigned t = pos; t < n_; ++t)
                if (caps_[t] != caps_[pos]) uniform = false;
            if (uniform) return bounded_count(cnt, w, caps_[pos]);
            if (cnt > 16) throw std::invalid_argument("box dimension too large for ranking");
            __int128 acc = 0;
            for (std::uint32_t mask = 0; mask < (1u << cnt); ++mask) {
                std::int64_t shift = 0;
                unsigned bits = 0;
                for (unsigned t = 0; t < cnt; ++t)
                    if (mask & (1u << t)) {
                        shift += caps_[pos + t];
                        ++bits;
                    }
                if (w - shift < 0) continue;
                __int128 term = binom_checked(w - shift + cnt - 1, cnt - 1);
                acc += (bits & 1) ? -term : term;
            }
            return (std::uint64_t)acc;
        }
        default:
            throw std::logic_error("count_suffix on list-backed segment");
    }
}

bool InitialSegment::contains(const MultiIndex& i) const {
    if (i.size() != n_) return false;
    switch (kind_) {
        case Kind::simplex:
            return (std::int64_t)weight(i) <= d_;
        case Kind::deriv: {
            std::uint64_t t = 0;
            for (auto v : i) t += v / q_;
            return t < s_;
        }
        case Kind::box:
            for (unsigned k = 0; k < n_; ++k)
                if (i[k] >= caps_[k]) return false;
            return true;
        case Kind::interval:
            return i[0] < m_;
        default:
            return std::binary_search(members_.begin(), members_.end(), i, graded_lex_less);
    }
}

std::uint64_t InitialSegment::rank(const MultiIndex& i) const {
    if (!contains(i)) throw std::invalid_argument("multi-index not in segment");
    if (kind_ == Kind::custom) {
        auto it = std::lower_bound(members_.begin(), members_.end(), i, graded_lex_less);
        return (std::uint64_t)(it - members_.begin());
    }
    if (n_ == 1) return i[0];
    std::uint64_t W = weight(i);
    std::uint64_t r = cum_weight_[W];
    std::int64_t wrem = (std::int64_t)W;
    std::int64_t tb = kind_ == Kind::deriv ? (std::int64_t)s_ - 1 : 0;
    for (unsigned pos = 0; pos < n_; ++pos) {
        std::uint32_t v = i[pos];
        if (kind_ == Kind::simplex) {
            // sum_{c<v} binom(wrem-c+cnt-1, cnt-1), telescoped
            unsigned cnt = n_ - pos - 1;
            r += binom_checked(wrem + cnt, cnt) - binom_checked(wrem - v + cnt, cnt);
        } else {
            for (std::uint32_t c = 0; c < v; ++c) {
                std::int64_t tb2 = kind_ == Kind::deriv ? tb - c / q_ : tb;
                r += count_suffix(pos + 1, wrem - c, tb2);
            }
        }
        if (kind_ == Kind::deriv) tb -= v / q_;
        wrem -= v;
    }
    return r;
}

MultiIndex InitialSegment::unrank(std::uint64_t r) const {
    if (r >= size_) throw std::invalid_argument("rank out of range");
    if (kind_ == Kind::custom) return members_[r];
    if (n_ == 1) return {(std::uint32_t)r};
    auto it = std::upper_bound(cum_weight_.begin(), cum_weight_.end(), r);
    std::uint64_t W = (std::uint64_t)(it - cum_weight_.begin()) - 1;
    std::uint64_t rem = r - cum_weight_[W];
    MultiIndex i(n_, 0);
    std::int64_t wrem = (std::int64_t)W;
    std::int64_t tb = kind_ == Kind::deriv ? (std::int64_t)s_ - 1 : 0;
    for (unsigned pos = 0; pos < n_; ++pos) {
        for (std::uint32_t c = 0;; ++c) {
            std::int64_t tb2 = kind_ == Kind::deriv ? tb - c / q_ : tb;
            std::uint64_t cnt = count_suffix(pos + 1, wrem - c, tb2);
            if (rem < cnt) {
                i[pos] = c;
                wrem -= c;
                if (kind_ == Kind::deriv) tb = tb2;
                break;
            }
            rem -= cnt;
        }
    }
    assert(wrem == 0);
    return i;
}

SegmentPtr InitialSegment::projection_set(unsigned axis) const {
    check_axis(axis);
    if (n_ == 1) return interval(1);
    switch (kind_) {
        case Kind::simplex:
            return simplex(n_ - 1, d_);
        case Kind::deriv:
            return deriv(n_ - 1, s_, q_);
        case Kind::box: {
            std::vector<std::uint32_t> caps = caps_;
            caps.erase(caps.begin() + (axis - 1));
            return box(caps);
        }
        case Kind::custom: {
            std::vector<MultiIndex> proj;
            proj.reserve(members_.size());
            for (const auto& mi : members_) proj.push_back(drop_axis(mi, axis));
            return custom(n_ - 1, std::move(proj));
        }
        default:
            return interval(1);
    }
}

SegmentPtr InitialSegment::projection(unsigned axis) const { return fibers(axis).proj; }

SegmentPtr InitialSegment::fiber(unsigned axis, const MultiIndex& k) const {
    const FiberMap& fm = fibers(axis);
    std::uint64_t kr = fm.proj->rank(k);
    std::uint64_t len = fm.starts[kr + 1] - fm.starts[kr];
    assert(kind_ != Kind::simplex || n_ == 1 || len == (std::uint64_t)(d_ - (std::int64_t)weight(k) + 1));
    assert(kind_ != Kind::deriv || n_ == 1 || [&] {
        std::uint64_t kdiv = 0;
        for (auto v : k) kdiv += v / q_;
        return len == (std::uint64_t)(s_ - kdiv) * q_;
    }());
    return interval(len);
}

SegmentPtr InitialSegment::lambda_set(const MultiIndex& suffix) const {
    if (suffix.empty() || suffix.size() >= n_) throw std::invalid_argument("bad suffix length");
    unsigned keep = n_ - (unsigned)suffix.size();
    std::vector<MultiIndex> out;
    for (std::uint64_t r = 0; r < size_; ++r) {
        MultiIndex i = unrank(r);
        if (std::equal(i.begin() + keep, i.end(), suffix.begin()))
            out.emplace_back(i.begin(), i.begin() + keep);
    }
    return custom(keep, std::move(out));
}

SegmentPtr InitialSegment::rho_set(const MultiIndex& prefix) const {
    if (prefix.empty() || prefix.size() >= n_) throw std::invalid_argument("bad prefix length");
    unsigned keep = n_ - (unsigned)prefix.size();
    std::vector<MultiIndex> out;
    for (std::uint64_t r = 0; r < size_; ++r) {
        MultiIndex i = unrank(r);
        if (std::equal(i.begin(), i.begin() + prefix.size(), prefix.begin()))
            out.emplace_back(i.begin() + prefix.size(), i.end());
    }
    return custom(keep, std::move(out));
}

// ---------------------------------------------------------------------------
// ResidualSet

std::shared_ptr<const ResidualSet> ResidualSet::make(const SegmentPtr& c_segment, std::int64_t d) {
    if (!c_segment || c_segment->kind() != InitialSegment::Kind::deriv)
        throw std::invalid_argument("residual set needs a derivative segment");
    std::uint32_t s = c_segment->deriv_s(), q = c_segment->field_q();
    unsigned n = c_segment->n();
    if (d >= (std::int64_t)s * q) throw std::invalid_argument("residual set needs d < sq");
    auto rs = std::shared_ptr<ResidualSet>(new ResidualSet());
    rs->c_ = c_segment;
    rs->d_ = d;
    rs->s_ = s;
    rs->q_ = q;
    rs->n_ = n;
    rs->i_size_ = simplex_size(n, d);
    rs->size_ = c_segment->size() - rs->i_size_;
    rs->build_fiber_maps();
    return rs;
}

bool ResidualSet::contains(const MultiIndex& i) const {
    return c_->contains(i) && (std::int64_t)weight(i) > d_;
}

std::uint64_t ResidualSet::rank(const MultiIndex& i) const {
    if (!contains(i)) throw std::invalid_argument("multi-index not in residual set");
    return c_->rank(i) - i_size_;
}

MultiIndex ResidualSet::unrank(std::uint64_t r) const {
    if (r >= size_) throw std::invalid_argument("rank out of range");
    return c_->unrank(r + i_size_);
}

SegmentPtr ResidualSet::projection_set(unsigned axis) const {
    check_axis(axis);
    if (n_ == 1) return InitialSegment::interval(1);
    return c_->projection(axis);
}

}  // namespace mlt
