#include "mlt/field.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mlt {

namespace detail {
thread_local MultCounter* tl_counter = nullptr;
MultCounter* current_counter() { return tl_counter; }
void set_counter(MultCounter* c) { tl_counter = c; }
}  // namespace detail

CountScope::CountScope(MultCounter& c) : prev_(detail::tl_counter) { detail::tl_counter = &c; }
CountScope::~CountScope() { detail::tl_counter = prev_; }

namespace {

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// dense polynomial arithmetic over F_p on small uint vectors, low degree first
using PPoly = std::vector<std::uint32_t>;

std::size_t pdeg(const PPoly& a) {
    std::size_t n = a.size();
    while (n > 0 && a[n - 1] == 0) --n;
    return n;  // number of significant coefficients (0 for the zero poly)
}

// remainder of a by monic b
PPoly pmod(PPoly a, const PPoly& b, std::uint32_t p) {
    std::size_t db = pdeg(b);
    while (true) {
        std::size_t da = pdeg(a);
        if (da < db) break;
        std::uint32_t c = a[da - 1];
        std::size_t shift = da - db;
        for (std::size_t i = 0; i < db; ++i) {
            std::uint64_t t = (std::uint64_t)c * b[i] % p;
            std::uint32_t& dst = a[i + shift];
            dst = (dst + p - (std::uint32_t)t) % p;
        }
    }
    a.resize(db > 0 ? db - 1 : 0);
    return a;
}

bool divides(const PPoly& d, const PPoly& a, std::uint32_t p) {
    PPoly r = pmod(a, d, p);
    return pdeg(r) == 0;
}

PPoly poly_from_val(std::uint64_t val, std::uint32_t deg, std::uint32_t p) {
    PPoly f(deg + 1, 0);
    for (std::uint32_t k = 0; k < deg; ++k) {
        f[k] = (std::uint32_t)(val % p);
        val /= p;
    }
    f[deg] = 1;
    return f;
}

bool irreducible(const PPoly& f, std::uint32_t p, std::uint32_t m) {
    if (pdeg(f) != m + 1) return false;
    // trial division by every monic polynomial of degree 1..m/2
    for (std::uint32_t dd = 1; 2 * dd <= m; ++dd) {
        std::uint64_t count = 1;
        for (std::uint32_t k = 0; k < dd; ++k) count *= p;
        for (std::uint64_t v = 0; v < count; ++v) {
            PPoly d = poly_from_val(v, dd, p);
            if (divides(d, f, p)) return false;
        }
    }
    return true;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
    std::vector<std::uint32_t> fs;
    for (std::uint32_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

std::uint32_t binom_digit_mod_p(std::uint32_t n, std::uint32_t k, std::uint32_t p) {
    // n, k < p; multiplicative formula with one modular inverse
    if (k > n) return 0;
    if (k == 0 || k == n) return 1;
    std::uint64_t num = 1, den = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    // den != 0 since k < p
    std::uint64_t inv = 1, base = den, e = p - 2;
    while (e) {
        if (e & 1) inv = inv * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return (std::uint32_t)(num * inv % p);
}

}  // namespace

std::uint32_t FieldSpec::mul_raw(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t x = (std::uint64_t)a * b;
    std::uint64_t qest = (x * barrett_im_) >> 32;
    std::uint64_t r = x - qest * p_;
    while (r >= p_) r -= p_;
    return (std::uint32_t)r;
}

std::uint16_t FieldSpec::poly_mul_mod(std::uint16_t a, std::uint16_t b) const {
    // digit-vector product reduced by the modulus; bootstrap path only
    std::vector<std::uint32_t> da(m_), db(m_);
    {
        std::uint32_t x = a, y = b;
        for (std::uint32_t k = 0; k < m_; ++k) {
            da[k] = x % p_;
            x /= p_;
            db[k] = y % p_;
            y /= p_;
        }
    }
    std::vector<std::uint32_t> prod(2 * m_ - 1, 0);
    for (std::uint32_t i = 0; i < m_; ++i) {
        if (!da[i]) continue;
        for (std::uint32_t j = 0; j < m_; ++j)
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    }
    // reduce by the monic modulus
    for (std::uint32_t d = 2 * m_ - 2; d >= m_; --d) {
        std::uint32_t c = prod[d];
        if (c) {
            prod[d] = 0;
            for (std::uint32_t k = 0; k < m_; ++k) {
                std::uint32_t t = (std::uint32_t)((std::uint64_t)c * mod_[k] % p_);
                prod[d - m_ + k] = (prod[d - m_ + k] + p_ - t) % p_;
            }
        }
        if (d == m_) break;
    }
    std::uint32_t idx = 0;
    for (std::uint32_t k = m_; k-- > 0;) idx = idx * p_ + prod[k];
    return (std::uint16_t)idx;
}

std::uint16_t field_test_poly_mul(const FieldSpec& f, std::uint16_t a, std::uint16_t b) {
    if (f.m() == 1) return (std::uint16_t)((std::uint32_t)a * b % f.p());
    return f.poly_mul_mod(a, b);
}

void FieldSpec::init_prime() {
    barrett_im_ = ((std::uint64_t)1 << 32) / p_;
    // smallest primitive root
    if (p_ == 2) {
        gen_ = 1;
        return;
    }
    auto fs = prime_factors(p_ - 1);
    for (std::uint32_t g = 2; g < p_; ++g) {
        bool ok = true;
        for (std::uint32_t f : fs) {
            // g^((p-1)/f) mod p
            std::uint64_t r = 1, base = g, e = (p_ - 1) / f;
            while (e) {
                if (e & 1) r = r * base % p_;
                base = base * base % p_;
                e >>= 1;
            }
            if (r == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            gen_ = (std::uint16_t)g;
            return;
        }
    }
    throw std::logic_error("no primitive root found");
}

void FieldSpec::init_extension() {
    // find a generator, then fill log/antilog tables with bootstrap products
    auto fs = prime_factors(q_ - 1);
    auto pow_boot = [&](std::uint16_t a, std::uint32_t e) {
        std::uint16_t r = 1, base = a;
        while (e) {
            if (e & 1) r = poly_mul_mod(r, base);
            base = poly_mul_mod(base, base);
            e >>= 1;
        }
        return r;
    };
    gen_ = 0;
    for (std::uint32_t c = 1; c < q_; ++c) {
        bool ok = true;
        for (std::uint32_t f : fs) {
            if (pow_boot((std::uint16_t)c, (q_ - 1) / f) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            gen_ = (std::uint16_t)c;
            break;
        }
    }
    if (!gen_) throw std::logic_error("no generator found");

    log_.assign(q_, 0);
    exp_.assign(2 * (q_ - 1), 0);
    std::uint16_t x = 1;
    for (std::uint32_t t = 0; t < q_ - 1; ++t) {
        exp_[t] = x;
        exp_[t + (q_ - 1)] = x;
        log_[x] = (std::uint16_t)t;
        x = poly_mul_mod(x, gen_);
    }
    if (x != 1) throw std::logic_error("generator order mismatch");
}

std::shared_ptr<const FieldSpec> FieldSpec::make(std::uint32_t p, std::uint32_t m) {
    if (m == 1) return make(p, 1, {0, 1});
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    std::uint64_t q = 1;
    for (std::uint32_t k = 0; k < m; ++k) q *= p;
    if (q > (1u << 16)) throw std::invalid_argument("field size exceeds 2^16");
    for (std::uint64_t v = 0; v < q; ++v) {
        PPoly f = poly_from_val(v, m, p);
        if (irreducible(f, p, m)) {
            std::vector<std::uint16_t> mod(f.begin(), f.end());
            return make(p, m, mod);
        }
    }
    throw std::logic_error("no irreducible modulus found");
}

std::shared_ptr<const FieldSpec> FieldSpec::make(std::uint32_t p, std::uint32_t m,
                                                 const std::vector<std::uint16_t>& modulus) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    if (m < 1) throw std::invalid_argument("extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t k = 0; k < m; ++k) {
        q *= p;
        if (q > (1u << 16)) throw std::invalid_argument("field size exceeds 2^16");
    }
    if (modulus.size() != m + 1) throw std::invalid_argument("modulus must have m+1 coefficients");
    if (modulus[m] != 1) throw std::invalid_argument("modulus must be monic");
    for (auto c : modulus)
        if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
    if (m > 1) {
        PPoly f(modulus.begin(), modulus.end());
        if (!irreducible(f, p, m)) throw std::invalid_argument("modulus is not irreducible");
    }

    auto spec = std::shared_ptr<FieldSpec>(new FieldSpec());
    spec->p_ = p;
    spec->m_ = m;
    spec->q_ = (std::uint32_t)q;
    spec->mod_ = modulus;
    if (m == 1)
        spec->init_prime();
    else
        spec->init_extension();
    return spec;
}

FieldElement FieldSpec::element(std::uint32_t j) const {
    if (j >= q_) throw std::invalid_argument("element index out of range");
    return {(std::uint16_t)j};
}

FieldElement FieldSpec::from_int(std::uint64_t v) const { return {(std::uint16_t)(v % p_)}; }

FieldElement FieldSpec::add(FieldElement a, FieldElement b) const {
    if (m_ == 1) {
        std::uint32_t s = (std::uint32_t)a.idx + b.idx;
        if (s >= p_) s -= p_;
        return {(std::uint16_t)s};
    }
    if (p_ == 2) return {(std::uint16_t)(a.idx ^ b.idx)};
    std::uint32_t res = 0, mult = 1, x = a.idx, y = b.idx;
    for (std::uint32_t k = 0; k < m_; ++k) {
        std::uint32_t s = x % p_ + y % p_;
        if (s >= p_) s -= p_;
        res += s * mult;
        mult *= p_;
        x /= p_;
        y /= p_;
    }
    return {(std::uint16_t)res};
}

FieldElement FieldSpec::neg(FieldElement a) const {
    if (m_ == 1) return {(std::uint16_t)(a.idx ? p_ - a.idx : 0)};
    if (p_ == 2) return a;
    std::uint32_t res = 0, mult = 1, x = a.idx;
    for (std::uint32_t k = 0; k < m_; ++k) {
        std::uint32_t d = x % p_;
        res += (d ? p_ - d : 0) * mult;
        mult *= p_;
        x /= p_;
    }
    return {(std::uint16_t)res};
}

FieldElement FieldSpec::sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

FieldElement FieldSpec::mul(FieldElement a, FieldElement b) const {
    detail::count_mults(1);
    if (a.idx == 0 || b.idx == 0) return {};
    if (m_ == 1) return {(std::uint16_t)mul_raw(a.idx, b.idx)};
    return {exp_[(std::uint32_t)log_[a.idx] + log_[b.idx]]};
}

FieldElement FieldSpec::inv(FieldElement a) const {
    if (a.idx == 0) throw std::domain_error("division by zero");
    if (m_ == 1) {
        // Fermat; counted through mul/pow
        return pow(a, p_ - 2);
    }
    detail::count_mults(1);
    std::uint32_t t = (q_ - 1) - log_[a.idx];
    if (t == q_ - 1) t = 0;
    return {exp_[t]};
}

FieldElement FieldSpec::div(FieldElement a, FieldElement b) const {
    if (b.idx == 0) throw std::domain_error("division by zero");
    if (a.idx == 0) return {};
    if (m_ == 1) return mul(a, inv(b));
    detail::count_mults(1);
    std::uint32_t t = (std::uint32_t)log_[a.idx] + (q_ - 1) - log_[b.idx];
    return {exp_[t % (q_ - 1)]};
}

FieldElement FieldSpec::pow(FieldElement a, std::uint64_t e) const {
    if (e == 0) return one();
    if (a.idx == 0) return {};
    if (m_ > 1) {
        detail::count_mults(1);
        std::uint64_t t = (std::uint64_t)log_[a.idx] * (e % (q_ - 1)) % (q_ - 1);
        return {exp_[t]};
    }
    std::uint64_t k = e % (p_ - 1);
    if (k == 0) return one();  // a != 0, Fermat
    FieldElement r = one(), base = a;
    while (k) {
        if (k & 1) r = mul(r, base);
        base = mul(base, base);
        k >>= 1;
    }
    return r;
}

FieldElement FieldSpec::binom(std::uint64_t nn, std::uint64_t kk) const {
    if (kk > nn) return zero();
    std::uint32_t r = 1;
    while ((nn || kk) && r) {
        std::uint32_t nd = (std::uint32_t)(nn % p_), kd = (std::uint32_t)(kk % p_);
        r = (std::uint32_t)((std::uint64_t)r * binom_digit_mod_p(nd, kd, p_) % p_);
        nn /= p_;
        kk /= p_;
    }
    return from_int(r);
}

std::vector<std::uint32_t> FieldSpec::digits(FieldElement a) const {
    std::vector<std::uint32_t> d(m_);
    std::uint32_t x = a.idx;
    for (std::uint32_t k = 0; k < m_; ++k) {
        d[k] = x % p_;
        x /= p_;
    }
    return d;
}

bool FieldSpec::same_field(const FieldSpec& other) const {
    return p_ == other.p_ && m_ == other.m_ && mod_ == other.mod_;
}

}  // namespace mlt
