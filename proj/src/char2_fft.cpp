#include "char2_fft.hpp"

#include <bit>
#include <cassert>
#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

// Multiplication for characteristic-2 fields via additive FFT. Coefficients
// are lifted into GF(2^16) through a subfield embedding and evaluated on an
// F_2-subspace spanned by a Cantor basis beta_1, beta_2, ... with
// s(beta_{i+1}) = beta_i for s(x) = x^2 + x and beta_1 = 1. With such a
// basis the subspace vanishing polynomials are the iterates s_i = s o...o s,
// whose coefficients are all 0/1, so the transform's divisions cost XORs plus
// one multiplication by the coset constant per folded coefficient.

namespace mlt::detail {

namespace {

struct Suppress {
    // one-time table construction must not leak into user op counts
    MultCounter* saved;
    Suppress() : saved(current_counter()) { set_counter(nullptr); }
    ~Suppress() { set_counter(saved); }
};

struct LiftField {
    FieldPtr f;                              // GF(2^16)
    unsigned chain = 0;                      // usable Cantor basis length
    std::vector<std::uint16_t> beta;         // beta[i] = beta_{i+1}
    std::vector<std::uint16_t> pts;          // pts[v] = xor of beta bits of v
    std::vector<std::vector<unsigned>> sexp; // non-leading exponents of s_i

    LiftField() {
        Suppress off;
        f = FieldSpec::make(2, 16);
        // Cantor chain: solve x^2 + x = prev by scanning the field.
        std::vector<std::uint16_t> sq(1u << 16);
        for (std::uint32_t x = 0; x < (1u << 16); ++x)
            sq[x] = (std::uint16_t)(f->mul(f->element(x), f->element(x)).idx ^ x);
        std::uint16_t prev = 1;
        beta.push_back(1);
        while (beta.size() < 16) {
            std::uint32_t found = 0;
            bool ok = false;
            for (std::uint32_t x = 1; x < (1u << 16); ++x) {
                if (sq[x] == prev) {
                    found = x;
                    ok = true;
                    break;
                }
            }
            if (!ok) break;
            beta.push_back((std::uint16_t)found);
            prev = (std::uint16_t)found;
        }
        chain = (unsigned)beta.size();
        pts.assign((std::size_t)1 << chain, 0);
        for (std::size_t v = 1; v < pts.size(); ++v) {
            unsigned b = std::countr_zero(v);
            pts[v] = (std::uint16_t)(pts[v & (v - 1)] ^ beta[b]);
        }
        sexp.resize(17);
        for (unsigned i = 0; i <= 16; ++i)
            for (unsigned j = 0; j < i; ++j)
                if ((i & j) == j) sexp[i].push_back(1u << j);  // binom(i,j) odd
    }
};

const LiftField& lift() {
    static LiftField ctx;
    return ctx;
}

// in-place transforms on GF(2^16) indices; w is the node's coset word
void fwd_transform(std::uint16_t* a, unsigned dim, std::uint64_t w, const LiftField& L) {
    if (dim == 0) return;
    const std::size_t h = (std::size_t)1 << (dim - 1);
    const std::uint16_t c = L.pts[w << 1];
    const auto& terms = L.sexp[dim - 1];
    const FieldSpec& F = *L.f;
    for (std::size_t k = 2 * h; k-- > h;) {
        std::uint16_t ck = a[k];
        if (!ck) continue;
        for (unsigned e : terms) a[k - h + e] ^= ck;
        if (c) a[k - h] ^= F.mul({ck}, {c}).idx;
    }
    for (std::size_t t = 0; t < h; ++t) a[h + t] ^= a[t];
    fwd_transform(a, dim - 1, w << 1, L);
    fwd_transform(a + h, dim - 1, (w << 1) | 1, L);
}

void inv_transform(std::uint16_t* a, unsigned dim, std::uint64_t w, const LiftField& L) {
    if (dim == 0) return;
    const std::size_t h = (std::size_t)1 << (dim - 1);
    inv_transform(a, dim - 1, w << 1, L);
    inv_transform(a + h, dim - 1, (w << 1) | 1, L);
    for (std::size_t t = 0; t < h; ++t) a[h + t] ^= a[t];  // top := q
    const std::uint16_t c = L.pts[w << 1];
    const auto& terms = L.sexp[dim - 1];
    const FieldSpec& F = *L.f;
    for (std::size_t k = h; k < 2 * h; ++k) {
        std::uint16_t ck = a[k];
        if (!ck) continue;
        for (unsigned e : terms) a[k - h + e] ^= ck;
        if (c) a[k - h] ^= F.mul({ck}, {c}).idx;
    }
}

struct Embed {
    std::vector<std::uint16_t> up;    // base index -> lift index
    std::vector<std::uint16_t> down;  // lift index -> base index (0xFFFF outside)
};

using EmbedKey = std::pair<std::uint32_t, std::vector<std::uint16_t>>;

const Embed& embedding(const FieldSpec& f) {
    static std::map<EmbedKey, Embed> cache;
    static std::mutex mu;
    EmbedKey key{f.m(), f.modulus()};
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    Suppress off;
    const LiftField& L = lift();
    Embed e;
    e.up.assign(f.q(), 0);
    e.down.assign((std::size_t)1 << 16, 0xFFFF);
    const unsigned t = f.m();

    if (t == 1) {
        e.up[1] = 1;
    } else {
        // minimal polynomial of the base generator over F_2
        FieldElement g = f.generator();
        std::vector<FieldElement> gpow(t + 1);
        gpow[0] = f.one();
        for (unsigned i = 1; i <= t; ++i) gpow[i] = f.mul(gpow[i - 1], g);
        std::uint32_t minpoly = 0;
        for (std::uint32_t val = 0; val < (1u << t); ++val) {
            FieldElement s = gpow[t];
            for (unsigned i = 0; i < t; ++i)
                if (val & (1u << i)) s = f.add(s, gpow[i]);
            if (s.is_zero()) {
                minpoly = val | (1u << t);
                break;
            }
        }
        if (!minpoly) throw std::logic_error("no minimal polynomial found");
        // root of the minimal polynomial in the lift field
        const FieldSpec& F = *L.f;
        std::uint16_t h = 0;
        for (std::uint32_t x = 1; x < (1u << 16); ++x) {
            FieldElement hx = F.element(x), acc = F.zero(), p = F.one();
            for (unsigned i = 0; i <= t; ++i) {
                if (minpoly & (1u << i)) acc = F.add(acc, p);
                p = F.mul(p, hx);
            }
            if (acc.is_zero()) {
                h = (std::uint16_t)x;
                break;
            }
        }
        if (!h) throw std::logic_error("subfield root not found in lift field");
        FieldElement xb = f.one();
        FieldElement xl = L.f->one();
        for (std::uint32_t a = 0; a + 1 < f.q(); ++a) {
            e.up[xb.idx] = xl.idx;
            xb = f.mul(xb, g);
            xl = L.f->mul(xl, {h});
        }
    }
    for (std::uint32_t i = 0; i < f.q(); ++i) e.down[e.up[i]] = (std::uint16_t)i;
    // embeddings of F_2-linear spaces must be additive
    assert([&] {
        for (std::uint32_t a = 0; a < std::min<std::uint32_t>(f.q(), 64); ++a)
            for (std::uint32_t b = 0; b < std::min<std::uint32_t>(f.q(), 64); ++b)
                if ((std::uint16_t)(e.up[a] ^ e.up[b]) != e.up[a ^ b]) return false;
        return true;
    }());
    return cache.emplace(std::move(key), std::move(e)).first->second;
}

}  // namespace

bool fft2_applicable(const FieldSpec& f, std::size_t out_len) {
    if (f.p() != 2 || 16 % f.m() != 0) return false;
    std::size_t L = std::bit_ceil(out_len);
    return L <= ((std::size_t)1 << lift().chain);
}

void fft2_mul(const FieldSpec& f, const FieldElement* a, std::size_t la,
              const FieldElement* b, std::size_t lb, FieldElement* out) {
    const LiftField& L = lift();
    const Embed& em = embedding(f);
    const std::size_t n = la + lb - 1;
    const std::size_t Ln = std::bit_ceil(n);
    const unsigned dim = (unsigned)std::countr_zero(Ln);

    std::vector<std::uint16_t> ua(Ln, 0), ub(Ln, 0);
    for (std::size_t i = 0; i < la; ++i) ua[i] = em.up[a[i].idx];
    for (std::size_t i = 0; i < lb; ++i) ub[i] = em.up[b[i].idx];

    fwd_transform(ua.data(), dim, 0, L);
    fwd_transform(ub.data(), dim, 0, L);
    const FieldSpec& F = *L.f;
    for (std::size_t i = 0; i < Ln; ++i) ua[i] = F.mul({ua[i]}, {ub[i]}).idx;
    inv_transform(ua.data(), dim, 0, L);

    for (std::size_t i = 0; i < n; ++i) {
        std::uint16_t d = em.down[ua[i]];
        assert(d != 0xFFFF);
        out[i] = {d};
    }
    for (std::size_t i = n; i < Ln; ++i) assert(ua[i] == 0);
}

}  // namespace mlt::detail
