#include "mlt/poly.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>

#include "char2_fft.hpp"

namespace mlt {

MulTuning& mul_tuning() {
    static MulTuning t;
    return t;
}

namespace polyk {

std::size_t logical_len(const Vec& a) { return logical_len(std::span<const FieldElement>(a)); }

std::size_t logical_len(std::span<const FieldElement> a) {
    std::size_t n = a.size();
    while (n > 0 && a[n - 1].is_zero()) --n;
    return n;
}

namespace {

void mul_school_into(const FieldSpec& F, const FieldElement* a, std::size_t la,
                     const FieldElement* b, std::size_t lb, FieldElement* out) {
    for (std::size_t i = 0; i < la; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < lb; ++j)
            out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
    }
}

void mul_dispatch(const FieldSpec& F, const FieldElement* a, std::size_t la,
                  const FieldElement* b, std::size_t lb, FieldElement* out);

void mul_karatsuba(const FieldSpec& F, const FieldElement* a, std::size_t la,
                   const FieldElement* b, std::size_t lb, FieldElement* out) {
    std::size_t h = (std::max(la, lb) + 1) / 2;
    if (la <= h || lb <= h) {
        // unbalanced: split only the longer operand
        if (la > lb) {
            mul_dispatch(F, a, h, b, lb, out);
            Vec hi(la - h + lb - 1, FieldElement{});
            mul_dispatch(F, a + h, la - h, b, lb, hi.data());
            for (std::size_t i = 0; i < hi.size(); ++i) out[h + i] = F.add(out[h + i], hi[i]);
        } else {
            mul_karatsuba(F, b, lb, a, la, out);
        }
        return;
    }
    std::size_t la1 = la - h, lb1 = lb - h;
    Vec z0(2 * h - 1, FieldElement{}), z2(la1 + lb1 - 1, FieldElement{});
    mul_dispatch(F, a, h, b, h, z0.data());
    mul_dispatch(F, a + h, la1, b + h, lb1, z2.data());
    std::size_t ls = h;  // la1,lb1 <= h
    Vec sa(ls, FieldElement{}), sb(ls, FieldElement{});
    for (std::size_t i = 0; i < h; ++i) sa[i] = a[i];
    for (std::size_t i = 0; i < la1; ++i) sa[i] = F.add(sa[i], a[h + i]);
    for (std::size_t i = 0; i < h; ++i) sb[i] = b[i];
    for (std::size_t i = 0; i < lb1; ++i) sb[i] = F.add(sb[i], b[h + i]);
    std::size_t lsa = logical_len(sa), lsb = logical_len(sb);
    Vec z1;
    if (lsa && lsb) {
        z1.assign(lsa + lsb - 1, FieldElement{});
        mul_dispatch(F, sa.data(), lsa, sb.data(), lsb, z1.data());
    }
    for (std::size_t i = 0; i < z0.size(); ++i) out[i] = F.add(out[i], z0[i]);
    for (std::size_t i = 0; i < z2.size(); ++i) out[2 * h + i] = F.add(out[2 * h + i], z2[i]);
    std::size_t mid = std::max({z1.size(), z0.size(), z2.size()});
    for (std::size_t i = 0; i < mid; ++i) {
        FieldElement v = i < z1.size() ? z1[i] : FieldElement{};
        if (i < z0.size()) v = F.sub(v, z0[i]);
        if (i < z2.size()) v = F.sub(v, z2[i]);
        out[h + i] = F.add(out[h + i], v);
    }
}

void mul_dispatch(const FieldSpec& F, const FieldElement* a, std::size_t la,
                  const FieldElement* b, std::size_t lb, FieldElement* out) {
    std::size_t n = la + lb - 1;
    const MulTuning& t = mul_tuning();
    if (std::min(la, lb) <= 2 || n < std::min(t.fft_from, t.schoolbook_below)) {
        mul_school_into(F, a, la, b, lb, out);
        return;
    }
    if (t.enable_fft && n >= t.fft_from && detail::fft2_applicable(F, n)) {
        detail::fft2_mul(F, a, la, b, lb, out);
        return;
    }
    if (n >= t.schoolbook_below) {
        mul_karatsuba(F, a, la, b, lb, out);
        return;
    }
    mul_school_into(F, a, la, b, lb, out);
}

}  // namespace

Vec mul(const FieldSpec& F, const Vec& a0, const Vec& b0) {
    std::size_t la = logical_len(a0), lb = logical_len(b0);
    if (la == 0 || lb == 0) return {};
    Vec out(la + lb - 1, FieldElement{});
    mul_dispatch(F, a0.data(), la, b0.data(), lb, out.data());
    return out;
}

Vec mul_trunc(const FieldSpec& F, const Vec& a0, const Vec& b0, std::size_t k) {
    std::size_t la = std::min(logical_len(a0), k), lb = std::min(logical_len(b0), k);
    if (la == 0 || lb == 0 || k == 0) return {};
    Vec out(la + lb - 1, FieldElement{});
    mul_dispatch(F, a0.data(), la, b0.data(), lb, out.data());
    if (out.size() > k) out.resize(k);
    return out;
}

Vec series_inv(const FieldSpec& F, const Vec& a, std::size_t k) {
    if (a.empty() || a[0].is_zero()) throw std::invalid_argument("series_inv: zero constant term");
    Vec h{F.inv(a[0])};
    std::size_t prec = 1;
    while (prec < k) {
        prec = std::min(2 * prec, k);
        // h <- h + h*(1 - a*h) mod X^prec
        Vec ah = mul_trunc(F, a, h, prec);
        for (auto& c : ah) c = F.neg(c);
        if (ah.empty()) ah.resize(1, FieldElement{});
        ah[0] = F.add(ah[0], F.one());
        Vec corr = mul_trunc(F, h, ah, prec);
        h.resize(prec, FieldElement{});
        for (std::size_t i = 0; i < corr.size(); ++i) h[i] = F.add(h[i], corr[i]);
    }
    h.resize(k, FieldElement{});
    return h;
}

namespace {

void divrem_school(const FieldSpec& F, const Vec& a, const Vec& b, Vec& q, Vec& r) {
    std::size_t la = logical_len(a), lb = logical_len(b);
    r.assign(a.begin(), a.begin() + la);
    q.assign(la >= lb ? la - lb + 1 : 0, FieldElement{});
    FieldElement lead = b[lb - 1];
    bool monic = lead == F.one();
    FieldElement il = monic ? F.one() : F.inv(lead);
    for (std::size_t i = la; i-- > 0;) {
        if (i + 1 < lb) break;
        FieldElement c = r[i];
        if (c.is_zero()) continue;
        if (!monic) c = F.mul(c, il);
        q[i - lb + 1] = c;
        for (std::size_t j = 0; j < lb; ++j)
            r[i - lb + 1 + j] = F.sub(r[i - lb + 1 + j], F.mul(c, b[j]));
    }
    r.resize(lb > 0 ? lb - 1 : 0);
}

}  // namespace

void divrem(const FieldSpec& F, const Vec& a, const Vec& b, Vec& q, Vec& r) {
    std::size_t la = logical_len(a), lb = logical_len(b);
    if (lb == 0) throw std::invalid_argument("divrem: division by zero polynomial");
    if (la < lb) {
        q.clear();
        r.assign(a.begin(), a.begin() + la);
        return;
    }
    std::size_t k = la - lb + 1;
    if (lb < 32 || k < 32) {
        divrem_school(F, a, b, q, r);
        return;
    }
    // Newton reversal division
    Vec rb(b.begin(), b.begin() + lb);
    std::reverse(rb.begin(), rb.end());
    Vec inv = series_inv(F, rb, k);
    Vec ra(a.begin(), a.begin() + la);
    std::reverse(ra.begin(), ra.end());
    Vec qrev = mul_trunc(F, ra, inv, k);
    qrev.resize(k, FieldElement{});
    q.assign(qrev.rbegin(), qrev.rend());
    Vec qb = mul_trunc(F, q, Vec(b.begin(), b.begin() + lb), lb - 1);
    r.assign(a.begin(), a.begin() + std::min(la, lb - 1));
    r.resize(lb - 1, FieldElement{});
    for (std::size_t i = 0; i < qb.size(); ++i) r[i] = F.sub(r[i], qb[i]);
}

namespace {

void shift_base(const FieldSpec& F, FieldElement* f, std::size_t n, FieldElement a) {
    // iterated synthetic Horner shift, O(n^2)
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j-- > i;)
            f[j] = F.add(f[j], F.mul(a, f[j + 1]));
}

void shift_rec(const FieldSpec& F, FieldElement* f, std::size_t n,
               const std::vector<Vec>& pows, FieldElement a) {
    if (n <= 16) {
        shift_base(F, f, n, a);
        return;
    }
    std::size_t h = std::bit_floor(n - 1);
    shift_rec(F, f, h, pows, a);
    shift_rec(F, f + h, n - h, pows, a);
    const Vec& p = pows[std::countr_zero(h)];  // (X+a)^h, length h+1
    Vec hi(f + h, f + n);
    std::size_t lh = logical_len(hi);
    if (lh == 0) return;
    Vec prod(h + 1 + lh - 1, FieldElement{});
    mul_dispatch(F, p.data(), h + 1, hi.data(), lh, prod.data());
    for (std::size_t i = 0; i < n; ++i)
        f[i] = i < h ? F.add(f[i], prod[i]) : (i < prod.size() ? prod[i] : FieldElement{});
}

}  // namespace

Vec taylor_shift(const FieldSpec& F, const Vec& f, FieldElement a) {
    Vec out = f;
    std::size_t n = logical_len(f);
    if (n <= 1 || a.is_zero()) return out;
    std::vector<Vec> pows;
    pows.push_back(Vec{a, F.one()});
    while ((std::size_t(1) << pows.size()) < n)
        pows.push_back(mul(F, pows.back(), pows.back()));
    shift_rec(F, out.data(), n, pows, a);
    return out;
}

FieldElement eval(const FieldSpec& F, const Vec& f, FieldElement x) {
    FieldElement r{};
    for (std::size_t i = f.size(); i-- > 0;) r = F.add(F.mul(r, x), f[i]);
    return r;
}

}  // namespace polyk

// ---------------------------------------------------------------------------
// subproduct trees

namespace {

using polyk::Vec;

int build_range(SubproductTree& t, std::uint32_t lo, std::uint32_t hi) {
    SubproductTree::Node nd;
    nd.first_leaf = lo;
    nd.leaf_count = hi - lo;
    if (hi - lo == 1) {
        const FieldSpec& F = *t.field;
        std::uint32_t pt = t.leaf_point[lo], e = t.leaf_mult[lo];
        // (X - alpha_pt)^e via the binomial theorem
        FieldElement alpha = F.element(pt);
        Vec poly(e + 1);
        FieldElement na = F.neg(alpha);
        FieldElement napow = F.one();
        for (std::uint32_t k = e + 1; k-- > 0;) {
            // coefficient of X^k: binom(e,k) * (-alpha)^(e-k); filled low to high power of na
            poly[k] = F.mul(F.binom(e, k), napow);
            if (k > 0) napow = F.mul(napow, na);
        }
        nd.degree = e;
        nd.poly = std::move(poly);
        t.leaf_node[lo] = (std::uint32_t)t.nodes.size();
        t.nodes.push_back(std::move(nd));
        return (int)t.nodes.size() - 1;
    }
    std::uint32_t mid = lo + (hi - lo) / 2;
    int l = build_range(t, lo, mid);
    int r = build_range(t, mid, hi);
    nd.left = l;
    nd.right = r;
    nd.degree = t.nodes[l].degree + t.nodes[r].degree;
    nd.poly = polyk::mul(*t.field, t.nodes[l].poly, t.nodes[r].poly);
    nd.poly.resize(nd.degree + 1, FieldElement{});
    t.nodes.push_back(std::move(nd));
    return (int)t.nodes.size() - 1;
}

void fill_inverses(SubproductTree& t, int node, std::uint32_t parent_degree) {
    auto& nd = t.nodes[node];
    std::uint32_t prec = parent_degree - nd.degree;  // max quotient length sent down
    if (prec > 0) {
        Vec rev(nd.poly.rbegin(), nd.poly.rend());
        nd.rev_inv = polyk::series_inv(*t.field, rev, prec);
    }
    if (nd.left >= 0) fill_inverses(t, nd.left, nd.degree);
    if (nd.right >= 0) fill_inverses(t, nd.right, nd.degree);
}

SubproductTree build_tree(const FieldPtr& field, std::vector<std::uint32_t> pts,
                          std::vector<std::uint32_t> mults) {
    SubproductTree t;
    t.field = field;
    t.leaf_point = std::move(pts);
    t.leaf_mult = std::move(mults);
    t.leaf_node.assign(t.leaf_point.size(), 0);
    t.root = build_range(t, 0, (std::uint32_t)t.leaf_point.size());
    auto& rootnd = t.nodes[t.root];
    if (rootnd.left >= 0) {
        fill_inverses(t, rootnd.left, rootnd.degree);
        fill_inverses(t, rootnd.right, rootnd.degree);
    }
    return t;
}

}  // namespace

SubproductTree build_subproduct_tree(const FieldPtr& field, const std::vector<std::uint32_t>& mults) {
    std::vector<std::uint32_t> pts, ms;
    for (std::uint32_t j = 0; j < mults.size(); ++j) {
        if (mults[j] > 0) {
            if (j >= field->q()) throw std::invalid_argument("point index out of field range");
            pts.push_back(j);
            ms.push_back(mults[j]);
        }
    }
    if (pts.empty()) throw std::invalid_argument("subproduct tree needs a nonzero multiplicity");
    return build_tree(field, std::move(pts), std::move(ms));
}

SubproductTree build_newton_tree(const FieldPtr& field, std::size_t m) {
    if (m == 0) throw std::invalid_argument("newton tree needs m >= 1");
    std::vector<std::uint32_t> pts(m), ms(m, 1);
    for (std::size_t j = 0; j < m; ++j) pts[j] = (std::uint32_t)(j % field->q());
    return build_tree(field, std::move(pts), std::move(ms));
}

polyk::Vec rem_by_node(const SubproductTree& tree, int node, const polyk::Vec& a) {
    const auto& nd = tree.at(node);
    const FieldSpec& F = *tree.field;
    std::size_t la = polyk::logical_len(a);
    if (la <= nd.degree) return Vec(a.begin(), a.begin() + la);
    std::size_t k = la - nd.degree;  // quotient length
    assert(k <= nd.rev_inv.size());
    Vec ra(a.begin(), a.begin() + la);
    std::reverse(ra.begin(), ra.end());
    Vec inv(nd.rev_inv.begin(), nd.rev_inv.begin() + k);
    Vec qrev = polyk::mul_trunc(F, ra, inv, k);
    qrev.resize(k, FieldElement{});
    Vec q(qrev.rbegin(), qrev.rend());
    Vec qb = polyk::mul_trunc(F, q, nd.poly, nd.degree);
    Vec r(a.begin(), a.begin() + std::min<std::size_t>(la, nd.degree));
    r.resize(nd.degree, FieldElement{});
    for (std::size_t i = 0; i < qb.size(); ++i) r[i] = F.sub(r[i], qb[i]);
    return r;
}

// ---------------------------------------------------------------------------
// basis conversions

namespace {

void n2m_rec(const SubproductTree& t, int node, std::span<FieldElement> c, std::size_t cut) {
    const auto& nd = t.at(node);
    if (nd.leaf_count == 1 || cut <= nd.first_leaf) return;
    const FieldSpec& F = *t.field;
    n2m_rec(t, nd.left, c, cut);
    n2m_rec(t, nd.right, c, cut);
    const auto& lnd = t.at(nd.left);
    std::uint32_t h = lnd.leaf_count;
    std::uint32_t base = nd.first_leaf, count = nd.leaf_count;
    std::size_t blen = cut > base + h ? std::min<std::size_t>(count - h, cut - base - h) : 0;
    Vec b(c.begin() + base + h, c.begin() + base + h + blen);
    std::size_t lb = polyk::logical_len(b);
    if (lb == 0) {
        std::fill(c.begin() + base + h, c.begin() + base + count, FieldElement{});
        return;
    }
    // lnd.poly is monic of degree h
    Vec prod = polyk::mul(F, lnd.poly, b);
    for (std::uint32_t i = 0; i < count; ++i) {
        FieldElement lowpart = i < h ? c[base + i] : FieldElement{};
        FieldElement p = i < prod.size() ? prod[i] : FieldElement{};
        c[base + i] = F.add(lowpart, p);
    }
}

void m2n_rec(const SubproductTree& t, int node, std::span<FieldElement> c, std::size_t cut) {
    const auto& nd = t.at(node);
    if (nd.leaf_count == 1 || cut <= nd.first_leaf) return;
    const FieldSpec& F = *t.field;
    const auto& lnd = t.at(nd.left);
    std::uint32_t h = lnd.leaf_count;
    std::uint32_t base = nd.first_leaf, count = nd.leaf_count;
    std::size_t eff = std::min<std::size_t>(count, cut - base);
    Vec in(c.begin() + base, c.begin() + base + eff);
    Vec q, r;
    polyk::divrem(F, in, lnd.poly, q, r);
    for (std::uint32_t i = 0; i < h; ++i) c[base + i] = i < r.size() ? r[i] : FieldElement{};
    for (std::uint32_t i = h; i < count; ++i)
        c[base + i] = (i - h) < q.size() ? q[i - h] : FieldElement{};
    m2n_rec(t, nd.left, c, cut);
    m2n_rec(t, nd.right, c, cut);
}

}  // namespace

void newton_to_monomial_span(const SubproductTree& ntree, std::span<FieldElement> c,
                             std::size_t logical_len) {
    assert(c.size() == ntree.leaf_point.size());
    n2m_rec(ntree, ntree.root, c, std::min(logical_len, c.size()));
}

void monomial_to_newton_span(const SubproductTree& ntree, std::span<FieldElement> c,
                             std::size_t logical_len) {
    assert(c.size() == ntree.leaf_point.size());
    m2n_rec(ntree, ntree.root, c, std::min(logical_len, c.size()));
}

// ---------------------------------------------------------------------------
// public DensePoly operations

namespace {
void require_same_field(const DensePoly& a, const DensePoly& b) {
    if (!a.field || !b.field || !a.field->same_field(*b.field))
        throw std::invalid_argument("field mismatch");
}
}  // namespace

DensePoly poly_mul(const DensePoly& a, const DensePoly& b) {
    require_same_field(a, b);
    if (a.basis != Basis::monomial || b.basis != Basis::monomial)
        throw std::invalid_argument("poly_mul expects monomial basis");
    Vec out = polyk::mul(*a.field, a.coeffs, b.coeffs);
    if (out.empty()) out.resize(1, FieldElement{});
    return {a.field, Basis::monomial, std::move(out)};
}

DensePoly poly_add(const DensePoly& a, const DensePoly& b) {
    require_same_field(a, b);
    if (a.basis != b.basis) throw std::invalid_argument("basis mismatch");
    Vec out(std::max(a.coeffs.size(), b.coeffs.size()), FieldElement{});
    for (std::size_t i = 0; i < out.size(); ++i) {
        FieldElement x = i < a.coeffs.size() ? a.coeffs[i] : FieldElement{};
        FieldElement y = i < b.coeffs.size() ? b.coeffs[i] : FieldElement{};
        out[i] = a.field->add(x, y);
    }
    return {a.field, a.basis, std::move(out)};
}

DensePoly taylor_shift(const DensePoly& f, FieldElement a) {
    if (f.basis != Basis::monomial) throw std::invalid_argument("taylor_shift expects monomial basis");
    return {f.field, Basis::monomial, polyk::taylor_shift(*f.field, f.coeffs, a)};
}

DensePoly monomial_to_newton(const DensePoly& f, std::size_t len) {
    if (f.basis != Basis::monomial) throw std::invalid_argument("expected monomial basis");
    auto d = f.degree();
    if (d && *d >= len) throw std::invalid_argument("degree overflow for Newton length");
    if (len == 0) throw std::invalid_argument("len must be positive");
    DensePoly out{f.field, Basis::newton, Vec(len, FieldElement{})};
    std::copy(f.coeffs.begin(), f.coeffs.begin() + std::min(len, f.coeffs.size()),
              out.coeffs.begin());
    auto tree = build_newton_tree(f.field, len);
    monomial_to_newton_span(tree, out.coeffs, d ? *d + 1 : 0);
    return out;
}

DensePoly newton_to_monomial(const DensePoly& f) {
    if (f.basis != Basis::newton) throw std::invalid_argument("expected newton basis");
    std::size_t len = f.coeffs.size();
    if (len == 0) throw std::invalid_argument("empty polynomial");
    DensePoly out{f.field, Basis::monomial, f.coeffs};
    auto tree = build_newton_tree(f.field, len);
    newton_to_monomial_span(tree, out.coeffs, polyk::logical_len(f.coeffs));
    return out;
}

DensePoly trunc_pow_qm1(const FieldPtr& field, std::uint64_t r, std::size_t k) {
    if (k == 0) throw std::invalid_argument("truncation length must be positive");
    const FieldSpec& F = *field;
    std::size_t qm1 = F.q() - 1;
    Vec u{F.one()};
    for (std::uint64_t i = 0; i < r; ++i) {
        // u <- (X^{q-1} - 1) * u mod X^k: a shift minus the original
        Vec nu(std::min(k, u.size() + qm1), FieldElement{});
        for (std::size_t j = 0; j < nu.size(); ++j) {
            FieldElement v = j >= qm1 && j - qm1 < u.size() ? u[j - qm1] : FieldElement{};
            FieldElement w = j < u.size() ? u[j] : FieldElement{};
            nu[j] = F.sub(v, w);
        }
        u = std::move(nu);
        if (polyk::logical_len(u) == 0) break;
    }
    if (u.empty()) u.resize(1, FieldElement{});
    return {field, Basis::monomial, std::move(u)};
}

DensePoly newton_basis_poly(const FieldPtr& field, std::uint64_t i) {
    const FieldSpec& F = *field;
    Vec p{F.one()};
    for (std::uint64_t j = 0; j < i; ++j) {
        Vec factor{F.neg(F.element((std::uint32_t)(j % F.q()))), F.one()};
        p = polyk::mul(F, p, factor);
    }
    return {field, Basis::monomial, std::move(p)};
}

FieldElement poly_eval(const DensePoly& f, FieldElement x) {
    if (f.basis != Basis::monomial) throw std::invalid_argument("poly_eval expects monomial basis");
    return polyk::eval(*f.field, f.coeffs, x);
}

}  // namespace mlt
