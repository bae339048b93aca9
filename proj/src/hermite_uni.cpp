#include "mlt/hermite_uni.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace mlt {

using polyk::Vec;

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    // b > 0
    std::int64_t q = a / b;
    if (a % b != 0 && a > 0) ++q;
    return q;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if (a % b != 0 && a < 0) --q;
    return q;
}

std::vector<std::uint32_t> profile(std::uint32_t q, std::size_t m) {
    std::size_t pts = std::min<std::size_t>(m, q);
    std::vector<std::uint32_t> mults(pts);
    for (std::size_t j = 0; j < pts; ++j) mults[j] = (std::uint32_t)((m - j + q - 1) / q);
    return mults;
}

// ghat_inv: descend "product of the other leaves" down the point tree
void descend_ghat(const UniHermiteWorkspace& ws, const SubproductTree& t, int node, Vec q_poly,
                  std::vector<Vec>& out) {
    const auto& nd = t.at(node);
    const FieldSpec& F = *t.field;
    if (nd.left < 0) {
        std::uint32_t leaf = nd.first_leaf;
        std::uint32_t pt = t.leaf_point[leaf];
        std::uint32_t e = t.leaf_mult[leaf];
        Vec shifted = polyk::taylor_shift(F, q_poly, F.element(pt));
        shifted.resize(e, FieldElement{});
        if (shifted[0].is_zero()) throw std::logic_error("vanishing cofactor at a node point");
        out[leaf] = polyk::series_inv(F, shifted, e);
        return;
    }
    const auto& l = t.at(nd.left);
    const auto& r = t.at(nd.right);
    Vec ql = rem_by_node(t, nd.left, polyk::mul(F, rem_by_node(t, nd.left, q_poly), r.poly));
    Vec qr = rem_by_node(t, nd.right, polyk::mul(F, rem_by_node(t, nd.right, q_poly), l.poly));
    descend_ghat(ws, t, nd.left, std::move(ql), out);
    descend_ghat(ws, t, nd.right, std::move(qr), out);
}

void remainder_descend(const SubproductTree& t, int node, Vec cur,
                       std::vector<Vec>& residues) {
    const auto& nd = t.at(node);
    if (nd.left < 0) {
        residues[nd.first_leaf] = std::move(cur);
        return;
    }
    Vec left = rem_by_node(t, nd.left, cur);
    Vec right = rem_by_node(t, nd.right, cur);
    remainder_descend(t, nd.left, std::move(left), residues);
    remainder_descend(t, nd.right, std::move(right), residues);
}

Vec combine_up(const SubproductTree& t, int node, const std::vector<Vec>& leaf_vals) {
    const auto& nd = t.at(node);
    if (nd.left < 0) return leaf_vals[nd.first_leaf];
    const FieldSpec& F = *t.field;
    Vec ul = combine_up(t, nd.left, leaf_vals);
    Vec ur = combine_up(t, nd.right, leaf_vals);
    Vec a = polyk::mul(F, ul, t.at(nd.right).poly);
    Vec b = polyk::mul(F, ur, t.at(nd.left).poly);
    Vec out(std::max(a.size(), b.size()), FieldElement{});
    for (std::size_t i = 0; i < out.size(); ++i) {
        FieldElement x = i < a.size() ? a[i] : FieldElement{};
        FieldElement y = i < b.size() ? b[i] : FieldElement{};
        out[i] = F.add(x, y);
    }
    return out;
}

}  // namespace

UniHermiteWorkspace::UniHermiteWorkspace(FieldPtr field, std::size_t m)
    : field_(std::move(field)), m_(m) {
    if (m_ == 0) throw std::invalid_argument("hermite workspace needs m >= 1");
    mults_ = profile(field_->q(), m_);
    point_tree_ = build_subproduct_tree(field_, mults_);
    newton_tree_ = build_newton_tree(field_, m_);
    ghat_inv_.resize(mults_.size());
    descend_ghat(*this, point_tree_, point_tree_.root, Vec{field_->one()}, ghat_inv_);
}

const UniHermiteWorkspace& UniWorkspaceCache::get(std::size_t m) {
    auto it = map_.find(m);
    if (it == map_.end())
        it = map_.emplace(m, std::make_unique<UniHermiteWorkspace>(field_, m)).first;
    return *it->second;
}

void uni_hermite_eval(const UniHermiteWorkspace& ws, std::span<FieldElement> f, Basis basis_in,
                      std::int64_t degree_hint) {
    const FieldSpec& F = *ws.field();
    const std::size_t m = ws.m();
    if (f.size() != m) throw std::invalid_argument("span length must equal m");
    std::size_t cut = degree_hint >= 0 ? std::min<std::size_t>(m, (std::size_t)degree_hint + 1) : m;
    if (basis_in == Basis::newton) newton_to_monomial_span(ws.newton_tree(), f, cut);
    Vec cur(f.begin(), f.begin() + std::min(cut, polyk::logical_len(f)));
    cur.resize(polyk::logical_len(cur));
    std::vector<Vec> residues(ws.point_count());
    remainder_descend(ws.point_tree(), ws.point_tree().root, std::move(cur), residues);
    const std::uint32_t q = F.q();
    for (std::uint32_t j = 0; j < ws.point_count(); ++j) {
        Vec sh = polyk::taylor_shift(F, residues[j], F.element(j));
        std::uint32_t e = ws.multiplicity(j);
        for (std::uint32_t t = 0; t < e; ++t)
            f[j + (std::size_t)t * q] = t < sh.size() ? sh[t] : FieldElement{};
    }
}

void uni_hermite_interp(const UniHermiteWorkspace& ws, std::span<FieldElement> f,
                        Basis basis_out) {
    const FieldSpec& F = *ws.field();
    const std::size_t m = ws.m();
    if (f.size() != m) throw std::invalid_argument("span length must equal m");
    const std::uint32_t q = F.q();
    std::vector<Vec> leaf_vals(ws.point_count());
    for (std::uint32_t j = 0; j < ws.point_count(); ++j) {
        std::uint32_t e = ws.multiplicity(j);
        Vec taylor(e);
        for (std::uint32_t t = 0; t < e; ++t) taylor[t] = f[j + (std::size_t)t * q];
        Vec beta = polyk::mul_trunc(F, taylor, ws.ghat_inv(j), e);
        leaf_vals[j] = polyk::taylor_shift(F, beta, F.neg(F.element(j)));
    }
    Vec poly = combine_up(ws.point_tree(), ws.point_tree().root, leaf_vals);
    poly.resize(m, FieldElement{});
    std::copy(poly.begin(), poly.end(), f.begin());
    if (basis_out == Basis::newton)
        monomial_to_newton_span(ws.newton_tree(), f, polyk::logical_len(f));
}

void uni_hermite_eval_R(UniWorkspaceCache& cache, std::int64_t d, std::uint32_t s,
                        std::span<FieldElement> f, std::span<const FieldElement> u) {
    if (s == 0) throw std::invalid_argument("s must be positive");
    const FieldSpec& F = *cache.field();
    const std::int64_t q = F.q();
    const std::int64_t sq = (std::int64_t)s * q;
    if (d + 1 >= sq) throw std::invalid_argument("residual evaluation needs d+1 < sq");
    const std::int64_t offset = std::max<std::int64_t>(d + 1, 0);
    if ((std::int64_t)f.size() != sq - offset)
        throw std::invalid_argument("residual span length mismatch");
    const std::int64_t r = std::max<std::int64_t>(floor_div(d + 1, q), 0);
    const std::size_t mprime = (std::size_t)((s - r) * q);
    const std::size_t sr = (std::size_t)(s - r);

    // Newton coefficients of Q = F / N_{rq}: shift indices down by rq
    Vec w(mprime, FieldElement{});
    std::int64_t zlen = offset - r * q;
    for (std::size_t t = 0; t < f.size(); ++t) w[(std::size_t)zlen + t] = f[t];
    uni_hermite_eval(cache.get(mprime), w, Basis::newton);

    Vec uvec(u.begin(), u.end());
    if (uvec.size() > sr) uvec.resize(sr);
    for (std::int64_t j = 0; j < q; ++j) {
        Vec taylor(sr);
        for (std::size_t t = 0; t < sr; ++t) taylor[t] = w[(std::size_t)j + t * q];
        Vec wj = polyk::mul_trunc(F, uvec, taylor, sr);
        std::int64_t tmin = std::max<std::int64_t>(ceil_div(d + 1 - j, q), 0);
        for (std::int64_t t = tmin; t < (std::int64_t)s; ++t) {
            std::size_t pos = (std::size_t)(j + t * q - offset);
            std::size_t ci = (std::size_t)(t - r);
            f[pos] = ci < wj.size() ? wj[ci] : FieldElement{};
        }
    }
}

namespace {

std::size_t interval_like_size(const SegVector& v) {
    auto seg = std::dynamic_pointer_cast<const InitialSegment>(v.seg);
    if (!seg || seg->n() != 1) throw std::invalid_argument("expected a one-dimensional segment");
    return seg->size();
}

}  // namespace

SegVector uni_hermite_eval(const SegVector& v, Basis basis_in) {
    std::size_t m = interval_like_size(v);
    SegVector out = v;
    UniHermiteWorkspace ws(v.field, m);
    uni_hermite_eval(ws, out.data, basis_in);
    out.meaning = SegVector::Meaning::derivative_values;
    return out;
}

SegVector uni_hermite_interp(const SegVector& v, Basis basis_out) {
    std::size_t m = interval_like_size(v);
    SegVector out = v;
    UniHermiteWorkspace ws(v.field, m);
    uni_hermite_interp(ws, out.data, basis_out);
    out.meaning = SegVector::Meaning::newton_coeffs;
    return out;
}

SegVector uni_hermite_eval_R(std::int64_t d, std::uint32_t s, const SegVector& v,
                             const DensePoly& u) {
    auto rs = std::dynamic_pointer_cast<const ResidualSet>(v.seg);
    if (!rs || rs->n() != 1) throw std::invalid_argument("expected a one-dimensional residual set");
    SegVector out = v;
    UniWorkspaceCache cache(v.field);
    uni_hermite_eval_R(cache, d, s, out.data, u.coeffs);
    out.meaning = SegVector::Meaning::derivative_values;
    return out;
}

}  // namespace mlt
