#ifndef MLT_HERMITE_UNI_HPP
#define MLT_HERMITE_UNI_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <span>

#include "mlt/poly.hpp"
#include "mlt/seg_vector.hpp"

namespace mlt {

/// Precomputed data for Hermite evaluation/interpolation on the segment [m]:
/// point alpha_j carries multiplicity ceil((m-j)/q). Immutable once built and
/// shareable across threads; scratch is allocated per call.
class UniHermiteWorkspace {
  public:
    UniHermiteWorkspace(FieldPtr field, std::size_t m);

    std::size_t m() const { return m_; }
    const FieldPtr& field() const { return field_; }
    std::uint32_t point_count() const { return (std::uint32_t)mults_.size(); }
    std::uint32_t multiplicity(std::uint32_t j) const { return mults_[j]; }

    const SubproductTree& point_tree() const { return point_tree_; }
    const SubproductTree& newton_tree() const { return newton_tree_; }
    /// Inverse Taylor expansion at alpha_j of the product of the other
    /// leaves, to the point's multiplicity; used by interpolation.
    const polyk::Vec& ghat_inv(std::uint32_t j) const { return ghat_inv_[j]; }

  private:
    FieldPtr field_;
    std::size_t m_;
    std::vector<std::uint32_t> mults_;
    SubproductTree point_tree_;
    SubproductTree newton_tree_;
    std::vector<polyk::Vec> ghat_inv_;
};

/// Length-keyed workspace cache; one per multivariate call (or per thread).
class UniWorkspaceCache {
  public:
    explicit UniWorkspaceCache(FieldPtr field) : field_(std::move(field)) {}
    const UniHermiteWorkspace& get(std::size_t m);
    const FieldPtr& field() const { return field_; }

  private:
    FieldPtr field_;
    std::map<std::size_t, std::unique_ptr<UniHermiteWorkspace>> map_;
};

/// In place: slot j becomes the (j div q)-th Taylor coefficient of F at
/// alpha_{j mod q}, where F is the polynomial whose coefficients (on
/// basis_in) the span holds. degree_hint, when >= 0, promises deg F <=
/// degree_hint and prunes the top of the remainder tree.
void uni_hermite_eval(const UniHermiteWorkspace& ws, std::span<FieldElement> f,
                      Basis basis_in = Basis::newton, std::int64_t degree_hint = -1);

/// Inverse of uni_hermite_eval: the span holds one derivative value per
/// slot and is overwritten with the unique interpolant's coefficients on
/// basis_out.
void uni_hermite_interp(const UniHermiteWorkspace& ws, std::span<FieldElement> f,
                        Basis basis_out = Basis::newton);

/// Residual evaluation: f holds Newton coefficients indexed by
/// R_{d,s,1} = { d < i < sq } of F = sum f_i N_i, and u holds
/// (X^{q-1}-1)^r mod X^{s-r} for r = max(floor((d+1)/q), 0). On return slot
/// t of f is the derivative value of F at the t-th residual index. Requires
/// d+1 < sq; d may be negative, in which case this is a full evaluation.
void uni_hermite_eval_R(UniWorkspaceCache& cache, std::int64_t d, std::uint32_t s,
                        std::span<FieldElement> f, std::span<const FieldElement> u);

SegVector uni_hermite_eval(const SegVector& v, Basis basis_in = Basis::newton);
SegVector uni_hermite_interp(const SegVector& v, Basis basis_out = Basis::newton);
SegVector uni_hermite_eval_R(std::int64_t d, std::uint32_t s, const SegVector& v,
                             const DensePoly& u);

}  // namespace mlt

#endif
