#ifndef MLT_ORACLE_HPP
#define MLT_ORACLE_HPP

#include <map>

#include "mlt/seg_vector.hpp"

namespace mlt::oracle {

/// Sparse multivariate polynomial on the monomial basis; no explicit zero
/// terms. Everything in this namespace is a brute-force reference: separate
/// arithmetic loops from the fast paths (binomial products instead of
/// shift-based expansion), exempt from all performance goals.
struct SparsePolyMV {
    FieldPtr field;
    unsigned n = 0;
    std::map<MultiIndex, FieldElement> terms;

    void add_term(const MultiIndex& e, FieldElement c);
    bool operator==(const SparsePolyMV& other) const { return terms == other.terms; }
};

SparsePolyMV make_sparse(FieldPtr field, unsigned n);

/// t-th Hasse derivative, term by term: H(X^e, t) = prod binom(e_l, t_l) X^{e-t}.
SparsePolyMV naive_hasse(const SparsePolyMV& F, const MultiIndex& t);

/// Plain evaluation at the point indexed by j.
FieldElement naive_eval(const SparsePolyMV& F, const MultiIndex& j);

/// Slot rank(i) = H(F, i div q)(alpha_{i mod q}) for every i in seg.
/// Requires support(F) contained in seg when seg is initial (checked).
SegVector naive_E_vector(const SparsePolyMV& F, const std::shared_ptr<const IndexSet>& seg);

/// Unique F supported on seg with the given derivative values, by Gaussian
/// elimination on the full moment matrix. Guarded to |seg| <= 5000; a
/// singular matrix throws (it would contradict uniqueness).
SparsePolyMV naive_interpolate(const SegVector& v);

/// Nonsingularity of the degree-d information-set matrix; k = binom(n+d,n)
/// must be <= guard.
bool info_set_nonsingular(const FieldPtr& field, unsigned n, std::int64_t d,
                          std::uint64_t guard = 2000);

/// N_i expanded on the monomial basis by repeated multiplication.
SparsePolyMV newton_basis_mv(const FieldPtr& field, const MultiIndex& i);

/// Reference systematic encoder: factors the information-set matrix once,
/// then per message solves for the polynomial and evaluates every derivative
/// directly. Output is the full value vector over C_{s,n}.
class NaiveEncoder {
  public:
    NaiveEncoder(FieldPtr field, unsigned n, std::uint32_t s, std::int64_t d);
    SegVector encode(std::span<const FieldElement> message) const;
    const SegmentPtr& message_segment() const { return iseg_; }
    const SegmentPtr& value_segment() const { return cseg_; }

  private:
    FieldPtr field_;
    unsigned n_;
    std::uint32_t s_;
    std::int64_t d_;
    SegmentPtr iseg_, cseg_;
    // PLU factorization of the information-set moment matrix
    std::vector<FieldElement> lu_;
    std::vector<std::uint32_t> perm_;
};

}  // namespace mlt::oracle

#endif
