#ifndef MLT_HERMITE_MULTI_HPP
#define MLT_HERMITE_MULTI_HPP

#include <cstdint>
#include <functional>
#include <optional>

#include "mlt/hermite_uni.hpp"
#include "mlt/seg_vector.hpp"

namespace mlt {

/// Options for the multivariate evaluation sweep. support_bound = d promises
/// that the input coefficients vanish outside the weight-d simplex; fibers
/// whose fixed tail weight exceeds d are skipped and the univariate calls
/// receive matching degree hints. first_axis_basis lets an interpolation
/// stage hand over monomial-basis fibers directly. sweep_hook, when set, is
/// invoked after each axis sweep (instrumentation).
struct EvalOptions {
    std::optional<std::int64_t> support_bound;
    Basis first_axis_basis = Basis::newton;
    unsigned threads = 1;
    std::function<void(unsigned)> sweep_hook;
};

struct InterpOptions {
    Basis last_axis_basis = Basis::newton;
    unsigned threads = 1;
};

/// Axis sweeps 1..n; each fiber is gathered, run through the in-place
/// univariate Hermite evaluation, and scattered back. On return slot
/// rank(j) holds the derivative value of F at j for every j in the segment.
void multi_hermite_eval(SegVector& v, const EvalOptions& opts = {});

/// Axis sweeps n..1 of univariate Hermite interpolation; inverse of
/// multi_hermite_eval.
void multi_hermite_interp(SegVector& v, const InterpOptions& opts = {});

/// Residual evaluation over R_{d,s,n} (n >= 2): v holds Newton coefficients
/// of a polynomial supported on the residual set; on return it holds the
/// derivative values at the residual indices. Truncations of the
/// precomputed (X^{q-1}-1)^r family are views and cost no field operations.
void multi_hermite_eval_R(std::int64_t d, std::uint32_t s, SegVector& v, unsigned threads = 1);

}  // namespace mlt

#endif
