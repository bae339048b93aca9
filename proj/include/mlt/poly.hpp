#ifndef MLT_POLY_HPP
#define MLT_POLY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mlt/field.hpp"

namespace mlt {

enum class Basis { monomial, newton };

/// Dense univariate polynomial, coeffs[i] multiplying either X^i or the
/// repeated-root Newton polynomial N_i = prod_{j<i}(X - alpha_{j mod q}).
/// The zero polynomial is an all-zero vector; degree() is empty for it.
struct DensePoly {
    FieldPtr field;
    Basis basis = Basis::monomial;
    std::vector<FieldElement> coeffs;

    std::optional<std::size_t> degree() const {
        for (std::size_t i = coeffs.size(); i-- > 0;)
            if (!coeffs[i].is_zero()) return i;
        return std::nullopt;
    }
};

/// Multiplication dispatch thresholds. schoolbook_below is the classic
/// schoolbook/Karatsuba crossover; fft_from is the product length from which
/// characteristic-2 fields switch to the additive-FFT kernel.
struct MulTuning {
    std::size_t schoolbook_below = 32;
    std::size_t fft_from = 16;
    bool enable_fft = true;
};
MulTuning& mul_tuning();

/// Raw kernels on trimmed coefficient vectors (monomial basis, low degree
/// first). These back both the public DensePoly operations and the Hermite
/// machinery.
namespace polyk {
using Vec = std::vector<FieldElement>;

std::size_t logical_len(const Vec& a);
std::size_t logical_len(std::span<const FieldElement> a);
Vec mul(const FieldSpec& F, const Vec& a, const Vec& b);
Vec mul_trunc(const FieldSpec& F, const Vec& a, const Vec& b, std::size_t k);
/// Inverse of a as a power series mod X^k; a[0] must be nonzero.
Vec series_inv(const FieldSpec& F, const Vec& a, std::size_t k);
/// a = q*b + r with deg r < deg b; b must be nonzero.
void divrem(const FieldSpec& F, const Vec& a, const Vec& b, Vec& q, Vec& r);
/// f(X + a), same length as f.
Vec taylor_shift(const FieldSpec& F, const Vec& f, FieldElement a);
FieldElement eval(const FieldSpec& F, const Vec& f, FieldElement x);
}  // namespace polyk

/// Binary tree of monic products. Point-profile trees have one leaf
/// (X - alpha_j)^{mult_j} per point with nonzero multiplicity; enumeration
/// trees have the degree-1 leaf (X - alpha_{j mod q}) at position j. Non-root
/// nodes cache the series inverse of their reversed polynomial at the
/// precision needed to divide anything a parent can hand down.
struct SubproductTree {
    struct Node {
        std::uint32_t first_leaf = 0, leaf_count = 0, degree = 0;
        int left = -1, right = -1;
        polyk::Vec poly;     // monic, length degree+1
        polyk::Vec rev_inv;  // empty on the root
    };

    FieldPtr field;
    std::vector<Node> nodes;
    int root = -1;
    std::vector<std::uint32_t> leaf_node;   // leaf index -> node index
    std::vector<std::uint32_t> leaf_point;  // leaf index -> point index
    std::vector<std::uint32_t> leaf_mult;

    const Node& at(int i) const { return nodes[i]; }
    const polyk::Vec& root_poly() const { return nodes[root].poly; }
};

/// Tree over leaves (X - alpha_j)^{mult_j} for each j with mults[j] > 0.
/// Throws when all multiplicities are zero.
SubproductTree build_subproduct_tree(const FieldPtr& field, const std::vector<std::uint32_t>& mults);
/// Enumeration-order tree with leaf j = (X - alpha_{j mod q}), j in [m];
/// its range products are exactly the Newton prefix polynomials.
SubproductTree build_newton_tree(const FieldPtr& field, std::size_t m);

/// Remainder of `a` modulo the node polynomial, using the cached inverse.
polyk::Vec rem_by_node(const SubproductTree& tree, int node, const polyk::Vec& a);

/// In-place basis conversions over an enumeration tree. Coefficients at
/// positions >= logical_len are treated as (and must be) zero, which prunes
/// the recursion for degree-bounded inputs.
void newton_to_monomial_span(const SubproductTree& ntree, std::span<FieldElement> c,
                             std::size_t logical_len);
void monomial_to_newton_span(const SubproductTree& ntree, std::span<FieldElement> c,
                             std::size_t logical_len);

DensePoly poly_mul(const DensePoly& a, const DensePoly& b);
DensePoly poly_add(const DensePoly& a, const DensePoly& b);
/// f(X + a); any characteristic.
DensePoly taylor_shift(const DensePoly& f, FieldElement a);
/// Coefficients of f on {N_0..N_{len-1}}; requires deg f < len.
DensePoly monomial_to_newton(const DensePoly& f, std::size_t len);
DensePoly newton_to_monomial(const DensePoly& f);
/// (X^{q-1} - 1)^r mod X^k, by iterated multiply-and-truncate (mult-free).
DensePoly trunc_pow_qm1(const FieldPtr& field, std::uint64_t r, std::size_t k);
/// N_i explicitly on the monomial basis (test support; O(i^2)).
DensePoly newton_basis_poly(const FieldPtr& field, std::uint64_t i);
FieldElement poly_eval(const DensePoly& f, FieldElement x);

}  // namespace mlt

#endif
