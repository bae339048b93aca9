#ifndef MLT_FIELD_HPP
#define MLT_FIELD_HPP

#include <cstdint>
#include <memory>
#include <vector>

namespace mlt {

/// An element of F_q, stored as its index in the field's fixed enumeration.
/// Index 0 is the additive identity; for prime fields index j is the residue
/// j mod p, for extension fields the base-p digits of j are the coordinates
/// on the power basis of the modulus.
struct FieldElement {
    std::uint16_t idx = 0;

    friend bool operator==(FieldElement a, FieldElement b) { return a.idx == b.idx; }
    friend bool operator!=(FieldElement a, FieldElement b) { return a.idx != b.idx; }
    friend bool operator<(FieldElement a, FieldElement b) { return a.idx < b.idx; }
    bool is_zero() const { return idx == 0; }
};

/// Counts multiplicative kernel operations (field mul/div/inv/pow plus the
/// modular multiplications of the FFT multiplication path). Attach one to the
/// current thread with CountScope; all counting is thread-local.
struct MultCounter {
    unsigned long long value = 0;
};

class CountScope {
  public:
    explicit CountScope(MultCounter& c);
    ~CountScope();
    CountScope(const CountScope&) = delete;
    CountScope& operator=(const CountScope&) = delete;

  private:
    MultCounter* prev_;
};

namespace detail {
extern thread_local MultCounter* tl_counter;
inline void count_mults(unsigned long long k) {
    if (tl_counter) tl_counter->value += k;
}
MultCounter* current_counter();
void set_counter(MultCounter* c);
}  // namespace detail

/// F_q = F_{p^m}, q <= 2^16, with a fixed public enumeration alpha_0..alpha_{q-1}.
///
/// Immutable after construction; all operations are pure and thread-safe.
/// Prime fields reduce 32-bit products Barrett-style; extension fields use
/// log/antilog tables, so mul and inv are O(1).
class FieldSpec {
  public:
    /// Field with the default modulus: the first monic irreducible of degree m
    /// over F_p in increasing order of its coefficient value sum c_k p^k.
    static std::shared_ptr<const FieldSpec> make(std::uint32_t p, std::uint32_t m = 1);
    /// Field with an explicit monic modulus, coefficients low degree first
    /// (length m+1, each < p). Verified irreducible by trial division.
    static std::shared_ptr<const FieldSpec> make(std::uint32_t p, std::uint32_t m,
                                                 const std::vector<std::uint16_t>& modulus);

    std::uint32_t p() const { return p_; }
    std::uint32_t m() const { return m_; }
    std::uint32_t q() const { return q_; }
    /// Length m+1, monic; {0,1} when m == 1.
    const std::vector<std::uint16_t>& modulus() const { return mod_; }

    FieldElement zero() const { return {}; }
    FieldElement one() const { return {1}; }
    /// alpha_j; throws if j >= q.
    FieldElement element(std::uint32_t j) const;
    /// Embedding of the integer v through the prime subfield (v mod p).
    FieldElement from_int(std::uint64_t v) const;

    FieldElement add(FieldElement a, FieldElement b) const;
    FieldElement sub(FieldElement a, FieldElement b) const;
    FieldElement neg(FieldElement a) const;
    FieldElement mul(FieldElement a, FieldElement b) const;
    /// Throws std::domain_error when b is zero.
    FieldElement div(FieldElement a, FieldElement b) const;
    /// Throws std::domain_error when a is zero.
    FieldElement inv(FieldElement a) const;
    FieldElement pow(FieldElement a, std::uint64_t e) const;

    /// binom(nn, kk) mod p via Lucas digit products, embedded in F_q.
    FieldElement binom(std::uint64_t nn, std::uint64_t kk) const;

    /// A fixed generator of the multiplicative group.
    FieldElement generator() const { return {gen_}; }

    /// Base-p digits of an element index, least significant first (length m).
    std::vector<std::uint32_t> digits(FieldElement a) const;

    bool same_field(const FieldSpec& other) const;

  private:
    FieldSpec() = default;
    void init_prime();
    void init_extension();

    std::uint32_t p_ = 0, m_ = 0, q_ = 0;
    std::vector<std::uint16_t> mod_;
    std::uint16_t gen_ = 0;

    // prime path
    std::uint64_t barrett_im_ = 0;
    std::uint32_t mul_raw(std::uint32_t a, std::uint32_t b) const;

    // extension path
    std::vector<std::uint16_t> log_;  // log_[a] for a != 0
    std::vector<std::uint16_t> exp_;  // exp_[t] for t in [0, 2(q-1))

    // element arithmetic on digit vectors, used to bootstrap the tables and
    // as the independent check in tests
    std::uint16_t poly_mul_mod(std::uint16_t a, std::uint16_t b) const;
    friend std::uint16_t field_test_poly_mul(const FieldSpec& f, std::uint16_t a, std::uint16_t b);
};

using FieldPtr = std::shared_ptr<const FieldSpec>;

/// Table-free product of two elements via digit arithmetic; exposed so tests
/// can cross-check the table path.
std::uint16_t field_test_poly_mul(const FieldSpec& f, std::uint16_t a, std::uint16_t b);

}  // namespace mlt

#endif
