#ifndef MLT_SEGMENT_HPP
#define MLT_SEGMENT_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace mlt {

using MultiIndex = std::vector<std::uint32_t>;

std::uint64_t weight(const MultiIndex& i);
/// Canonical order: increasing weight, ties broken lexicographically.
bool graded_lex_less(const MultiIndex& a, const MultiIndex& b);

class InitialSegment;
using SegmentPtr = std::shared_ptr<const InitialSegment>;

/// Common interface of finite multi-index sets with a canonical (graded-lex)
/// enumeration and cached per-axis fiber maps. Axes are 1-based.
class IndexSet {
  public:
    virtual ~IndexSet() = default;
    unsigned n() const { return n_; }
    std::uint64_t size() const { return size_; }
    virtual bool contains(const MultiIndex& i) const = 0;
    /// Position in canonical order; throws std::invalid_argument on non-members.
    virtual std::uint64_t rank(const MultiIndex& i) const = 0;
    virtual MultiIndex unrank(std::uint64_t r) const = 0;
    virtual bool initial() const = 0;

    /// Fibers along one axis: for each k in the iteration domain `proj`, the
    /// flat canonical positions of the members with the other coordinates
    /// fixed at k, in increasing axis coordinate. Materialized eagerly at
    /// construction (CSR layout), so concurrent reads are contention-free.
    struct FiberMap {
        SegmentPtr proj;
        std::vector<std::uint32_t> starts;
        std::vector<std::uint32_t> flat;
    };
    const FiberMap& fibers(unsigned axis) const;
    /// Flat positions of the axis fiber over k; throws when k is not in the
    /// iteration domain.
    std::span<const std::uint32_t> fiber_indices(unsigned axis, const MultiIndex& k) const;

    /// Materialized members in canonical order (test support).
    std::vector<MultiIndex> members() const;

  protected:
    void check_axis(unsigned axis) const;
    void build_fiber_maps();
    virtual SegmentPtr projection_set(unsigned axis) const = 0;
    unsigned n_ = 0;
    std::uint64_t size_ = 0;
    std::vector<FiberMap> fibers_;
};

/// Downward-closed finite subset of N^n. Four parametric kinds carry
/// closed-form ranking; arbitrary segments are held as sorted member lists.
class InitialSegment : public IndexSet {
  public:
    enum class Kind { simplex, deriv, box, interval, custom };

    /// I_{d,n} = { |i| <= d }, d >= 0.
    static SegmentPtr simplex(unsigned n, std::int64_t d);
    /// C_{s,n} = { |i bdiv q| < s }, s >= 1.
    static SegmentPtr deriv(unsigned n, std::uint32_t s, std::uint32_t q);
    /// [caps_1] x ... x [caps_n], caps >= 1.
    static SegmentPtr box(const std::vector<std::uint32_t>& caps);
    /// [m] in one dimension.
    static SegmentPtr interval(std::uint64_t m);
    /// Explicit member set; verified downward closed.
    static SegmentPtr custom(unsigned n, std::vector<MultiIndex> members);

    Kind kind() const { return kind_; }
    std::int64_t simplex_d() const { return d_; }
    std::uint32_t deriv_s() const { return s_; }
    std::uint32_t field_q() const { return q_; }
    const std::vector<std::uint32_t>& box_caps() const { return caps_; }

    bool contains(const MultiIndex& i) const override;
    std::uint64_t rank(const MultiIndex& i) const override;
    MultiIndex unrank(std::uint64_t r) const override;
    bool initial() const override { return true; }

    /// pi_axis; for n = 1 this is {0}.
    SegmentPtr projection(unsigned axis) const;
    /// mu_axis(seg, k) as the interval [m]; throws when k is outside the
    /// projection.
    SegmentPtr fiber(unsigned axis, const MultiIndex& k) const;

    /// lambda(seg, suffix): members with the trailing coordinates fixed,
    /// as a segment in the remaining dimensions (test support).
    SegmentPtr lambda_set(const MultiIndex& suffix) const;
    /// rho(seg, prefix): members with the leading coordinates fixed.
    SegmentPtr rho_set(const MultiIndex& prefix) const;

  private:
    friend class ResidualSet;
    InitialSegment() = default;
    static std::shared_ptr<InitialSegment> create(Kind k, unsigned n);
    SegmentPtr projection_set(unsigned axis) const override;
    void finish();  // size, cumulative weight counts, fiber maps

    std::uint64_t count_weight(std::uint64_t w) const;                    // members of weight w
    std::uint64_t count_suffix(unsigned pos, std::int64_t w, std::int64_t tbudget) const;

    Kind kind_ = Kind::interval;
    std::int64_t d_ = 0;       // simplex
    std::uint32_t s_ = 0;      // deriv
    std::uint32_t q_ = 0;      // deriv
    std::uint64_t m_ = 0;      // interval
    std::vector<std::uint32_t> caps_;
    std::vector<MultiIndex> members_;      // custom
    std::vector<std::uint64_t> cum_weight_;  // cum_weight_[w] = #members with weight < w
};

/// R_{d,s,n} = C_{s,n} \ I_{d,n}, ordered as the tail of the C_{s,n}
/// enumeration. Not downward closed; its axis fibers iterate over the full
/// C_{s,n-1} and may be empty at the d = sq-1 boundary.
class ResidualSet : public IndexSet {
  public:
    static std::shared_ptr<const ResidualSet> make(const SegmentPtr& c_segment, std::int64_t d);

    bool contains(const MultiIndex& i) const override;
    std::uint64_t rank(const MultiIndex& i) const override;
    MultiIndex unrank(std::uint64_t r) const override;
    bool initial() const override { return false; }

    std::int64_t d() const { return d_; }
    std::uint32_t s() const { return s_; }
    std::uint32_t q() const { return q_; }
    const SegmentPtr& parent() const { return c_; }
    std::uint64_t simplex_part_size() const { return i_size_; }

  private:
    ResidualSet() = default;
    SegmentPtr projection_set(unsigned axis) const override;

    SegmentPtr c_;
    std::int64_t d_ = 0;
    std::uint32_t s_ = 0, q_ = 0;
    std::uint64_t i_size_ = 0;
};

using ResidualPtr = std::shared_ptr<const ResidualSet>;

/// |I_{d,n}| with the empty-set convention for d < 0.
std::uint64_t simplex_size(unsigned n, std::int64_t d);
/// |C_{s,n}|.
std::uint64_t deriv_size(unsigned n, std::uint32_t s, std::uint32_t q);

}  // namespace mlt

#endif
