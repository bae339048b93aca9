#ifndef MLT_SEG_VECTOR_HPP
#define MLT_SEG_VECTOR_HPP

#include <memory>
#include <stdexcept>
#include <vector>

#include "mlt/field.hpp"
#include "mlt/segment.hpp"

namespace mlt {

/// Flat field-element array indexed by an index set in canonical order.
/// Entry at position seg->rank(i) belongs to multi-index i. Holds Newton
/// coefficients, derivative values, or a mid-sweep mixture.
struct SegVector {
    enum class Meaning { newton_coeffs, derivative_values, mixed };

    std::shared_ptr<const IndexSet> seg;
    FieldPtr field;
    std::vector<FieldElement> data;
    Meaning meaning = Meaning::newton_coeffs;
};

inline SegVector make_seg_vector(std::shared_ptr<const IndexSet> seg, FieldPtr field,
                                 std::vector<FieldElement> data,
                                 SegVector::Meaning meaning = SegVector::Meaning::newton_coeffs) {
    if (!seg || !field) throw std::invalid_argument("null segment or field");
    if (data.empty()) data.assign(seg->size(), FieldElement{});
    if (data.size() != seg->size()) throw std::invalid_argument("segment vector size mismatch");
    return SegVector{std::move(seg), std::move(field), std::move(data), meaning};
}

}  // namespace mlt

#endif
