#ifndef MLT_CHAR2_FFT_HPP
#define MLT_CHAR2_FFT_HPP

#include <cstddef>

#include "mlt/field.hpp"

namespace mlt::detail {

/// True when products over f with this output length can run on the
/// additive-FFT path (characteristic 2, extension degree dividing 16,
/// transform length within the Cantor-basis capacity of the lift field).
bool fft2_applicable(const FieldSpec& f, std::size_t out_len);

/// out[0..la+lb-2] = a * b, computed by lifting the coefficients into
/// GF(2^16), transforming on a Cantor subspace basis, and projecting back.
void fft2_mul(const FieldSpec& f, const FieldElement* a, std::size_t la,
              const FieldElement* b, std::size_t lb, FieldElement* out);

}  // namespace mlt::detail

#endif
