#pragma once

#include "sdcode/code.hpp"

namespace sdc::codes {

// {00, 11}
LinearCode i2();
// Extended Hamming [8,4,4].
LinearCode e8();
// Extended binary Golay [24,12,8], from the cyclic [23,12] code.
LinearCode golay24();
// The indecomposable doubly even self-dual [16,8,4] code d16+.
LinearCode d16_plus();
// The one-dimensional code spanned by the all-one vector.
LinearCode all_ones_code(std::size_t n);
// C ⊕ C ⊕ ... (copies times).
LinearCode direct_power(const LinearCode& c, std::size_t copies);

}  // namespace sdc::codes
