#pragma once

#include <string_view>
#include <utility>

#include "qte/bloch.hpp"

namespace qte {

// Bloch vector of the (m,1)-QRAC codeword for a 2- or 3-bit string.
// m=3: ((-1)^{b1}, (-1)^{b2}, (-1)^{b3}) / sqrt(3)  (cube corners)
// m=2: ((-1)^{b1}, 0, (-1)^{b2}) / sqrt(2)          (x-z great-circle square)
// The first character of `bits` drives the x axis.
BlochVector qrac_bloch(std::string_view bits);

// Rotation angles (theta, phi) of the codeword above.
std::pair<double, double> qrac_angles(std::string_view bits);

} // namespace qte
