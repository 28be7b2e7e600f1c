#include "qte/qrac.hpp"

#include <cmath>
#include <stdexcept>

namespace qte {

namespace {
double sign_of(char c) {
    if (c == '0') return 1.0;
    if (c == '1') return -1.0;
    throw std::invalid_argument("bitstring may only contain '0' and '1'");
}
} // namespace

BlochVector qrac_bloch(std::string_view bits) {
    if (bits.size() == 3) {
        const double r = 1.0 / std::sqrt(3.0);
        return {sign_of(bits[0]) * r, sign_of(bits[1]) * r, sign_of(bits[2]) * r};
    }
    if (bits.size() == 2) {
        const double r = 1.0 / std::sqrt(2.0);
        return {sign_of(bits[0]) * r, 0.0, sign_of(bits[1]) * r};
    }
    throw std::invalid_argument("QRAC codewords exist for 2- or 3-bit strings, got length " +
                                std::to_string(bits.size()));
}

std::pair<double, double> qrac_angles(std::string_view bits) {
    return angles_from_bloch(qrac_bloch(bits));
}

} // namespace qte
