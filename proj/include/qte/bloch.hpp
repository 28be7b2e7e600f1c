#pragma once

#include <cmath>
#include <utility>

namespace qte {

// Point on the unit sphere; the state u3(theta, phi, 0)|0> sits at
// (sin t cos p, sin t sin p, cos t).
struct BlochVector {
    double x = 0, y = 0, z = 1;
};

inline BlochVector bloch_from_angles(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

// (theta, phi) with theta = arccos z, phi = atan2(y, x).
inline std::pair<double, double> angles_from_bloch(const BlochVector& r) {
    double z = r.z;
    if (z > 1.0) z = 1.0;
    if (z < -1.0) z = -1.0;
    return {std::acos(z), std::atan2(r.y, r.x)};
}

inline double dot(const BlochVector& a, const BlochVector& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

} // namespace qte
