#pragma once

#include <functional>
#include <numbers>

namespace qte {

// Exact derivative of an expectation-linear objective with respect to the
// angle of a gate exp(-i(theta/2)G) with G^2 = I (RY, RZ, IsingXX, IsingZZ,
// and either u3 angle, which decomposes into such rotations):
//   df/dtheta = [f(theta + pi/2) - f(theta - pi/2)] / 2.
inline double parameter_shift_grad(const std::function<double(double)>& f, double theta) {
    const double s = std::numbers::pi / 2;
    return (f(theta + s) - f(theta - s)) / 2.0;
}

inline double central_difference(const std::function<double(double)>& f, double theta,
                                 double step = 1e-5) {
    return (f(theta + step) - f(theta - step)) / (2.0 * step);
}

// Parameter-shift when the gate form supports it, otherwise the finite
// difference fallback. `used_fallback`, when given, reports which path ran
// so callers can log it.
inline double circuit_param_grad(const std::function<double(double)>& f, double theta,
                                 bool shift_supported, bool* used_fallback = nullptr) {
    if (used_fallback) *used_fallback = !shift_supported;
    return shift_supported ? parameter_shift_grad(f, theta) : central_difference(f, theta);
}

} // namespace qte
