#pragma once

#include <array>
#include <complex>
#include <string>

namespace qte {

using cplx = std::complex<double>;

// XX and ZZ are the Ising rotations exp(-i(theta/2) X(x)X) and
// exp(-i(theta/2) Z(x)Z).
enum class GateKind { U3, RY, RZ, H, X, CZ, CX, XX, ZZ };

// One gate application: kind, target qubit(s) and angle parameters.
// Qubit 0 is the least-significant bit of the basis index everywhere.
struct Gate {
    GateKind kind = GateKind::X;
    std::array<int, 2> targets{-1, -1};
    std::array<double, 3> params{0.0, 0.0, 0.0};

    // u3(theta, phi, lambda) =
    //   [[cos(t/2),            -e^{i lambda} sin(t/2)],
    //    [e^{i phi} sin(t/2),   e^{i(phi+lambda)} cos(t/2)]]
    static Gate u3(int q, double theta, double phi, double lambda);
    static Gate ry(int q, double theta); // u3(theta, 0, 0)
    static Gate rz(int q, double theta); // diag(e^{-i t/2}, e^{+i t/2})
    static Gate h(int q);
    static Gate x(int q);
    static Gate cz(int a, int b);
    static Gate cx(int control, int target);
    static Gate xx(int a, int b, double theta);
    static Gate zz(int a, int b, double theta);

    int num_targets() const;
    int num_params() const;
    bool is_two_qubit() const { return num_targets() == 2; }

    // Rotation gates with all angles negated; inverse for every kind here
    // except H/X/CZ/CX which are self-inverse (returned unchanged).
    Gate inverse() const;

    // Row-major 2x2 matrix for single-qubit kinds.
    std::array<cplx, 4> matrix1() const;
    // Row-major 4x4 matrix for two-qubit kinds in the basis
    // |t1 t0> with targets[0] the low bit (index u = bit(targets[1])<<1 | bit(targets[0])).
    std::array<cplx, 16> matrix2() const;

    std::string name() const;
};

} // namespace qte
