#include "qte/gates.hpp"

#include <cmath>
#include <stdexcept>

namespace qte {

namespace {

Gate make1(GateKind kind, int q, double p0 = 0, double p1 = 0, double p2 = 0) {
    Gate g;
    g.kind = kind;
    g.targets = {q, -1};
    g.params = {p0, p1, p2};
    return g;
}

Gate make2(GateKind kind, int a, int b, double p0 = 0) {
    if (a == b) throw std::invalid_argument("two-qubit gate needs two distinct targets");
    Gate g;
    g.kind = kind;
    g.targets = {a, b};
    g.params = {p0, 0, 0};
    return g;
}

} // namespace

Gate Gate::u3(int q, double theta, double phi, double lambda) {
    return make1(GateKind::U3, q, theta, phi, lambda);
}
Gate Gate::ry(int q, double theta) { return make1(GateKind::RY, q, theta); }
Gate Gate::rz(int q, double theta) { return make1(GateKind::RZ, q, theta); }
Gate Gate::h(int q) { return make1(GateKind::H, q); }
Gate Gate::x(int q) { return make1(GateKind::X, q); }
Gate Gate::cz(int a, int b) { return make2(GateKind::CZ, a, b); }
Gate Gate::cx(int control, int target) { return make2(GateKind::CX, control, target); }
Gate Gate::xx(int a, int b, double theta) { return make2(GateKind::XX, a, b, theta); }
Gate Gate::zz(int a, int b, double theta) { return make2(GateKind::ZZ, a, b, theta); }

int Gate::num_targets() const {
    switch (kind) {
    case GateKind::CZ:
    case GateKind::CX:
    case GateKind::XX:
    case GateKind::ZZ:
        return 2;
    default:
        return 1;
    }
}

int Gate::num_params() const {
    switch (kind) {
    case GateKind::U3:
        return 3;
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::XX:
    case GateKind::ZZ:
        return 1;
    default:
        return 0;
    }
}

Gate Gate::inverse() const {
    Gate g = *this;
    for (int i = 0; i < num_params(); ++i) g.params[i] = -g.params[i];
    // u3(theta, phi, lambda)^-1 = u3(-theta, -lambda, -phi)
    if (kind == GateKind::U3) std::swap(g.params[1], g.params[2]);
    return g;
}

std::array<cplx, 4> Gate::matrix1() const {
    const cplx i{0.0, 1.0};
    switch (kind) {
    case GateKind::U3: {
        double t = params[0], phi = params[1], lam = params[2];
        double c = std::cos(t / 2), s = std::sin(t / 2);
        return {cplx{c, 0}, -std::exp(i * lam) * s, std::exp(i * phi) * s,
                std::exp(i * (phi + lam)) * c};
    }
    case GateKind::RY: {
        double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
        return {cplx{c, 0}, cplx{-s, 0}, cplx{s, 0}, cplx{c, 0}};
    }
    case GateKind::RZ: {
        return {std::exp(-i * (params[0] / 2)), 0, 0, std::exp(i * (params[0] / 2))};
    }
    case GateKind::H: {
        double r = 1.0 / std::sqrt(2.0);
        return {cplx{r, 0}, cplx{r, 0}, cplx{r, 0}, cplx{-r, 0}};
    }
    case GateKind::X:
        return {0, 1, 1, 0};
    default:
        throw std::invalid_argument("matrix1 on a two-qubit gate");
    }
}

std::array<cplx, 16> Gate::matrix2() const {
    const cplx i{0.0, 1.0};
    std::array<cplx, 16> m{};
    auto at = [&m](int row, int col) -> cplx& { return m[row * 4 + col]; };
    switch (kind) {
    case GateKind::CZ:
        at(0, 0) = at(1, 1) = at(2, 2) = 1;
        at(3, 3) = -1;
        return m;
    case GateKind::CX:
        // control = targets[0] (low bit), target = targets[1] (high bit)
        at(0, 0) = at(2, 2) = 1;
        at(3, 1) = at(1, 3) = 1;
        return m;
    case GateKind::XX: {
        cplx c{std::cos(params[0] / 2), 0};
        cplx is = i * std::sin(params[0] / 2);
        for (int u = 0; u < 4; ++u) {
            at(u, u) = c;
            at(u ^ 3, u) = -is;
        }
        return m;
    }
    case GateKind::ZZ: {
        cplx em = std::exp(-i * (params[0] / 2));
        cplx ep = std::exp(i * (params[0] / 2));
        at(0, 0) = em;
        at(1, 1) = ep;
        at(2, 2) = ep;
        at(3, 3) = em;
        return m;
    }
    default:
        throw std::invalid_argument("matrix2 on a single-qubit gate");
    }
}

std::string Gate::name() const {
    switch (kind) {
    case GateKind::U3: return "u3";
    case GateKind::RY: return "ry";
    case GateKind::RZ: return "rz";
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::CZ: return "cz";
    case GateKind::CX: return "cx";
    case GateKind::XX: return "xx";
    case GateKind::ZZ: return "zz";
    }
    return "?";
}

} // namespace qte
