#include "qte/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qte/errors.hpp"
#include "qte/rng.hpp"

namespace qte {

void Circuit::append(const Gate& g) {
    int nt = g.num_targets();
    for (int i = 0; i < nt; ++i) {
        if (g.targets[i] < 0 || g.targets[i] >= num_qubits)
            throw std::invalid_argument("gate target " + std::to_string(g.targets[i]) +
                                        " out of range for " + std::to_string(num_qubits) +
                                        " qubits");
    }
    if (nt == 2 && g.targets[0] == g.targets[1])
        throw std::invalid_argument("two-qubit gate targets must be distinct");
    gates.push_back(g);
}

void Circuit::append_shifted(const Circuit& src, int offset) {
    for (Gate g : src.gates) {
        for (int i = 0; i < g.num_targets(); ++i) g.targets[i] += offset;
        append(g);
    }
}

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits)
        throw ConfigError("qubit count must be in [1, " + std::to_string(kMaxQubits) +
                          "], got " + std::to_string(num_qubits));
    amps_.assign(std::size_t{1} << num_qubits, cplx{0, 0});
    amps_[0] = cplx{1, 0};
}

void StateVector::apply(const Gate& g) {
    int nt = g.num_targets();
    for (int i = 0; i < nt; ++i) {
        if (g.targets[i] < 0 || g.targets[i] >= num_qubits_)
            throw std::invalid_argument("gate target out of range");
    }
    if (nt == 1)
        apply_single(g);
    else
        apply_two(g);
}

void StateVector::apply(const Circuit& c) {
    if (c.num_qubits > num_qubits_)
        throw std::invalid_argument("circuit is wider than the register");
    for (const Gate& g : c.gates) apply(g);
}

void StateVector::apply_single(const Gate& g) {
    const std::size_t n = amps_.size();
    const std::size_t step = std::size_t{1} << g.targets[0];
    switch (g.kind) {
    case GateKind::X:
        for (std::size_t base = 0; base < n; base += 2 * step)
            for (std::size_t i = base; i < base + step; ++i)
                std::swap(amps_[i], amps_[i + step]);
        return;
    case GateKind::RZ: {
        const cplx e0 = std::exp(cplx{0, -g.params[0] / 2});
        const cplx e1 = std::exp(cplx{0, g.params[0] / 2});
        for (std::size_t base = 0; base < n; base += 2 * step)
            for (std::size_t i = base; i < base + step; ++i) {
                amps_[i] *= e0;
                amps_[i + step] *= e1;
            }
        return;
    }
    default: {
        const auto m = g.matrix1();
        for (std::size_t base = 0; base < n; base += 2 * step)
            for (std::size_t i = base; i < base + step; ++i) {
                const cplx a = amps_[i], b = amps_[i + step];
                amps_[i] = m[0] * a + m[1] * b;
                amps_[i + step] = m[2] * a + m[3] * b;
            }
        return;
    }
    }
}

void StateVector::apply_two(const Gate& g) {
    const std::size_t n = amps_.size();
    if (g.targets[0] == g.targets[1])
        throw std::invalid_argument("two-qubit gate targets must be distinct");
    const std::size_t m0 = std::size_t{1} << g.targets[0];
    const std::size_t m1 = std::size_t{1} << g.targets[1];
    switch (g.kind) {
    case GateKind::CZ:
        for (std::size_t i = 0; i < n; ++i)
            if ((i & m0) && (i & m1)) amps_[i] = -amps_[i];
        return;
    case GateKind::CX:
        // control = targets[0], target = targets[1]
        for (std::size_t i = 0; i < n; ++i)
            if ((i & m0) && !(i & m1)) std::swap(amps_[i], amps_[i | m1]);
        return;
    case GateKind::ZZ: {
        const cplx em = std::exp(cplx{0, -g.params[0] / 2});
        const cplx ep = std::exp(cplx{0, g.params[0] / 2});
        for (std::size_t i = 0; i < n; ++i) {
            bool b0 = i & m0, b1 = i & m1;
            amps_[i] *= (b0 == b1) ? em : ep;
        }
        return;
    }
    case GateKind::XX: {
        const double c = std::cos(g.params[0] / 2);
        const cplx is{0, std::sin(g.params[0] / 2)};
        const std::size_t flip = m0 | m1;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = i ^ flip;
            if (j < i) continue;
            const cplx a = amps_[i], b = amps_[j];
            amps_[i] = c * a - is * b;
            amps_[j] = c * b - is * a;
        }
        return;
    }
    default:
        throw std::invalid_argument("unknown two-qubit gate");
    }
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
    return p;
}

double StateVector::marginal_probability(int qubit, int outcome) const {
    if (qubit < 0 || qubit >= num_qubits_) throw std::invalid_argument("qubit index out of range");
    if (outcome != 0 && outcome != 1) throw std::invalid_argument("outcome must be 0 or 1");
    const std::size_t mask = std::size_t{1} << qubit;
    double acc = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if (((i & mask) != 0) == (outcome == 1)) acc += std::norm(amps_[i]);
    return acc;
}

std::map<std::uint64_t, std::int64_t> StateVector::sample_counts(std::int64_t shots,
                                                                 std::uint64_t seed) const {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    std::vector<double> cum(amps_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        acc += std::norm(amps_[i]);
        cum[i] = acc;
    }
    Rng rng(seed);
    std::map<std::uint64_t, std::int64_t> counts;
    for (std::int64_t s = 0; s < shots; ++s) {
        double u = uniform_double(rng) * acc;
        auto it = std::upper_bound(cum.begin(), cum.end(), u);
        std::size_t idx = (it == cum.end()) ? amps_.size() - 1
                                            : static_cast<std::size_t>(it - cum.begin());
        ++counts[idx];
    }
    return counts;
}

double StateVector::norm_squared() const {
    double acc = 0.0;
    for (const cplx& a : amps_) acc += std::norm(a);
    return acc;
}

StateVector new_zero_state(int num_qubits) { return StateVector(num_qubits); }

StateVector apply_gate(StateVector state, const Gate& g) {
    state.apply(g);
    return state;
}

StateVector run_circuit(const Circuit& c) {
    StateVector s(c.num_qubits);
    s.apply(c);
    return s;
}

} // namespace qte
