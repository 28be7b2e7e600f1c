#include <bit>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "qte/ansatz.hpp"
#include "qte/qnn.hpp"
#include "qte/statevector.hpp"
#include "qte/vqc.hpp"
#include "test_util.hpp"

using namespace qte;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;
} // namespace

TEST_CASE("ryrz parameter counts and structure") {
    RyRzAnsatz a{3, 4, Entanglement::Full};
    CHECK(a.param_count() == 30);

    RyRzAnsatz flat{2, 0, Entanglement::Full};
    CHECK(flat.param_count() == 4);
    Circuit c = flat.build(std::vector<double>(4, 0.0));
    CHECK(c.gates.size() == 4); // single rotation layer, no entanglers

    RyRzAnsatz full{3, 1, Entanglement::Full};
    RyRzAnsatz lin{3, 1, Entanglement::Linear};
    auto count_cz = [](const Circuit& cc) {
        int n = 0;
        for (const Gate& g : cc.gates) n += g.kind == GateKind::CZ;
        return n;
    };
    CHECK(count_cz(full.build(std::vector<double>(12, 0.1))) == 3);
    CHECK(count_cz(lin.build(std::vector<double>(12, 0.1))) == 2);

    CHECK_THROWS_AS(a.build(std::vector<double>(29, 0.0)), std::invalid_argument);

    // zero parameters act as the identity on |0...0>
    RyRzAnsatz deep{3, 4, Entanglement::Full};
    StateVector s = run_circuit(deep.build(std::vector<double>(30, 0.0)));
    CHECK(std::abs(s.amplitude(0) - cplx{1, 0}) < 1e-12);
}

TEST_CASE("vqc parity readout") {
    RyRzAnsatz id{3, 0, Entanglement::Full};
    const std::vector<double> zeros(id.param_count(), 0.0);

    Circuit none(3);
    CHECK(vqc_class1_probability(none, id, zeros) == Approx(0.0).scale(1));

    Circuit one_x(3);
    one_x.append(Gate::x(1));
    CHECK(vqc_class1_probability(one_x, id, zeros) == Approx(1.0));

    Circuit hs(3);
    for (int q = 0; q < 3; ++q) hs.append(Gate::h(q));
    CHECK(vqc_class1_probability(hs, id, zeros) == Approx(0.5).epsilon(1e-12));

    CHECK(vqc_label(0.5) == 1); // >= 0.5 maps to class 1
    CHECK(vqc_label(0.49) == 0);

    RyRzAnsatz wrong{2, 0, Entanglement::Full};
    CHECK_THROWS_AS(vqc_class1_probability(none, wrong, std::vector<double>(4, 0.0)),
                    std::invalid_argument);
}

TEST_CASE("parity probability sums to one and ignores wire labels") {
    Rng rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        StateVector s = run_circuit(testutil::random_circuit(rng, 3, 15));
        double even = 0;
        const auto probs = s.probabilities();
        for (std::size_t i = 0; i < probs.size(); ++i)
            if (!(std::popcount(i) & 1)) even += probs[i];
        CHECK(parity_probability(s) + even == Approx(1.0).epsilon(1e-10));
    }

    // relabeling qubits permutes basis states within fixed popcount classes
    const double angles[3] = {0.3, 1.1, 2.0};
    const int perms[][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    double first = -1;
    for (const auto& perm : perms) {
        Circuit c(3);
        for (int q = 0; q < 3; ++q) c.append(Gate::u3(perm[q], angles[q], 0.4 * q, 0));
        const double p = parity_probability(run_circuit(c));
        if (first < 0)
            first = p;
        else
            CHECK(p == Approx(first).epsilon(1e-10));
    }
}

TEST_CASE("qnn readout structure") {
    QnnReadout r2{2};
    CHECK(r2.param_count() == 4);
    Circuit c = r2.build(std::vector<double>{0.1, 0.2, 0.3, 0.4});
    REQUIRE(c.gates.size() == 4);
    CHECK(c.gates[0].kind == GateKind::XX);
    CHECK(c.gates[1].kind == GateKind::XX);
    CHECK(c.gates[2].kind == GateKind::ZZ);
    CHECK(c.gates[3].kind == GateKind::ZZ);
    for (const Gate& g : c.gates) CHECK(g.targets[1] == 2); // readout qubit

    QnnReadout r16{16};
    CHECK(r16.param_count() == 32);
    CHECK(r16.total_qubits() == 17);

    CHECK_THROWS_AS(r2.build(std::vector<double>(3, 0.0)), std::invalid_argument);
}

TEST_CASE("qnn prediction") {
    QnnReadout r{3};
    const std::vector<double> zeros(6, 0.0);
    Circuit emb(3);
    emb.append(Gate::x(0));
    emb.append(Gate::x(2));
    CHECK(qnn_label1_probability(emb, r, zeros) == Approx(0.0).scale(1));
    CHECK(qnn_label(0.0) == 0);
    CHECK(qnn_label(0.5) == 0); // tie goes to label 0
    CHECK(qnn_label(0.500001) == 1);

    // one XX(pi) from an input in |1>: exp(-i pi/2 XX) flips the readout
    QnnReadout r1{1};
    Circuit in1(1);
    in1.append(Gate::x(0));
    CHECK(qnn_label1_probability(in1, r1, std::vector<double>{pi, 0.0}) == Approx(1.0));
    // the same gate from |0> also flips it (XX acts on both parities alike)
    Circuit in0(1);
    CHECK(qnn_label1_probability(in0, r1, std::vector<double>{pi, 0.0}) == Approx(1.0));
    // half angle: equal superposition on the readout
    CHECK(qnn_label1_probability(in1, r1, std::vector<double>{pi / 2, 0.0}) ==
          Approx(0.5).epsilon(1e-12));

    Circuit wrong(2);
    CHECK_THROWS_AS(qnn_label1_probability(wrong, r, zeros), std::invalid_argument);
}

TEST_CASE("dressed qnn readout") {
    // the X-basis sandwich lets the ZZ layer move the readout marginal
    QnnReadout dressed{1, true};
    Circuit in(1);
    in.append(Gate::x(0));
    CHECK(qnn_label1_probability(in, dressed, std::vector<double>{0.0, 0.0}) ==
          Approx(0.0).scale(1)); // zero parameters still read label 0
    const double with_zz =
        qnn_label1_probability(in, dressed, std::vector<double>{0.0, 1.2});
    CHECK(with_zz > 1e-3);

    // undressed, the same ZZ angle is an invisible phase
    QnnReadout plain{1};
    CHECK(qnn_label1_probability(in, plain, std::vector<double>{0.0, 1.2}) ==
          Approx(0.0).scale(1));
}
