#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qte/dense_oracle.hpp"
#include "qte/errors.hpp"
#include "qte/statevector.hpp"
#include "test_util.hpp"

using namespace qte;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;

StateVector bell_state() {
    StateVector s(2);
    s.apply(Gate::h(0));
    s.apply(Gate::cx(0, 1));
    return s;
}
} // namespace

TEST_CASE("zero state") {
    StateVector s1(1);
    CHECK(s1.amplitude(0) == cplx{1, 0});
    CHECK(s1.amplitude(1) == cplx{0, 0});
    StateVector s2(2);
    CHECK(s2.dim() == 4);
    CHECK(s2.amplitude(0) == cplx{1, 0});
    for (std::size_t i = 1; i < 4; ++i) CHECK(s2.amplitude(i) == cplx{0, 0});
    CHECK_THROWS_AS(StateVector(0), ConfigError);
    CHECK_THROWS_AS(StateVector(21), ConfigError);
}

TEST_CASE("single-qubit gate actions on |0>") {
    // u3(pi,0,0) acts as an X rotation: |0> -> |1> with no global phase
    StateVector s(1);
    s.apply(Gate::u3(0, pi, 0, 0));
    CHECK(std::abs(s.amplitude(0)) == Approx(0).epsilon(1e-12));
    CHECK(std::abs(s.amplitude(1) - cplx{1, 0}) < 1e-12);

    StateVector h(1);
    h.apply(Gate::h(0));
    CHECK(std::abs(h.amplitude(0) - cplx{1 / std::sqrt(2.0), 0}) < 1e-12);
    CHECK(std::abs(h.amplitude(1) - cplx{1 / std::sqrt(2.0), 0}) < 1e-12);

    // u3(theta, phi, 0)|0> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
    const double theta = 1.234, phi = 0.567;
    StateVector u(1);
    u.apply(Gate::u3(0, theta, phi, 0));
    CHECK(std::abs(u.amplitude(0) - cplx{std::cos(theta / 2), 0}) < 1e-12);
    CHECK(std::abs(u.amplitude(1) - std::exp(cplx{0, phi}) * std::sin(theta / 2)) < 1e-12);
}

TEST_CASE("gate matrices are unitary") {
    Rng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const Gate g = testutil::random_gate(rng, 2);
        if (!g.is_two_qubit()) {
            const auto m = g.matrix1();
            // G^dagger G = I
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) {
                    cplx acc{0, 0};
                    for (int k = 0; k < 2; ++k) acc += std::conj(m[k * 2 + r]) * m[k * 2 + c];
                    CHECK(std::abs(acc - (r == c ? cplx{1, 0} : cplx{0, 0})) < 1e-12);
                }
        } else {
            const auto m = g.matrix2();
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) {
                    cplx acc{0, 0};
                    for (int k = 0; k < 4; ++k) acc += std::conj(m[k * 4 + r]) * m[k * 4 + c];
                    CHECK(std::abs(acc - (r == c ? cplx{1, 0} : cplx{0, 0})) < 1e-12);
                }
        }
    }
}

TEST_CASE("fixed two-qubit actions") {
    // CX with control 0: |01> (qubit0 = 1) -> |11>
    StateVector s(2);
    s.apply(Gate::x(0));
    s.apply(Gate::cx(0, 1));
    CHECK(std::abs(s.amplitude(3) - cplx{1, 0}) < 1e-12);

    // CZ flips the sign of |11> only
    StateVector cz(2);
    cz.apply(Gate::x(0));
    cz.apply(Gate::x(1));
    cz.apply(Gate::cz(0, 1));
    CHECK(std::abs(cz.amplitude(3) + cplx{1, 0}) < 1e-12);

    // XX(pi) = -i X(x)X: |10> -> -i|01>
    StateVector xx(2);
    xx.apply(Gate::x(1));
    xx.apply(Gate::xx(0, 1, pi));
    CHECK(std::abs(xx.amplitude(1) - cplx{0, -1}) < 1e-12);

    // ZZ(theta) phases |00> by e^{-i theta/2}
    StateVector zz(2);
    zz.apply(Gate::zz(0, 1, 0.7));
    CHECK(std::abs(zz.amplitude(0) - std::exp(cplx{0, -0.35})) < 1e-12);
}

TEST_CASE("probabilities") {
    StateVector s(1);
    s.apply(Gate::h(0));
    auto p = s.probabilities();
    CHECK(p[0] == Approx(0.5).epsilon(1e-12));
    CHECK(p[1] == Approx(0.5).epsilon(1e-12));

    StateVector z(2);
    auto pz = z.probabilities();
    CHECK(pz[0] == Approx(1.0));

    // u3(arccos(1/sqrt 3), pi/4, 0)|0>: P(0) = (1 + 1/sqrt 3)/2
    StateVector u(1);
    u.apply(Gate::u3(0, std::acos(1 / std::sqrt(3.0)), pi / 4, 0));
    CHECK(u.probabilities()[0] == Approx((1 + 1 / std::sqrt(3.0)) / 2).epsilon(1e-12));
    CHECK(u.probabilities()[0] == Approx(0.78867513).epsilon(1e-7));
}

TEST_CASE("marginal probability") {
    // |10>: qubit1 = 1, qubit0 = 0
    StateVector s(2);
    s.apply(Gate::x(1));
    CHECK(s.marginal_probability(0, 0) == Approx(1.0));
    CHECK(s.marginal_probability(1, 1) == Approx(1.0));

    StateVector bell = bell_state();
    CHECK(bell.marginal_probability(0, 0) == Approx(0.5).epsilon(1e-12));
    CHECK(bell.marginal_probability(1, 0) == Approx(0.5).epsilon(1e-12));

    CHECK_THROWS_AS(s.marginal_probability(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(s.marginal_probability(0, 2), std::invalid_argument);
}

TEST_CASE("sampling") {
    StateVector zero(2);
    auto counts = zero.sample_counts(100, 7);
    CHECK(counts.size() == 1);
    CHECK(counts[0] == 100);

    StateVector h(1);
    h.apply(Gate::h(0));
    auto c1 = h.sample_counts(100000, 11);
    const double frac0 = static_cast<double>(c1[0]) / 100000;
    CHECK(frac0 == Approx(0.5).epsilon(0.02)); // 0.5 +- 0.01

    auto c2 = h.sample_counts(100000, 11);
    CHECK(c1 == c2);

    CHECK_THROWS_AS(h.sample_counts(0, 1), std::invalid_argument);
}

TEST_CASE("sampling matches probabilities (chi-square)") {
    // df = 7 critical value at p = 0.001
    const double crit = 24.3219;
    Rng rng(99);
    for (int trial = 0; trial < 5; ++trial) {
        Circuit c = testutil::random_circuit(rng, 3, 12);
        StateVector s = run_circuit(c);
        const auto probs = s.probabilities();
        auto counts = s.sample_counts(100000, 1234 + static_cast<std::uint64_t>(trial));
        double chi2 = 0;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            const double expected = probs[i] * 100000;
            const double observed = counts.count(i) ? static_cast<double>(counts[i]) : 0.0;
            if (expected > 1e-9) chi2 += (observed - expected) * (observed - expected) / expected;
        }
        CHECK(chi2 < crit);
    }
}

TEST_CASE("norm preservation and rotation round-trips") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        Circuit c = testutil::random_circuit(rng, 3, 20);
        StateVector s = run_circuit(c);
        CHECK(std::abs(s.norm_squared() - 1.0) < 1e-10);

        // applying each gate then its angle-negated inverse restores the state
        StateVector t = s;
        const Gate g = testutil::random_gate(rng, 3);
        t.apply(g);
        t.apply(g.inverse());
        CHECK(testutil::max_abs_diff(s, t) < 1e-10);
    }
}

TEST_CASE("dense oracle equivalence") {
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(uniform_index(rng, 4));
        Circuit c = testutil::random_circuit(rng, n, 20);
        StateVector fast(n);
        StateVector slow(n);
        for (const Gate& g : c.gates) {
            fast.apply(g);
            slow = dense_oracle_apply(slow, g);
        }
        CHECK(testutil::max_abs_diff(fast, slow) < 1e-10);
    }
}

TEST_CASE("dense oracle basics") {
    StateVector s(2);
    s.apply(Gate::h(0));
    // identity rotation leaves the state unchanged
    StateVector id = dense_oracle_apply(s, Gate::ry(1, 0));
    CHECK(testutil::max_abs_diff(s, id) < 1e-12);

    // CX(0 -> 1)|01> = |11| on both paths
    StateVector x(2);
    x.apply(Gate::x(0));
    StateVector via_oracle = dense_oracle_apply(x, Gate::cx(0, 1));
    StateVector via_fast = x;
    via_fast.apply(Gate::cx(0, 1));
    CHECK(std::abs(via_oracle.amplitude(3) - cplx{1, 0}) < 1e-12);
    CHECK(testutil::max_abs_diff(via_oracle, via_fast) < 1e-12);

    StateVector big(6);
    CHECK_THROWS_AS(dense_oracle_apply(big, Gate::x(0)), std::invalid_argument);
}

TEST_CASE("bad gate targets") {
    StateVector s(2);
    CHECK_THROWS_AS(s.apply(Gate::x(2)), std::invalid_argument);
    CHECK_THROWS_AS(Gate::cz(1, 1), std::invalid_argument);
    Circuit c(2);
    CHECK_THROWS_AS(c.append(Gate::ry(5, 0.1)), std::invalid_argument);
}
