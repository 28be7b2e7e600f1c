#include "qte/dense_oracle.hpp"

#include <stdexcept>
#include <vector>

namespace qte {

namespace {

using Matrix = std::vector<cplx>; // row-major, square

Matrix kron(const Matrix& a, std::size_t na, const Matrix& b, std::size_t nb) {
    Matrix out(na * nb * na * nb, cplx{0, 0});
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j)
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l)
                    out[(i * nb + k) * na * nb + (j * nb + l)] = a[i * na + j] * b[k * nb + l];
    return out;
}

} // namespace

StateVector dense_oracle_apply(const StateVector& state, const Gate& g) {
    const int n = state.num_qubits();
    if (n > 5) throw std::invalid_argument("dense oracle limited to 5 qubits");
    const std::size_t dim = state.dim();

    Matrix full;
    if (!g.is_two_qubit()) {
        const auto u = g.matrix1();
        const Matrix u2(u.begin(), u.end());
        const Matrix id2{1, 0, 0, 1};
        // basis = |q_{n-1}> (x) ... (x) |q_0>, so build from the top qubit down
        full = {1};
        std::size_t sz = 1;
        for (int q = n - 1; q >= 0; --q) {
            full = kron(full, sz, q == g.targets[0] ? u2 : id2, 2);
            sz *= 2;
        }
    } else {
        // elementwise embedding of the 4x4 matrix (equivalent to the
        // Kronecker construction with target-permutation conjugation)
        const auto u = g.matrix2();
        const std::size_t m0 = std::size_t{1} << g.targets[0];
        const std::size_t m1 = std::size_t{1} << g.targets[1];
        full.assign(dim * dim, cplx{0, 0});
        for (std::size_t col = 0; col < dim; ++col) {
            const int ucol = ((col & m1) ? 2 : 0) | ((col & m0) ? 1 : 0);
            const std::size_t rest = col & ~(m0 | m1);
            for (int urow = 0; urow < 4; ++urow) {
                const cplx v = u[urow * 4 + ucol];
                if (v == cplx{0, 0}) continue;
                const std::size_t row = rest | ((urow & 1) ? m0 : 0) | ((urow & 2) ? m1 : 0);
                full[row * dim + col] = v;
            }
        }
    }

    StateVector out = state;
    for (std::size_t row = 0; row < dim; ++row) {
        cplx acc{0, 0};
        for (std::size_t col = 0; col < dim; ++col)
            acc += full[row * dim + col] * state.amplitude(col);
        out.set_amplitude(row, acc);
    }
    return out;
}

} // namespace qte
