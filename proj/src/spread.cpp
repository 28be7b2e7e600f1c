#include "qte/spread.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace qte {

namespace {

Eigen::Matrix3d slot_covariance(const EmbeddingTable& table, int slot, Eigen::Vector3d* mu_out,
                                std::vector<Eigen::Vector3d>* rs_out) {
    const int n = table.entries_per_slot();
    std::vector<Eigen::Vector3d> rs(n);
    Eigen::Vector3d mu = Eigen::Vector3d::Zero();
    for (int e = 0; e < n; ++e) {
        BlochVector r = table.bloch_of(slot, e);
        rs[e] = Eigen::Vector3d(r.x, r.y, r.z);
        mu += rs[e];
    }
    mu /= n;
    Eigen::Matrix3d sigma = Eigen::Matrix3d::Zero();
    for (const auto& r : rs) sigma += (r - mu) * (r - mu).transpose();
    sigma /= n;
    if (mu_out) *mu_out = mu;
    if (rs_out) *rs_out = std::move(rs);
    return sigma;
}

// Adjugate of a symmetric 3x3 matrix (transpose of the cofactor matrix).
Eigen::Matrix3d adjugate3(const Eigen::Matrix3d& a) {
    Eigen::Matrix3d adj;
    adj(0, 0) = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
    adj(0, 1) = a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2);
    adj(0, 2) = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
    adj(1, 0) = a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2);
    adj(1, 1) = a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
    adj(1, 2) = a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2);
    adj(2, 0) = a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0);
    adj(2, 1) = a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1);
    adj(2, 2) = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    return adj;
}

} // namespace

double spread_loss(const EmbeddingTable& table, int slot) {
    return -slot_covariance(table, slot, nullptr, nullptr).determinant();
}

double spread_loss(const EmbeddingTable& table) {
    double acc = 0.0;
    for (int s = 0; s < table.slots(); ++s) acc += spread_loss(table, s);
    return acc;
}

std::vector<double> spread_grad(const EmbeddingTable& table, int slot) {
    const int n = table.entries_per_slot();
    Eigen::Vector3d mu;
    std::vector<Eigen::Vector3d> rs;
    Eigen::Matrix3d sigma = slot_covariance(table, slot, &mu, &rs);
    // d(-det Sigma) = -tr(adj(Sigma) dSigma); dSigma for a move of r_k is
    // (1/n)(e (r_k-mu)^T + (r_k-mu) e^T), so dL/dr_k = -(2/n) adj(Sigma)(r_k - mu).
    Eigen::Matrix3d adj = adjugate3(sigma);
    std::vector<double> grad(static_cast<std::size_t>(n) * 2);
    for (int e = 0; e < n; ++e) {
        Eigen::Vector3d dl_dr = -(2.0 / n) * (adj * (rs[e] - mu));
        const double t = table.theta(slot, e), p = table.phi(slot, e);
        Eigen::Vector3d dr_dt(std::cos(t) * std::cos(p), std::cos(t) * std::sin(p),
                              -std::sin(t));
        Eigen::Vector3d dr_dp(-std::sin(t) * std::sin(p), std::sin(t) * std::cos(p), 0.0);
        grad[2 * e] = dl_dr.dot(dr_dt);
        grad[2 * e + 1] = dl_dr.dot(dr_dp);
    }
    return grad;
}

void add_spread_grad(const EmbeddingTable& table, double lambda, std::span<double> grad) {
    if (grad.size() != table.param_count())
        throw std::invalid_argument("gradient buffer does not match the table layout");
    if (lambda == 0.0) return;
    const std::size_t per_slot = static_cast<std::size_t>(table.entries_per_slot()) * 2;
    for (int s = 0; s < table.slots(); ++s) {
        std::vector<double> g = spread_grad(table, s);
        for (std::size_t j = 0; j < per_slot; ++j) grad[s * per_slot + j] += lambda * g[j];
    }
}

} // namespace qte
