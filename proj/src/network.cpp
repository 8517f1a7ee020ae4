#include "qle/network.hpp"

#include <cmath>
#include <numbers>
#include <queue>
#include <sstream>

#include "qle/errors.hpp"

namespace qle::network {

CMatrix CouplingMatrix::reservoir_block() const {
    const auto n = dim() - 1;
    return entries_.bottomRightCorner(n, n);
}

CouplingMatrix validate_coupling(const CMatrix& raw) {
    if (raw.rows() != raw.cols() || raw.rows() < 1) {
        std::ostringstream msg;
        msg << "coupling matrix is " << raw.rows() << "x" << raw.cols();
        throw Error(ErrorKind::NotSquare, msg.str());
    }
    const double scale = raw.cwiseAbs().maxCoeff();
    const double defect = (raw - raw.adjoint()).cwiseAbs().maxCoeff();
    if (defect > kTolHerm * scale) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "max |G_jk - conj(G_kj)| = " << defect;
        throw Error(ErrorKind::NotHermitian, msg.str());
    }
    CMatrix sym = 0.5 * (raw + raw.adjoint());
    return CouplingMatrix(std::move(sym));
}

ReservoirDecomposition decompose_reservoir(const CouplingMatrix& g) {
    if (g.dim() < 2) {
        throw Error(ErrorKind::DimensionTooSmall, "reservoir needs at least one mode");
    }
    const CMatrix block = g.reservoir_block();
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(block);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::EigensolverFailure, "Hermitian eigensolver did not converge");
    }
    // Eigen returns G' = U D U^dag with ascending eigenvalues, so V = U^dag.
    ReservoirDecomposition out;
    out.detuning = g.detuning();
    out.reservoir_frequencies = solver.eigenvalues();
    out.transform = solver.eigenvectors().adjoint();

    const auto n = g.dim() - 1;
    const CVector row = g.entries().row(0).tail(n).transpose();
    // eta_j = sum_k G_0k conj(V_jk)
    out.eta = out.transform.conjugate() * row;
    return out;
}

double wrap_angle(double x) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(x, two_pi);
    if (r <= -std::numbers::pi) r += two_pi;
    if (r > std::numbers::pi) r -= two_pi;
    return r;
}

namespace {

double to_unit_circle(double x) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(x, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r -= two_pi;
    return r;
}

}  // namespace

GaugeSolution solve_gauge(const CouplingMatrix& g) {
    const auto& m = g.entries();
    const auto n = static_cast<std::size_t>(g.dim());
    const double cutoff = kTolZero * m.cwiseAbs().maxCoeff();

    struct Edge {
        std::size_t to;
        double shift;  // theta_from - theta_to must equal this
    };
    std::vector<std::vector<Edge>> adj(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            if (j == k) continue;
            const Complex v = m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
            if (std::abs(v) > cutoff) adj[j].push_back({k, 2.0 * std::arg(v)});
        }
    }

    std::vector<double> theta(n, 0.0);
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> parent(n, n);
    double worst = 0.0;

    for (std::size_t root = 0; root < n; ++root) {
        if (seen[root]) continue;
        seen[root] = true;
        std::queue<std::size_t> frontier;
        frontier.push(root);
        while (!frontier.empty()) {
            const auto j = frontier.front();
            frontier.pop();
            for (const auto& e : adj[j]) {
                if (!seen[e.to]) {
                    seen[e.to] = true;
                    parent[e.to] = j;
                    theta[e.to] = theta[j] - e.shift;
                    frontier.push(e.to);
                }
            }
        }
    }

    // Non-tree edges (each visited from both ends; the two defects are negatives).
    for (std::size_t j = 0; j < n; ++j) {
        for (const auto& e : adj[j]) {
            if (parent[e.to] == j || parent[j] == e.to) continue;
            const double defect = std::abs(wrap_angle(theta[j] - theta[e.to] - e.shift));
            worst = std::max(worst, defect);
        }
    }

    GaugeSolution out;
    out.worst_cycle_defect = worst;
    out.exists = worst <= kTolGauge;
    if (out.exists) {
        out.phases.resize(n);
        for (std::size_t j = 0; j < n; ++j) out.phases[j] = to_unit_circle(theta[j]);
    }
    return out;
}

}  // namespace qle::network
