#pragma once

// Passive linear-optical networks: H = sum_jk b_j^dag G_jk b_k.
//
// Mode 0 is always the resonator; modes 1..dim-1 form the reservoir. All
// frequencies are angular (rad/time) with hbar = 1.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qle {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

namespace network {

inline constexpr double kTolHerm = 1e-10;   // relative to max |entry|
inline constexpr double kTolUnit = 1e-9;
inline constexpr double kTolGauge = 1e-8;   // radians
inline constexpr double kTolZero = 1e-12;   // relative to max |entry|

/// Hermitian mode-coupling matrix. Only constructible via validate_coupling(),
/// so every instance is exactly Hermitian.
class CouplingMatrix {
public:
    Eigen::Index dim() const noexcept { return entries_.rows(); }
    static constexpr Eigen::Index resonator_index() noexcept { return 0; }
    const CMatrix& entries() const noexcept { return entries_; }

    /// Resonator detuning G_00.
    double detuning() const { return entries_(0, 0).real(); }

    /// The reservoir block G' (rows/cols 1..dim-1).
    CMatrix reservoir_block() const;

private:
    explicit CouplingMatrix(CMatrix entries) : entries_(std::move(entries)) {}
    friend CouplingMatrix validate_coupling(const CMatrix& raw);

    CMatrix entries_;
};

struct ReservoirDecomposition {
    double detuning = 0.0;
    CVector eta;                  // resonator coupling to each reservoir eigenmode
    RVector reservoir_frequencies;  // ascending
    CMatrix transform;            // V, with G' = V^dag D V; row j defines eigenmode c_j
};

struct GaugeSolution {
    bool exists = false;
    std::vector<double> phases;   // theta_j in [0, 2pi); empty when !exists
    double worst_cycle_defect = 0.0;
};

/// Symmetrizes raw as (raw + raw^dag)/2 after checking Hermiticity.
/// Throws Error{NotSquare} or Error{NotHermitian}.
CouplingMatrix validate_coupling(const CMatrix& raw);

/// Diagonalizes the reservoir block and projects the resonator coupling row
/// onto the eigenmodes: eta_j = sum_{k!=0} G_0k conj(V_jk).
ReservoirDecomposition decompose_reservoir(const CouplingMatrix& g);

/// Decides whether phases theta exist with exp(i(theta_j - theta_k)) conj(G_jk) = G_jk.
///
/// Each nonzero off-diagonal entry is an edge constraining
/// theta_j - theta_k = 2 arg G_jk (mod 2pi). Phases are propagated over a
/// BFS spanning forest (roots fixed at 0); every non-tree edge closes a cycle
/// whose wrapped phase sum is the defect.
GaugeSolution solve_gauge(const CouplingMatrix& g);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double x);

}  // namespace network
}  // namespace qle
