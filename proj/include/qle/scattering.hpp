#pragma once

// Static port algebra for linear scattering matrices: S(i, j) is the output
// amplitude at port i for unit input at port j.

#include <string>

#include "qle/network.hpp"

namespace qle::scattering {

inline constexpr double kTolS = 1e-9;
inline constexpr double kTolRank = 1e-7;

class ScatteringMatrix {
public:
    /// Throws Error{NotSquare} for non-square or empty input.
    explicit ScatteringMatrix(CMatrix entries);

    Eigen::Index dim() const noexcept { return entries_.rows(); }
    const CMatrix& entries() const noexcept { return entries_; }
    Complex operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

    double max_singular_value() const;

private:
    CMatrix entries_;
};

struct Classification {
    bool unitary = false;
    bool reciprocal = false;
    bool passive = false;
};

Classification classify(const ScatteringMatrix& s);

/// Number of ports a minimal unitary dilation adds: singular values below 1 - tol_rank.
Eigen::Index defect_rank(const ScatteringMatrix& s);

/// Embeds a passive S as the upper-left block of a unitary matrix of side
/// dim + r, r = defect_rank(s). In the singular basis S = U diag(sigma) W^dag
/// the defect operators are D = W sqrt(1 - sigma^2) W^dag and
/// D' = U sqrt(1 - sigma^2) U^dag; the result is
///
///   [ S                          U_r sqrt(1 - sigma_r^2) ]
///   [ sqrt(1 - sigma_r^2) W_r^dag       -diag(sigma_r)   ]
///
/// restricted to the r defective singular directions. The upper-left block is
/// the input verbatim.
/// Throws Error{NotPassive} or Error{DilationVerificationFailed}.
ScatteringMatrix dilate_to_unitary(const ScatteringMatrix& s);

/// Terminates port `closed_port` with a mirror of reflection e^{i mirror_phase}:
///   S_red = S_aa + S_ab e^{i phi} (1 - S_bb e^{i phi})^{-1} S_ba.
/// Throws Error{InvalidArgument} for bad inputs, Error{SingularClosure}.
ScatteringMatrix two_port_closure_check(const ScatteringMatrix& s3, Eigen::Index closed_port,
                                        double mirror_phase);

std::string classification_csv(const Classification& c);

}  // namespace qle::scattering
