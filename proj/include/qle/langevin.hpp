#pragma once

// Quantum Langevin model of a single resonator mode a(t):
//
//   da/dt = -i w0 a - a/tau + sum_j sqrt(gamma_j) A_j + sum_k sqrt(kappa_k) e^{i phi_k} A_k^dag
//
// with white-noise inputs [A_j(t), A_k^dag(t')] = delta_jk delta(t - t'). Channel 0
// carries the coherent drive; all other channels are vacuum. kappa_k (Bogoliubov
// coupling) acts on channel k >= 1 only, so kappa[i] belongs to channel i + 1.
//
// Two sign conventions coexist on purpose. The operator equation above rotates
// as e^{-i w0 t}; the classical amplitude alpha = sqrt(gamma_0) <a^dag> obeys
//
//   d alpha/dt = +i w0 alpha - alpha/tau + gamma_0 s_in,
//
// where s_in = <A_0^dag>. The moment integrator therefore drives <a> with
// conj(s_in), and classical_amplitude() maps a moment state back to alpha.

#include <cstddef>
#include <string>
#include <vector>

#include "qle/network.hpp"

namespace qle::langevin {

inline constexpr double kTolFd = 1e-9;
inline constexpr double kTolMom = 1e-8;
inline constexpr std::size_t kDefaultOracleModeCap = 20'000'000;

struct ResonatorModel {
    double omega0 = 0.0;
    double tau = 1.0;
    std::vector<double> gamma;  // gamma[0] is the driven input
    std::vector<double> kappa;  // kappa[i] couples to channel i + 1
    std::vector<double> phi;    // same length as kappa

    double sum_gamma() const;
    double sum_kappa() const;
    bool is_passive() const { return sum_kappa() == 0.0; }
};

/// Throws Error{InvalidModel} describing the first violated invariant.
void validate(const ResonatorModel& model);

struct MomentState {
    double t = 0.0;
    Complex mean{};       // <a>
    double number = 0.0;  // <a^dag a>
    Complex anomalous{};  // <a a>
    double commutator = 1.0;

    static MomentState vacuum() { return {}; }
};

/// |<aa>| <= <a^dag a> + [a,a^dag]/2 + tol, the Gaussian physicality bound.
bool is_physical(const MomentState& s, double tol = kTolMom);

struct ClassicalDrive {
    std::vector<Complex> samples;  // s_in at t = n*dt, zero-order hold between
    double dt = 0.0;

    Complex at_step(std::size_t n) const { return n < samples.size() ? samples[n] : Complex{}; }
};

ClassicalDrive constant_drive(Complex amplitude, double dt, std::size_t count);
/// s_in(t) = A exp(i w t)
ClassicalDrive tone_drive(double amplitude, double frequency, double dt, std::size_t count);
/// s_in(t) = A exp(i (w t + rate t^2 / 2))
ClassicalDrive chirp_drive(double amplitude, double start_frequency, double rate, double dt,
                           std::size_t count);

enum class Classification { PassiveConsistent, ActiveConsistent, Inconsistent };
const char* to_string(Classification c) noexcept;

struct TbpReport {
    double tbp = 0.0;
    double total_gamma = 0.0;
    double total_kappa = 0.0;
    double constraint_residual = 0.0;
    Classification classification = Classification::Inconsistent;
};

/// Coefficients of the delta-correlated sources in the second-moment equations
/// for vacuum inputs:
///   d[a,a^dag]/dt = -(2/tau)[a,a^dag] + commutator
///   d<a^dag a>/dt = -(2/tau)<a^dag a> + number       (+ drive terms)
///   d<aa>/dt      = -2(i w0 + 1/tau)<aa> + anomalous (+ drive terms)
struct NoiseSource {
    double commutator = 0.0;  // sum gamma - sum kappa
    double number = 0.0;      // sum kappa
    Complex anomalous{};      // sum_k sqrt(gamma_k kappa_k) e^{i phi_k}
};

NoiseSource noise_source(const ResonatorModel& model);

double commutator_analytic(const ResonatorModel& model, double t);

TbpReport tbp_report(const ResonatorModel& model);

/// Fixed-step RK4 for the classical mean-field amplitude. Returns alpha at every
/// drive sample time; element 0 is alpha0.
std::vector<Complex> integrate_classical(const ResonatorModel& model, const ClassicalDrive& drive,
                                         Complex alpha0);

/// Fixed-step RK4 for the closed first/second-moment system with the drive on
/// channel 0. Steps with drive.dt up to t_end; drive samples past the end of the
/// series are treated as zero. Returns state0 followed by one state per step.
std::vector<MomentState> propagate_moments(const ResonatorModel& model, const ClassicalDrive& drive,
                                           const MomentState& state0, double t_end);

/// alpha = sqrt(gamma_0) conj(<a>)
Complex classical_amplitude(const ResonatorModel& model, const MomentState& s);
/// Inverse of classical_amplitude for gamma_0 > 0.
Complex mean_from_amplitude(const ResonatorModel& model, Complex alpha);

/// Commutator density of the combined input field: sum gamma - sum kappa.
double qmfs_check(const ResonatorModel& model);

/// Steady-state added noise photons tau * sum kappa / 2.
double ase_penalty(const ResonatorModel& model);

/// Brute-force check of propagate_moments for an undriven model starting in
/// vacuum. Each input channel over each step becomes a discrete mode with
/// commutator 1/dt; a(t) is tracked as a coefficient vector over a(0) and all
/// discrete modes. The homogeneous part advances with the exact factor
/// exp(-(i w0 + 1/tau) dt); noise is injected at the left endpoint.
MomentState discrete_mode_oracle(const ResonatorModel& model, double dt, double t_end,
                                 std::size_t mode_cap = kDefaultOracleModeCap);

std::string trajectory_csv(const std::vector<MomentState>& states);
std::string tbp_csv(const TbpReport& report);

}  // namespace qle::langevin
