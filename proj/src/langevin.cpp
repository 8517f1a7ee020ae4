#include "qle/langevin.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "qle/errors.hpp"
#include "qle/matrix_io.hpp"
#include "qle/rk4.hpp"

namespace qle::langevin {

namespace {

constexpr Complex kI{0.0, 1.0};

using MomentVec = Eigen::Matrix<Complex, 4, 1>;  // mean, number, anomalous, commutator

void check_step(const ResonatorModel& model, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw Error(ErrorKind::InvalidArgument, "time step must be positive and finite");
    }
    if (dt > model.tau / 20.0) {
        throw Error(ErrorKind::StepTooLarge, "dt exceeds tau/20");
    }
    if (model.omega0 != 0.0 && dt > 0.1 / std::abs(model.omega0)) {
        throw Error(ErrorKind::StepTooLarge, "dt exceeds 0.1/|omega0|");
    }
}

}  // namespace

double ResonatorModel::sum_gamma() const { return std::accumulate(gamma.begin(), gamma.end(), 0.0); }
double ResonatorModel::sum_kappa() const { return std::accumulate(kappa.begin(), kappa.end(), 0.0); }

void validate(const ResonatorModel& m) {
    auto fail = [](const std::string& why) { throw Error(ErrorKind::InvalidModel, why); };
    if (!(m.tau > 0.0) || !std::isfinite(m.tau)) fail("tau must be positive");
    if (!std::isfinite(m.omega0)) fail("omega0 must be finite");
    if (m.gamma.empty()) fail("gamma needs at least the input channel 0");
    for (double g : m.gamma) {
        if (!(g >= 0.0) || !std::isfinite(g)) fail("gamma entries must be non-negative");
    }
    if (m.kappa.size() != m.phi.size()) fail("kappa and phi must have equal length");
    for (std::size_t i = 0; i < m.kappa.size(); ++i) {
        const double k = m.kappa[i];
        if (!(k >= 0.0) || !std::isfinite(k)) fail("kappa entries must be non-negative");
        if (!std::isfinite(m.phi[i])) fail("phi entries must be finite");
        if (k > 0.0 && i + 1 >= m.gamma.size()) {
            fail("kappa on channel " + std::to_string(i + 1) + " has no matching input channel");
        }
    }
}

bool is_physical(const MomentState& s, double tol) {
    if (s.number < -tol) return false;
    return std::abs(s.anomalous) <= s.number + 0.5 * s.commutator + tol;
}

const char* to_string(Classification c) noexcept {
    switch (c) {
        case Classification::PassiveConsistent: return "PassiveConsistent";
        case Classification::ActiveConsistent: return "ActiveConsistent";
        case Classification::Inconsistent: return "Inconsistent";
    }
    return "Unknown";
}

ClassicalDrive constant_drive(Complex amplitude, double dt, std::size_t count) {
    return {std::vector<Complex>(count, amplitude), dt};
}

ClassicalDrive tone_drive(double amplitude, double frequency, double dt, std::size_t count) {
    return chirp_drive(amplitude, frequency, 0.0, dt, count);
}

ClassicalDrive chirp_drive(double amplitude, double start_frequency, double rate, double dt,
                           std::size_t count) {
    ClassicalDrive d{{}, dt};
    d.samples.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
        const double t = static_cast<double>(n) * dt;
        d.samples.push_back(std::polar(amplitude, start_frequency * t + 0.5 * rate * t * t));
    }
    return d;
}

NoiseSource noise_source(const ResonatorModel& model) {
    NoiseSource src;
    src.commutator = model.sum_gamma() - model.sum_kappa();
    src.number = model.sum_kappa();
    for (std::size_t i = 0; i < model.kappa.size(); ++i) {
        const std::size_t channel = i + 1;
        const double g = channel < model.gamma.size() ? model.gamma[channel] : 0.0;
        src.anomalous += std::sqrt(g * model.kappa[i]) * std::exp(kI * model.phi[i]);
    }
    return src;
}

double commutator_analytic(const ResonatorModel& model, double t) {
    const double decay = std::exp(-2.0 * t / model.tau);
    const double drive = model.tau * (model.sum_gamma() - model.sum_kappa()) / 2.0;
    return decay + drive * (1.0 - decay);
}

TbpReport tbp_report(const ResonatorModel& model) {
    validate(model);
    TbpReport r;
    r.tbp = model.tau * model.gamma[0];
    r.total_gamma = model.tau * model.sum_gamma();
    r.total_kappa = model.tau * model.sum_kappa();
    r.constraint_residual = model.tau * (model.sum_gamma() - model.sum_kappa()) - 2.0;
    const bool consistent = std::abs(r.constraint_residual) <= kTolFd;
    if (!consistent) {
        r.classification = Classification::Inconsistent;
    } else {
        r.classification = model.is_passive() ? Classification::PassiveConsistent
                                              : Classification::ActiveConsistent;
    }
    return r;
}

std::vector<Complex> integrate_classical(const ResonatorModel& model, const ClassicalDrive& drive,
                                         Complex alpha0) {
    validate(model);
    if (drive.samples.empty()) throw Error(ErrorKind::InvalidArgument, "drive has no samples");
    check_step(model, drive.dt);

    const Complex rate = kI * model.omega0 - 1.0 / model.tau;
    const double g0 = model.gamma[0];

    std::vector<Complex> alpha;
    alpha.reserve(drive.samples.size());
    alpha.push_back(alpha0);
    for (std::size_t n = 0; n + 1 < drive.samples.size(); ++n) {
        const Complex s = drive.samples[n];
        auto rhs = [&](double, Complex a) { return rate * a + g0 * s; };
        alpha.push_back(rk4_step(alpha.back(), n * drive.dt, drive.dt, rhs));
    }
    return alpha;
}

std::vector<MomentState> propagate_moments(const ResonatorModel& model, const ClassicalDrive& drive,
                                           const MomentState& state0, double t_end) {
    validate(model);
    check_step(model, drive.dt);
    if (!(t_end > 0.0)) throw Error(ErrorKind::InvalidArgument, "t_end must be positive");
    if (std::abs(state0.commutator - 1.0) > kTolMom) {
        throw Error(ErrorKind::UnphysicalState, "initial commutator must be 1");
    }

    const Complex lambda = kI * model.omega0 + 1.0 / model.tau;
    const double decay = 2.0 / model.tau;
    const double sqrt_g0 = std::sqrt(model.gamma[0]);
    const NoiseSource src = noise_source(model);
    const double dt = drive.dt;
    const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));

    std::vector<MomentState> out;
    out.reserve(steps + 1);
    out.push_back(state0);

    MomentVec y;
    y << state0.mean, state0.number, state0.anomalous, state0.commutator;

    for (std::size_t n = 0; n < steps; ++n) {
        // <A_0> = conj(s_in) in the operator picture.
        const Complex d = sqrt_g0 * std::conj(drive.at_step(n));
        auto rhs = [&](double, const MomentVec& v) {
            const Complex m = v(0);
            MomentVec dv;
            dv(0) = -lambda * m + d;
            dv(1) = -decay * v(1) + 2.0 * std::real(std::conj(m) * d) + src.number;
            dv(2) = -2.0 * lambda * v(2) + 2.0 * m * d + src.anomalous;
            dv(3) = -decay * v(3) + src.commutator;
            return dv;
        };
        y = rk4_step(y, n * dt, dt, rhs);

        MomentState s;
        s.t = (n + 1) * dt;
        s.mean = y(0);
        s.number = y(1).real();
        s.anomalous = y(2);
        s.commutator = y(3).real();
        if (s.number < -kTolMom) {
            throw Error(ErrorKind::UnphysicalState, "negative photon number at t = " + io::format_real(s.t));
        }
        out.push_back(s);
    }
    return out;
}

Complex classical_amplitude(const ResonatorModel& model, const MomentState& s) {
    return std::sqrt(model.gamma.at(0)) * std::conj(s.mean);
}

Complex mean_from_amplitude(const ResonatorModel& model, Complex alpha) {
    const double g0 = model.gamma.at(0);
    if (!(g0 > 0.0)) throw Error(ErrorKind::InvalidArgument, "gamma_0 must be positive");
    return std::conj(alpha) / std::sqrt(g0);
}

double qmfs_check(const ResonatorModel& model) { return model.sum_gamma() - model.sum_kappa(); }

double ase_penalty(const ResonatorModel& model) { return model.tau * model.sum_kappa() / 2.0; }

MomentState discrete_mode_oracle(const ResonatorModel& model, double dt, double t_end,
                                 std::size_t mode_cap) {
    validate(model);
    if (!(dt > 0.0) || dt > model.tau / 200.0) {
        throw Error(ErrorKind::StepTooLarge, "oracle needs dt <= tau/200");
    }
    if (!(t_end > 0.0)) throw Error(ErrorKind::InvalidArgument, "t_end must be positive");

    const std::size_t channels = model.gamma.size();
    const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
    const double requested = static_cast<double>(steps) * static_cast<double>(channels);
    if (requested > static_cast<double>(mode_cap)) {
        throw Error(ErrorKind::MemoryGuard, "oracle would need " + io::format_real(requested) +
                                                " discrete modes (cap " + std::to_string(mode_cap) + ")");
    }

    // Injection coefficients for channel j: annihilation sqrt(gamma_j), creation
    // sqrt(kappa_j) e^{i phi_j}. Both scaled by dt (Euler-Maruyama increment).
    std::vector<Complex> inj_a(channels), inj_c(channels);
    for (std::size_t j = 0; j < channels; ++j) {
        inj_a[j] = dt * std::sqrt(model.gamma[j]);
        if (j >= 1 && j - 1 < model.kappa.size()) {
            inj_c[j] = dt * std::sqrt(model.kappa[j - 1]) * std::exp(kI * model.phi[j - 1]);
        }
    }

    const Complex factor = std::exp(-(kI * model.omega0 + 1.0 / model.tau) * dt);
    Complex coeff_a0{1.0, 0.0};
    std::vector<Complex> ann, cre;  // coefficients of A_m and A_m^dag
    ann.reserve(steps * channels);
    cre.reserve(steps * channels);

    for (std::size_t n = 0; n < steps; ++n) {
        coeff_a0 *= factor;
        for (auto& c : ann) c *= factor;
        for (auto& c : cre) c *= factor;
        // Left-point noise for the step [n dt, (n+1) dt]: evolved by the full
        // step factor to stay consistent with the exact homogeneous map.
        for (std::size_t j = 0; j < channels; ++j) {
            ann.push_back(inj_a[j] * factor);
            cre.push_back(inj_c[j] * factor);
        }
    }

    // Vacuum expectation values with [A_m, A_m^dag] = 1/dt.
    double comm = std::norm(coeff_a0);
    double number = 0.0;
    Complex anom{};
    const double c = 1.0 / dt;
    for (std::size_t m = 0; m < ann.size(); ++m) {
        comm += c * (std::norm(ann[m]) - std::norm(cre[m]));
        number += c * std::norm(cre[m]);
        anom += c * ann[m] * cre[m];
    }

    MomentState s;
    s.t = static_cast<double>(steps) * dt;
    s.mean = 0.0;
    s.number = number;
    s.anomalous = anom;
    s.commutator = comm;
    return s;
}

std::string trajectory_csv(const std::vector<MomentState>& states) {
    std::ostringstream out;
    out << "t,re_mean,im_mean,number,re_anom,im_anom,commutator\n";
    for (const auto& s : states) {
        out << io::format_real(s.t) << ',' << io::format_real(s.mean.real()) << ','
            << io::format_real(s.mean.imag()) << ',' << io::format_real(s.number) << ','
            << io::format_real(s.anomalous.real()) << ',' << io::format_real(s.anomalous.imag()) << ','
            << io::format_real(s.commutator) << '\n';
    }
    return out.str();
}

std::string tbp_csv(const TbpReport& r) {
    std::ostringstream out;
    out << "tbp,total_gamma,total_kappa,residual,classification\n"
        << io::format_real(r.tbp) << ',' << io::format_real(r.total_gamma) << ','
        << io::format_real(r.total_kappa) << ',' << io::format_real(r.constraint_residual) << ','
        << to_string(r.classification) << '\n';
    return out.str();
}

}  // namespace qle::langevin
