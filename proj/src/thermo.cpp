#include "qle/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qle/errors.hpp"
#include "qle/matrix_io.hpp"

namespace qle::thermo {

namespace {

double total_conductance(const std::vector<Link>& links) {
    double g = 0.0;
    for (const auto& l : links) g += l.conductance;
    return g;
}

double min_capacity(const std::vector<Bath>& baths) {
    double c = std::numeric_limits<double>::infinity();
    for (const auto& b : baths) c = std::min(c, b.heat_capacity);
    return c;
}

double entropy_of(const std::vector<Bath>& baths) {
    double s = 0.0;
    for (const auto& b : baths) s += b.heat_capacity * std::log(b.temperature);
    return s;
}

void check_stable(const std::vector<Bath>& baths, const std::vector<Link>& links, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::InvalidArgument, "dt must be positive");
    if (dt * total_conductance(links) / min_capacity(baths) >= 0.1) {
        throw Error(ErrorKind::StabilityGuard, "dt * sum(g) / min(C) must stay below 0.1");
    }
}

// One Euler update of the temperatures in place. Shared by step() and the
// ledger-free bisection runs so both follow identical arithmetic.
void advance(std::vector<Bath>& baths, const std::vector<Link>& links, double dt,
             std::vector<double>& net) {
    std::fill(net.begin(), net.end(), 0.0);
    for (const auto& l : links) {
        const double t_from = baths[l.from].temperature;
        const double p = l.mode == LinkMode::OneWay ? l.conductance * t_from
                                                    : l.conductance * (t_from - baths[l.to].temperature);
        net[l.from] -= p;
        net[l.to] += p;
    }
    for (std::size_t i = 0; i < baths.size(); ++i) {
        const double next = baths[i].temperature + net[i] * dt / baths[i].heat_capacity;
        if (!(next > 0.0)) {
            throw Error(ErrorKind::NonPositiveTemperature, "bath " + std::to_string(i + 1) +
                                                               " would reach T = " + io::format_real(next));
        }
        baths[i].temperature = next;
    }
}

LedgerEntry snapshot(double t, const std::vector<Bath>& baths) {
    LedgerEntry e;
    e.t = t;
    e.temperatures.reserve(baths.size());
    for (const auto& b : baths) e.temperatures.push_back(b.temperature);
    e.entropy = entropy_of(baths);
    return e;
}

}  // namespace

BathSystem::BathSystem(std::vector<Bath> baths, std::vector<Link> links)
    : baths_(std::move(baths)), links_(std::move(links)) {
    if (baths_.empty()) throw Error(ErrorKind::InvalidArgument, "need at least one bath");
    for (const auto& b : baths_) {
        if (!(b.temperature > 0.0) || !(b.heat_capacity > 0.0)) {
            throw Error(ErrorKind::InvalidArgument, "temperatures and heat capacities must be positive");
        }
    }
    for (const auto& l : links_) {
        if (l.from >= baths_.size() || l.to >= baths_.size() || l.from == l.to) {
            throw Error(ErrorKind::InvalidArgument, "link endpoints must be distinct valid bath indices");
        }
        if (!(l.conductance >= 0.0) || !std::isfinite(l.conductance)) {
            throw Error(ErrorKind::InvalidArgument, "conductances must be non-negative");
        }
    }
    ledger_.push_back(snapshot(0.0, baths_));
    entropy_initial_ = ledger_.front().entropy;
}

double BathSystem::entropy() const { return entropy_of(baths_); }

double BathSystem::energy() const {
    double e = 0.0;
    for (const auto& b : baths_) e += b.heat_capacity * b.temperature;
    return e;
}

BathSystem step(BathSystem system, double dt) {
    check_stable(system.baths_, system.links_, dt);
    std::vector<double> net(system.baths_.size());
    advance(system.baths_, system.links_, dt, net);
    system.t_ += dt;
    system.ledger_.push_back(snapshot(system.t_, system.baths_));
    return system;
}

BathSystem run(BathSystem system, double dt, double horizon) {
    const auto steps = static_cast<long long>(std::llround(horizon / dt));
    for (long long n = 0; n < steps; ++n) system = step(std::move(system), dt);
    return system;
}

double default_step(const BathSystem& system) {
    const double g = total_conductance(system.links());
    if (g == 0.0) return 0.1;
    return 0.05 * min_capacity(system.baths()) / g;
}

double entropy_tolerance(double entropy_initial) { return 1e-12 * std::abs(entropy_initial) + 1e-12; }

Violation detect_violation(const BathSystem& system) {
    const auto& ledger = system.ledger();
    if (ledger.size() < 2) throw Error(ErrorKind::InvalidArgument, "ledger needs at least two entries");
    const double s0 = system.entropy_initial();
    const double tol = entropy_tolerance(s0);

    Violation v;
    for (const auto& e : ledger) {
        const double deficit = s0 - e.entropy;
        v.max_entropy_deficit = std::max(v.max_entropy_deficit, deficit);
        if (deficit > tol && !v.violated) {
            v.violated = true;
            v.first_violation_time = e.t;
        }
    }
    return v;
}

BathSystem three_bath_system(double g_forward, double g_third, const ThreeBathOptions& opts) {
    if (!(g_forward >= 0.0) || !(g_third >= 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "conductances must be non-negative");
    }
    const Bath b{opts.temperature, opts.heat_capacity};
    return BathSystem({b, b, b}, {{0, 1, g_forward, LinkMode::OneWay},
                                  {0, 2, g_third, LinkMode::Reciprocal},
                                  {1, 2, g_third, LinkMode::Reciprocal}});
}

namespace {

// Ledger-free run returning whether the entropy deficit ever exceeds tolerance.
bool violates(double g_forward, double g_third, double horizon, const ThreeBathOptions& opts) {
    BathSystem sys = three_bath_system(g_forward, g_third, opts);
    const double dt = opts.dt > 0.0 ? opts.dt : default_step(sys);
    check_stable(sys.baths(), sys.links(), dt);
    std::vector<Bath> baths = sys.baths();
    std::vector<double> net(baths.size());
    const double s0 = sys.entropy_initial();
    const double tol = entropy_tolerance(s0);
    const auto steps = std::max<long long>(1, std::llround(horizon / dt));
    for (long long n = 0; n < steps; ++n) {
        advance(baths, sys.links(), dt, net);
        if (s0 - entropy_of(baths) > tol) return true;
    }
    return false;
}

}  // namespace

ThreeBathReport three_bath_restore(double g_forward, double g_third, double horizon,
                                   const ThreeBathOptions& opts) {
    if (!(horizon > 0.0)) throw Error(ErrorKind::InvalidArgument, "horizon must be positive");
    BathSystem sys = three_bath_system(g_forward, g_third, opts);
    const double dt = opts.dt > 0.0 ? opts.dt : default_step(sys);
    sys = run(std::move(sys), dt, horizon);
    if (sys.ledger().size() < 2) sys = step(std::move(sys), dt);
    const Violation v = detect_violation(sys);

    std::optional<double> restoring;
    if (opts.bisect) {
        if (!violates(g_forward, 0.0, horizon, opts)) {
            restoring = 0.0;
        } else if (!violates(g_forward, opts.g_third_max, horizon, opts)) {
            double lo = 0.0, hi = opts.g_third_max;
            for (int i = 0; i < opts.bisect_iterations; ++i) {
                const double mid = 0.5 * (lo + hi);
                (violates(g_forward, mid, horizon, opts) ? lo : hi) = mid;
            }
            restoring = hi;
        }
    }
    return {std::move(sys), v, restoring};
}

std::string ledger_csv(const BathSystem& system) {
    std::ostringstream out;
    out << 't';
    for (std::size_t i = 0; i < system.baths().size(); ++i) out << ",T_" << (i + 1);
    out << ",S_total,S_deficit\n";
    const double s0 = system.entropy_initial();
    for (const auto& e : system.ledger()) {
        out << io::format_real(e.t);
        for (double t : e.temperatures) out << ',' << io::format_real(t);
        out << ',' << io::format_real(e.entropy) << ',' << io::format_real(s0 - e.entropy) << '\n';
    }
    return out.str();
}

}  // namespace qle::thermo
