#pragma once

// Classical heat baths exchanging energy over directed links, with a ledger of
// total entropy S = sum_i C_i ln T_i (k_B = 1). A OneWay link carries the
// Rayleigh-Jeans radiance P = g T_from with no return path; a Reciprocal link
// carries the net flow P = g (T_from - T_to).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace qle::thermo {

struct Bath {
    double temperature = 1.0;
    double heat_capacity = 1.0;
};

enum class LinkMode { OneWay, Reciprocal };

struct Link {
    std::size_t from = 0;
    std::size_t to = 0;
    double conductance = 0.0;
    LinkMode mode = LinkMode::Reciprocal;
};

struct LedgerEntry {
    double t = 0.0;
    std::vector<double> temperatures;
    double entropy = 0.0;
};

class BathSystem {
public:
    /// Throws Error{InvalidArgument} on non-positive temperatures or heat
    /// capacities, negative conductances, or out-of-range link indices.
    BathSystem(std::vector<Bath> baths, std::vector<Link> links);

    const std::vector<Bath>& baths() const noexcept { return baths_; }
    const std::vector<Link>& links() const noexcept { return links_; }
    double time() const noexcept { return t_; }
    double entropy_initial() const noexcept { return entropy_initial_; }
    const std::vector<LedgerEntry>& ledger() const noexcept { return ledger_; }

    double entropy() const;
    double energy() const;  // sum_i C_i T_i

    friend BathSystem step(BathSystem system, double dt);

private:
    std::vector<Bath> baths_;
    std::vector<Link> links_;
    double t_ = 0.0;
    double entropy_initial_ = 0.0;
    std::vector<LedgerEntry> ledger_;
};

/// Explicit Euler transition. Requires dt * sum(g) / min(C) < 0.1.
/// Throws Error{StabilityGuard} or Error{NonPositiveTemperature}.
BathSystem step(BathSystem system, double dt);

/// Repeated step() until `horizon` (rounded to a whole number of steps).
BathSystem run(BathSystem system, double dt, double horizon);

/// Largest stable step: 0.05 * min(C) / sum(g), i.e. half the guard limit.
double default_step(const BathSystem& system);

struct Violation {
    bool violated = false;
    std::optional<double> first_violation_time;
    double max_entropy_deficit = 0.0;
};

double entropy_tolerance(double entropy_initial);

/// Requires at least two ledger entries; throws Error{InvalidArgument} otherwise.
Violation detect_violation(const BathSystem& system);

struct ThreeBathOptions {
    double temperature = 1.0;
    double heat_capacity = 1.0;
    double dt = 0.0;  // 0 selects default_step()
    bool bisect = true;
    double g_third_max = 1000.0;  // upper end of the bisection bracket
    int bisect_iterations = 40;
};

struct ThreeBathReport {
    BathSystem system;
    Violation violation;
    /// Smallest g_third in [0, g_third_max] that keeps the run violation-free,
    /// assuming monotonicity; empty when even g_third_max violates or bisection was off.
    std::optional<double> restoring_g_third;
};

/// OneWay link bath 0 -> bath 1 plus Reciprocal links between each of them and
/// bath 2, all baths starting at the same temperature.
BathSystem three_bath_system(double g_forward, double g_third, const ThreeBathOptions& opts = {});

ThreeBathReport three_bath_restore(double g_forward, double g_third, double horizon,
                                   const ThreeBathOptions& opts = {});

/// Header `t,T_1,...,T_n,S_total,S_deficit`, one row per ledger entry.
std::string ledger_csv(const BathSystem& system);

}  // namespace qle::thermo
