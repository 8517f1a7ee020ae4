// qle: scenario runner and one-shot tools for resonator time-bandwidth limits.

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qle/errors.hpp"
#include "qle/langevin.hpp"
#include "qle/matrix_io.hpp"
#include "qle/network.hpp"
#include "qle/scattering.hpp"
#include "qle/scenario.hpp"
#include "qle/thermo.hpp"

namespace {

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size()) throw qle::Error(qle::ErrorKind::InvalidArgument, "bad number '" + item + "'");
        out.push_back(v);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum Langevin time-bandwidth toolkit"};
    app.require_subcommand(1);

    std::string config;
    bool check = false;
    std::string out_dir;
    auto* run_cmd = app.add_subcommand("run", "Execute every scenario in a config file");
    run_cmd->add_option("config", config, "Scenario config file")->required();
    run_cmd->add_flag("--check", check, "Turn scenario expectations into pass/fail assertions");
    run_cmd->add_option("--out-dir", out_dir, "Output directory (default: $QLE_OUT_DIR or qle_out)");

    double tau = 1.0, omega0 = 0.0;
    std::string gamma, kappa, phi;
    auto* tbp_cmd = app.add_subcommand("tbp", "Report the time-bandwidth product and constraint residual");
    tbp_cmd->add_option("--tau", tau, "Decay time")->required();
    tbp_cmd->add_option("--gamma", gamma, "Input coupling rates, comma-separated")->required();
    tbp_cmd->add_option("--kappa", kappa, "Bogoliubov rates for channels 1,2,...");
    tbp_cmd->add_option("--phi", phi, "Bogoliubov phases");
    tbp_cmd->add_option("--omega0", omega0, "Resonance frequency");

    std::string matrix_file;
    auto* gauge_cmd = app.add_subcommand("gauge", "Decide time-reversal symmetry of a coupling matrix");
    gauge_cmd->add_option("matrix", matrix_file, "Coupling matrix file")->required();

    auto* dilate_cmd = app.add_subcommand("dilate", "Embed a passive scattering matrix in a unitary one");
    dilate_cmd->add_option("matrix", matrix_file, "Scattering matrix file")->required();

    std::string mode = "oneway", temps = "1,1", caps, out_file;
    double g = 0.1, g_third = 0.0, horizon = 10.0, dt = 0.0;
    auto* thermo_cmd = app.add_subcommand("thermo", "Run a bath network and track entropy");
    thermo_cmd->add_option("--mode", mode, "oneway | reciprocal | threebath")
        ->check(CLI::IsMember({"oneway", "reciprocal", "threebath"}));
    thermo_cmd->add_option("--g", g, "Forward conductance");
    thermo_cmd->add_option("--g-third", g_third, "Third-bath conductance (threebath)");
    thermo_cmd->add_option("--horizon", horizon, "Simulated time");
    thermo_cmd->add_option("--temps", temps, "Initial temperatures");
    thermo_cmd->add_option("--capacities", caps, "Heat capacities");
    thermo_cmd->add_option("--dt", dt, "Time step (default: half the stability limit)");
    thermo_cmd->add_option("--out", out_file, "Write the ledger CSV here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            qle::scenario::RunOptions opts;
            opts.check = check;
            opts.out_dir = qle::scenario::resolve_out_dir(out_dir);
            return qle::scenario::run(qle::scenario::parse_config_file(config), opts, std::cout);
        }
        if (*tbp_cmd) {
            qle::langevin::ResonatorModel m;
            m.tau = tau;
            m.omega0 = omega0;
            m.gamma = parse_list(gamma);
            m.kappa = parse_list(kappa);
            m.phi = parse_list(phi);
            if (m.phi.empty()) m.phi.assign(m.kappa.size(), 0.0);
            std::cout << qle::langevin::tbp_csv(qle::langevin::tbp_report(m));
            return 0;
        }
        if (*gauge_cmd) {
            const auto cm = qle::network::validate_coupling(qle::io::read_matrix_file(matrix_file));
            const auto sol = qle::network::solve_gauge(cm);
            std::cout << "exists,worst_cycle_defect\n"
                      << (sol.exists ? "true" : "false") << ',' << qle::io::format_real(sol.worst_cycle_defect)
                      << '\n';
            if (sol.exists) {
                std::cout << "phases";
                for (double p : sol.phases) std::cout << ' ' << qle::io::format_real(p);
                std::cout << '\n';
            }
            return 0;
        }
        if (*dilate_cmd) {
            const qle::scattering::ScatteringMatrix s(qle::io::read_matrix_file(matrix_file));
            const auto big = qle::scattering::dilate_to_unitary(s);
            qle::io::write_matrix(std::cout, big.entries());
            std::cout << qle::scattering::classification_csv(qle::scattering::classify(big));
            return 0;
        }
        if (*thermo_cmd) {
            namespace th = qle::thermo;
            const auto t = parse_list(temps);
            auto c = parse_list(caps);
            if (c.empty()) c.assign(t.size(), 1.0);
            th::BathSystem sys = [&] {
                if (mode == "threebath") {
                    th::ThreeBathOptions o;
                    o.temperature = t.at(0);
                    o.heat_capacity = c.at(0);
                    return th::three_bath_system(g, g_third, o);
                }
                if (t.size() != 2 || c.size() != 2) {
                    throw qle::Error(qle::ErrorKind::InvalidArgument, "two-bath modes need two temperatures");
                }
                return th::BathSystem({{t[0], c[0]}, {t[1], c[1]}},
                                      {{0, 1, g, mode == "oneway" ? th::LinkMode::OneWay : th::LinkMode::Reciprocal}});
            }();
            const double step = dt > 0.0 ? dt : th::default_step(sys);
            sys = th::run(std::move(sys), step, horizon);
            if (sys.ledger().size() < 2) sys = th::step(std::move(sys), step);
            const auto v = th::detect_violation(sys);
            if (!out_file.empty()) qle::io::write_file_atomic(out_file, th::ledger_csv(sys));
            if (v.violated) {
                std::cout << "SECOND-LAW VIOLATION at t=" << qle::io::format_real(*v.first_violation_time)
                          << " deficit=" << qle::io::format_real(v.max_entropy_deficit) << '\n';
            } else {
                std::cout << "second law respected deficit=" << qle::io::format_real(v.max_entropy_deficit) << '\n';
            }
            return 0;
        }
    } catch (const qle::Error& e) {
        std::cerr << "qle: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "qle: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
