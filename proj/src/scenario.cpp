#include "qle/scenario.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "qle/errors.hpp"
#include "qle/langevin.hpp"
#include "qle/matrix_io.hpp"
#include "qle/network.hpp"
#include "qle/scattering.hpp"
#include "qle/thermo.hpp"

namespace qle::scenario {

namespace {

enum class Type { Number, Vector, String, Bool };

struct KeySpec {
    const char* key;
    Type type;
    bool required;
};

using Schema = std::vector<KeySpec>;

const Schema& model_keys() {
    static const Schema s{{"tau", Type::Number, true},     {"gamma", Type::Vector, true},
                          {"kappa", Type::Vector, false},  {"phi", Type::Vector, false},
                          {"omega0", Type::Number, false}};
    return s;
}

const Schema& drive_keys() {
    static const Schema s{{"dt", Type::Number, false},        {"t_end", Type::Number, true},
                          {"drive", Type::String, false},     {"amplitude", Type::Number, false},
                          {"detuning", Type::Number, false},  {"chirp_rate", Type::Number, false},
                          {"tolerance", Type::Number, false}};
    return s;
}

Schema schema_for(Kind kind) {
    Schema s{{"kind", Type::String, true}, {"output", Type::String, false}};
    auto add = [&s](const Schema& more) { s.insert(s.end(), more.begin(), more.end()); };
    switch (kind) {
        case Kind::GaugeCheck:
            add({{"matrix", Type::String, true}, {"expect_exists", Type::Bool, false}});
            break;
        case Kind::TbpReport:
            add(model_keys());
            add({{"expect_classification", Type::String, false}, {"expect_tbp", Type::Number, false}});
            break;
        case Kind::ClassicalRun:
            add(model_keys());
            add(drive_keys());
            add({{"alpha0", Type::Vector, false}, {"expect_final_abs", Type::Number, false}});
            break;
        case Kind::MomentRun:
            add(model_keys());
            add(drive_keys());
            add({{"expect_number", Type::Number, false}, {"expect_commutator", Type::Number, false}});
            break;
        case Kind::OracleRun:
            add(model_keys());
            add({{"dt", Type::Number, false}, {"t_end", Type::Number, true}});
            break;
        case Kind::Dilate:
            add({{"matrix", Type::String, true}});
            break;
        case Kind::Closure:
            add({{"matrix", Type::String, true},
                 {"closed_port", Type::Number, true},
                 {"mirror_phase", Type::Number, false},
                 {"samples", Type::Number, false}});
            break;
        case Kind::ThermoRun:
            add({{"mode", Type::String, true},
                 {"g", Type::Number, true},
                 {"g_third", Type::Number, false},
                 {"horizon", Type::Number, true},
                 {"temperatures", Type::Vector, false},
                 {"capacities", Type::Vector, false},
                 {"dt", Type::Number, false},
                 {"expect_violation", Type::Bool, false}});
            break;
    }
    return s;
}

Kind parse_kind(const std::string& name, int line) {
    static const std::pair<const char*, Kind> table[] = {
        {"GaugeCheck", Kind::GaugeCheck}, {"TbpReport", Kind::TbpReport}, {"ClassicalRun", Kind::ClassicalRun},
        {"MomentRun", Kind::MomentRun},   {"OracleRun", Kind::OracleRun}, {"Dilate", Kind::Dilate},
        {"Closure", Kind::Closure},       {"ThermoRun", Kind::ThermoRun}};
    for (const auto& [n, k] : table) {
        if (name == n) return k;
    }
    throw Error(ErrorKind::ValidationError, "line " + std::to_string(line) + ": unknown kind '" + name + "'");
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

bool parse_number(const std::string& text, double& out) {
    if (text.empty()) return false;
    char* end = nullptr;
    out = std::strtod(text.c_str(), &end);
    return end == text.c_str() + text.size() && std::isfinite(out);
}

[[noreturn]] void ill_typed(const std::string& section, const std::string& key, const char* expected,
                            int line) {
    throw Error(ErrorKind::ValidationError, "scenario '" + section + "' line " + std::to_string(line) +
                                                ": key '" + key + "' must be " + expected);
}

Value convert(const std::string& section, const std::string& key, const std::string& raw, Type type,
              int line) {
    switch (type) {
        case Type::Number: {
            double v = 0.0;
            if (!parse_number(raw, v)) ill_typed(section, key, "a number", line);
            return v;
        }
        case Type::Vector: {
            std::vector<double> v;
            std::stringstream ss(raw);
            std::string item;
            while (std::getline(ss, item, ',')) {
                double x = 0.0;
                if (!parse_number(trim(item), x)) ill_typed(section, key, "a comma-separated list of numbers", line);
                v.push_back(x);
            }
            if (raw.empty()) ill_typed(section, key, "a comma-separated list of numbers", line);
            return v;
        }
        case Type::String:
            if (raw.empty()) ill_typed(section, key, "a non-empty string", line);
            return raw;
        case Type::Bool:
            if (raw == "true" || raw == "1") return true;
            if (raw == "false" || raw == "0") return false;
            ill_typed(section, key, "true or false", line);
    }
    return raw;
}

struct PendingSection {
    std::string name;
    int line = 0;
    std::vector<std::tuple<std::string, std::string, int>> entries;  // key, raw value, line
};

Scenario finish(const PendingSection& sec, const std::filesystem::path& base_dir) {
    std::string kind_raw;
    int kind_line = sec.line;
    for (const auto& [k, v, l] : sec.entries) {
        if (k == "kind") {
            kind_raw = v;
            kind_line = l;
        }
    }
    if (kind_raw.empty()) {
        throw Error(ErrorKind::ValidationError, "scenario '" + sec.name + "': missing required key 'kind'");
    }

    Scenario s;
    s.name = sec.name;
    s.line = sec.line;
    s.kind = parse_kind(kind_raw, kind_line);
    const Schema schema = schema_for(s.kind);

    for (const auto& [key, raw, line] : sec.entries) {
        const KeySpec* spec = nullptr;
        for (const auto& ks : schema) {
            if (key == ks.key) spec = &ks;
        }
        if (!spec) {
            throw Error(ErrorKind::ValidationError, "scenario '" + sec.name + "' line " + std::to_string(line) +
                                                        ": unknown key '" + key + "' for kind " + kind_raw);
        }
        if (s.parameters.count(key)) {
            throw Error(ErrorKind::ValidationError, "scenario '" + sec.name + "' line " + std::to_string(line) +
                                                        ": duplicate key '" + key + "'");
        }
        Value v = convert(sec.name, key, raw, spec->type, line);
        if (key == "matrix" && !base_dir.empty()) {
            std::filesystem::path p(std::get<std::string>(v));
            if (p.is_relative()) v = (base_dir / p).string();
        }
        s.parameters.emplace(key, std::move(v));
    }
    for (const auto& ks : schema) {
        if (ks.required && !s.parameters.count(ks.key)) {
            throw Error(ErrorKind::ValidationError,
                        "scenario '" + sec.name + "': missing required key '" + ks.key + "'");
        }
    }
    // Bogoliubov couplings need their phases.
    if (s.has("kappa") != s.has("phi")) {
        throw Error(ErrorKind::ValidationError, "scenario '" + sec.name + "': missing required key '" +
                                                    (s.has("kappa") ? "phi" : "kappa") + "'");
    }
    if (s.has("kappa") && s.vector("kappa").size() != s.vector("phi").size()) {
        throw Error(ErrorKind::ValidationError, "scenario '" + sec.name + "': key 'phi' must match 'kappa' in length");
    }

    if (s.kind != Kind::TbpReport && s.kind != Kind::GaugeCheck) {
        s.output_path = s.has("output") ? s.text("output") : s.name + ".csv";
    } else if (s.has("output")) {
        s.output_path = s.text("output");
    }
    return s;
}

}  // namespace

const char* to_string(Kind k) noexcept {
    switch (k) {
        case Kind::GaugeCheck: return "GaugeCheck";
        case Kind::TbpReport: return "TbpReport";
        case Kind::ClassicalRun: return "ClassicalRun";
        case Kind::MomentRun: return "MomentRun";
        case Kind::OracleRun: return "OracleRun";
        case Kind::Dilate: return "Dilate";
        case Kind::Closure: return "Closure";
        case Kind::ThermoRun: return "ThermoRun";
    }
    return "Unknown";
}

double Scenario::number(const std::string& key) const { return std::get<double>(parameters.at(key)); }

double Scenario::number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
}

const std::vector<double>& Scenario::vector(const std::string& key) const {
    return std::get<std::vector<double>>(parameters.at(key));
}

std::vector<double> Scenario::vector_or(const std::string& key, std::vector<double> fallback) const {
    return has(key) ? vector(key) : fallback;
}

const std::string& Scenario::text(const std::string& key) const {
    return std::get<std::string>(parameters.at(key));
}

bool Scenario::flag(const std::string& key) const { return std::get<bool>(parameters.at(key)); }

std::vector<Scenario> parse_config(std::string_view text, const std::filesystem::path& base_dir) {
    std::vector<PendingSection> sections;
    std::istringstream in{std::string(text)};
    std::string raw_line;
    int line_no = 0;
    while (std::getline(in, raw_line)) {
        ++line_no;
        std::string line = raw_line;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            constexpr std::string_view prefix = "[scenario.";
            if (line.back() != ']' || line.rfind(prefix, 0) != 0 || line.size() <= prefix.size() + 1) {
                throw Error(ErrorKind::ParseError,
                            "line " + std::to_string(line_no) + ": expected [scenario.<name>] header");
            }
            const std::string name = line.substr(prefix.size(), line.size() - prefix.size() - 1);
            for (const auto& sec : sections) {
                if (sec.name == name) {
                    throw Error(ErrorKind::ParseError,
                                "line " + std::to_string(line_no) + ": duplicate scenario '" + name + "'");
                }
            }
            sections.push_back({name, line_no, {}});
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected key = value");
        }
        if (sections.empty()) {
            throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": key outside any section");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": empty key");
        sections.back().entries.emplace_back(key, value, line_no);
    }

    std::vector<Scenario> out;
    out.reserve(sections.size());
    for (const auto& sec : sections) out.push_back(finish(sec, base_dir));
    return out;
}

std::vector<Scenario> parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.parent_path());
}

std::filesystem::path resolve_out_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("QLE_OUT_DIR"); env && *env) return env;
    return "qle_out";
}

namespace {

langevin::ResonatorModel model_from(const Scenario& s) {
    langevin::ResonatorModel m;
    m.tau = s.number("tau");
    m.omega0 = s.number_or("omega0", 0.0);
    m.gamma = s.vector("gamma");
    m.kappa = s.vector_or("kappa", {});
    m.phi = s.vector_or("phi", {});
    return m;
}

langevin::ClassicalDrive drive_from(const Scenario& s, const langevin::ResonatorModel& m, double dt,
                                    std::size_t count) {
    const std::string kind = s.has("drive") ? s.text("drive") : "none";
    const double amp = s.number_or("amplitude", 1.0);
    const double freq = m.omega0 + s.number_or("detuning", 0.0);
    if (kind == "none") return {{}, dt};
    if (kind == "constant") return langevin::constant_drive(amp, dt, count);
    if (kind == "tone") return langevin::tone_drive(amp, freq, dt, count);
    if (kind == "chirp") return langevin::chirp_drive(amp, freq, s.number_or("chirp_rate", 0.0), dt, count);
    throw Error(ErrorKind::ValidationError, "scenario '" + s.name + "': drive must be none|constant|tone|chirp");
}

std::string fixed3(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

void write_output(const Scenario& s, const RunOptions& opts, const std::string& contents) {
    if (s.output_path.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(opts.out_dir, ec);
    if (ec) throw Error(ErrorKind::IoError, "cannot create " + opts.out_dir.string() + ": " + ec.message());
    io::write_file_atomic(opts.out_dir / s.output_path, contents);
}

void expect(ScenarioResult& r, bool ok, const std::string& what) {
    if (!ok) {
        r.check_passed = false;
        r.check_failures.push_back(what);
    }
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

ScenarioResult run_tbp(const Scenario& s, const RunOptions& opts) {
    const auto model = model_from(s);
    const auto rep = langevin::tbp_report(model);
    ScenarioResult r{s.name, std::string(langevin::to_string(rep.classification)) + " tbp=" + fixed3(rep.tbp)};
    write_output(s, opts, langevin::tbp_csv(rep));
    if (s.has("expect_classification")) {
        expect(r, s.text("expect_classification") == langevin::to_string(rep.classification),
               "classification " + std::string(langevin::to_string(rep.classification)) + " != " +
                   s.text("expect_classification"));
    }
    if (s.has("expect_tbp")) {
        expect(r, close(rep.tbp, s.number("expect_tbp"), 1e-9), "tbp " + io::format_real(rep.tbp));
    }
    return r;
}

ScenarioResult run_classical(const Scenario& s, const RunOptions& opts) {
    const auto model = model_from(s);
    const double dt = s.number_or("dt", model.tau / 1000.0);
    const auto count = static_cast<std::size_t>(std::llround(s.number("t_end") / dt)) + 1;
    auto drive = drive_from(s, model, dt, count);
    if (drive.samples.empty()) drive.samples.assign(count, Complex{});
    const auto a0v = s.vector_or("alpha0", {0.0, 0.0});
    const Complex alpha0(a0v.size() > 0 ? a0v[0] : 0.0, a0v.size() > 1 ? a0v[1] : 0.0);
    const auto alpha = langevin::integrate_classical(model, drive, alpha0);

    std::ostringstream csv;
    csv << "t,re_alpha,im_alpha\n";
    for (std::size_t n = 0; n < alpha.size(); ++n) {
        csv << io::format_real(static_cast<double>(n) * dt) << ',' << io::format_real(alpha[n].real()) << ','
            << io::format_real(alpha[n].imag()) << '\n';
    }
    write_output(s, opts, csv.str());

    const double final_abs = std::abs(alpha.back());
    ScenarioResult r{s.name, "ClassicalRun |alpha(t_end)|=" + fixed3(final_abs)};
    if (s.has("expect_final_abs")) {
        const double tol = s.number_or("tolerance", 1e-6);
        expect(r, close(final_abs, s.number("expect_final_abs"), tol * std::max(1.0, final_abs)),
               "|alpha| " + io::format_real(final_abs));
    }
    return r;
}

ScenarioResult run_moments(const Scenario& s, const RunOptions& opts) {
    const auto model = model_from(s);
    const double dt = s.number_or("dt", model.tau / 1000.0);
    const double t_end = s.number("t_end");
    const auto count = static_cast<std::size_t>(std::llround(t_end / dt)) + 1;
    const auto drive = drive_from(s, model, dt, count);
    const auto traj = langevin::propagate_moments(model, drive, langevin::MomentState::vacuum(), t_end);
    write_output(s, opts, langevin::trajectory_csv(traj));

    const auto& last = traj.back();
    const auto rep = langevin::tbp_report(model);
    ScenarioResult r{s.name, std::string(langevin::to_string(rep.classification)) +
                                 " commutator=" + fixed3(last.commutator) + " number=" + fixed3(last.number)};
    const double tol = s.number_or("tolerance", 1e-6);
    double worst = 0.0;
    for (const auto& st : traj) {
        worst = std::max(worst, std::abs(st.commutator - langevin::commutator_analytic(model, st.t)));
    }
    expect(r, worst <= 1e-8, "commutator departs from closed form by " + io::format_real(worst));
    if (s.has("expect_number")) {
        expect(r, close(last.number, s.number("expect_number"), tol), "number " + io::format_real(last.number));
    }
    if (s.has("expect_commutator")) {
        expect(r, close(last.commutator, s.number("expect_commutator"), tol),
               "commutator " + io::format_real(last.commutator));
    }
    return r;
}

ScenarioResult run_oracle(const Scenario& s, const RunOptions& opts) {
    const auto model = model_from(s);
    const double dt = s.number_or("dt", model.tau / 400.0);
    const double t_end = s.number("t_end");
    const auto oracle = langevin::discrete_mode_oracle(model, dt, t_end);
    const auto traj = langevin::propagate_moments(model, {{}, model.tau / 1000.0},
                                                  langevin::MomentState::vacuum(), oracle.t);
    const auto& ode = traj.back();

    std::ostringstream csv;
    csv << "source,t,number,re_anom,im_anom,commutator\n";
    for (const auto& [label, st] : {std::pair{"oracle", oracle}, std::pair{"moments", ode}}) {
        csv << label << ',' << io::format_real(st.t) << ',' << io::format_real(st.number) << ','
            << io::format_real(st.anomalous.real()) << ',' << io::format_real(st.anomalous.imag()) << ','
            << io::format_real(st.commutator) << '\n';
    }
    write_output(s, opts, csv.str());

    ScenarioResult r{s.name, "OracleRun number=" + fixed3(oracle.number) + " commutator=" + fixed3(oracle.commutator)};
    const double tol = 5.0 * dt / model.tau;
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
    expect(r, rel(oracle.commutator, ode.commutator) <= tol, "oracle commutator disagrees");
    if (ode.number > 0.0) expect(r, rel(oracle.number, ode.number) <= tol, "oracle number disagrees");
    return r;
}

ScenarioResult run_gauge(const Scenario& s, const RunOptions& opts) {
    const auto g = network::validate_coupling(io::read_matrix_file(s.text("matrix")));
    const auto sol = network::solve_gauge(g);
    std::ostringstream csv;
    csv << "exists,worst_cycle_defect\n" << (sol.exists ? "true" : "false") << ','
        << io::format_real(sol.worst_cycle_defect) << '\n';
    write_output(s, opts, csv.str());
    ScenarioResult r{s.name, std::string(sol.exists ? "TimeReversalSymmetric" : "TimeReversalBroken") +
                                 " defect=" + fixed3(sol.worst_cycle_defect)};
    if (s.has("expect_exists")) {
        expect(r, sol.exists == s.flag("expect_exists"), "gauge existence verdict mismatch");
    }
    return r;
}

ScenarioResult run_dilate(const Scenario& s, const RunOptions& opts) {
    const scattering::ScatteringMatrix sm(io::read_matrix_file(s.text("matrix")));
    const auto big = scattering::dilate_to_unitary(sm);
    std::ostringstream out;
    io::write_matrix(out, big.entries());
    write_output(s, opts, out.str());
    const auto c = scattering::classify(big);
    const auto n = sm.dim();
    ScenarioResult r{s.name, "Dilate ports " + std::to_string(n) + "->" + std::to_string(big.dim()) +
                                 (c.unitary ? " unitary" : " NOT unitary")};
    expect(r, c.unitary, "dilation not unitary");
    expect(r, (big.entries().topLeftCorner(n, n) - sm.entries()).cwiseAbs().maxCoeff() <= 10 * scattering::kTolS,
           "upper-left block differs from input");
    expect(r, big.dim() - n == scattering::defect_rank(sm), "dilation is not minimal");
    return r;
}

ScenarioResult run_closure(const Scenario& s, const RunOptions& opts) {
    const scattering::ScatteringMatrix sm(io::read_matrix_file(s.text("matrix")));
    const double port = s.number("closed_port");
    if (port != std::floor(port) || port < 1) {
        throw Error(ErrorKind::ValidationError, "scenario '" + s.name + "': closed_port must be a port number >= 1");
    }
    std::vector<double> phases;
    if (s.has("mirror_phase")) {
        phases.push_back(s.number("mirror_phase"));
    } else {
        const auto n = static_cast<int>(s.number_or("samples", 64));
        for (int i = 0; i < n; ++i) phases.push_back(2.0 * std::numbers::pi * i / n);
    }
    std::ostringstream csv;
    csv << "mirror_phase,abs_s12,abs_s21\n";
    double worst = 0.0;
    for (double phi : phases) {
        const auto red = scattering::two_port_closure_check(sm, static_cast<Eigen::Index>(port) - 1, phi);
        const double a = std::abs(red(0, 1)), b = std::abs(red(1, 0));
        worst = std::max(worst, std::abs(a - b));
        csv << io::format_real(phi) << ',' << io::format_real(a) << ',' << io::format_real(b) << '\n';
    }
    write_output(s, opts, csv.str());
    ScenarioResult r{s.name, "Closure max||S12|-|S21||=" + io::format_real(worst)};
    expect(r, worst <= scattering::kTolS, "closed two-port magnitudes differ");
    return r;
}

ScenarioResult run_thermo(const Scenario& s, const RunOptions& opts) {
    const std::string mode = s.text("mode");
    const double g = s.number("g");
    const double horizon = s.number("horizon");
    thermo::BathSystem sys = [&] {
        if (mode == "threebath") {
            thermo::ThreeBathOptions o;
            const auto temps = s.vector_or("temperatures", {1.0});
            const auto caps = s.vector_or("capacities", {1.0});
            o.temperature = temps.front();
            o.heat_capacity = caps.front();
            return thermo::three_bath_system(g, s.number_or("g_third", 0.0), o);
        }
        if (mode != "oneway" && mode != "reciprocal") {
            throw Error(ErrorKind::ValidationError,
                        "scenario '" + s.name + "': mode must be oneway|reciprocal|threebath");
        }
        const auto temps = s.vector_or("temperatures", {1.0, 1.0});
        const auto caps = s.vector_or("capacities", std::vector<double>(temps.size(), 1.0));
        if (temps.size() != 2 || caps.size() != 2) {
            throw Error(ErrorKind::ValidationError, "scenario '" + s.name + "': two-bath modes need two temperatures");
        }
        const auto link_mode = mode == "oneway" ? thermo::LinkMode::OneWay : thermo::LinkMode::Reciprocal;
        return thermo::BathSystem({{temps[0], caps[0]}, {temps[1], caps[1]}}, {{0, 1, g, link_mode}});
    }();
    const double dt = s.number_or("dt", thermo::default_step(sys));
    const double e0 = sys.energy();
    sys = thermo::run(std::move(sys), dt, horizon);
    if (sys.ledger().size() < 2) sys = thermo::step(std::move(sys), dt);
    write_output(s, opts, thermo::ledger_csv(sys));

    const auto v = thermo::detect_violation(sys);
    ScenarioResult r{s.name, v.violated ? "SECOND-LAW VIOLATION at t=" + io::format_real(*v.first_violation_time) +
                                              " deficit=" + io::format_real(v.max_entropy_deficit)
                                        : "second law respected deficit=" + io::format_real(v.max_entropy_deficit)};
    expect(r, std::abs(sys.energy() - e0) <= 1e-10 * std::abs(e0), "energy not conserved");
    if (s.has("expect_violation")) {
        expect(r, v.violated == s.flag("expect_violation"), "violation verdict mismatch");
    }
    return r;
}

}  // namespace

ScenarioResult run_scenario(const Scenario& s, const RunOptions& opts) {
    try {
        switch (s.kind) {
            case Kind::TbpReport: return run_tbp(s, opts);
            case Kind::ClassicalRun: return run_classical(s, opts);
            case Kind::MomentRun: return run_moments(s, opts);
            case Kind::OracleRun: return run_oracle(s, opts);
            case Kind::GaugeCheck: return run_gauge(s, opts);
            case Kind::Dilate: return run_dilate(s, opts);
            case Kind::Closure: return run_closure(s, opts);
            case Kind::ThermoRun: return run_thermo(s, opts);
        }
    } catch (const Error& e) {
        throw Error(e.kind(), "[" + s.name + "] " + e.detail());
    }
    throw Error(ErrorKind::ValidationError, "unhandled scenario kind");
}

int run(const std::vector<Scenario>& scenarios, const RunOptions& opts, std::ostream& out) {
    int status = 0;
    for (const auto& s : scenarios) {
        ScenarioResult r;
        try {
            r = run_scenario(s, opts);
        } catch (const Error& e) {
            out << s.name << ": ERROR " << e.what() << '\n';
            status = 1;
            continue;
        }
        out << r.name << ": " << r.verdict << '\n';
        if (opts.check && !r.check_passed) {
            for (const auto& f : r.check_failures) out << r.name << ": CHECK FAILED " << f << '\n';
            status = 1;
        }
    }
    return status;
}

}  // namespace qle::scenario
