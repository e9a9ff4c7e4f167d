// fpks: command-line front end.
//
// Exit status: 0 success, 2 invalid input or usage, 3 numerical non-convergence.

#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fpks/fpks.hpp"
#include "report.hpp"

namespace {

using nlohmann::json;
using namespace fpks;

constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

struct RunConfig {
    std::string command;
    std::string family = "uniform-cap";
    double epsilon_input = 0.3;
    bool degrees = false;
    double delta = 0.1;
    std::string direction = "0,0,1";
    std::string set = "peres33";
    std::string set_file;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    std::size_t theta_points = 64;
    std::size_t phi_points = 64;
    double tolerance = 1e-10;
    std::string format = "json";
    std::string outcome = "all";
    std::string state = "+1";
    std::string method = "rotated";
    std::string battery_file;

    double epsilon() const { return degrees ? epsilon_input * std::numbers::pi / 180.0 : epsilon_input; }
    QuadratureSpec quadrature() const { return {theta_points, phi_points, tolerance}; }
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct Output {
    json result;
    Table table;
};

std::string num(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

std::vector<double> parse_reals(const std::string& text, std::size_t expected, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ValidationError(what + ": cannot parse '" + item + "' as a number");
        }
    }
    if (out.size() != expected)
        throw ValidationError(what + " needs " + std::to_string(expected) + " comma-separated numbers");
    return out;
}

UnitVector3 direction_of(const RunConfig& c) {
    const auto v = parse_reals(c.direction, 3, "--direction");
    return UnitVector3::normalized({v[0], v[1], v[2]});
}

/// "+1", "0", "-1" select the S_z eigenstates; "a,b,c" is a real vector in
/// the (+1, 0, -1) basis, normalized here.
ComplexVector3 state_of(const RunConfig& c) {
    if (c.state == "+1" || c.state == "1") return z_basis_state(Outcome::plus);
    if (c.state == "0") return z_basis_state(Outcome::zero);
    if (c.state == "-1") return z_basis_state(Outcome::minus);
    const auto v = parse_reals(c.state, 3, "--state");
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (!(n > 0.0)) throw ValidationError("--state must be nonzero");
    return {Complex(v[0] / n), Complex(v[1] / n), Complex(v[2] / n)};
}

std::vector<Outcome> outcomes_of(const RunConfig& c) {
    if (c.outcome == "all") return {kOutcomes.begin(), kOutcomes.end()};
    try {
        std::size_t used = 0;
        const int v = std::stoi(c.outcome, &used);
        if (used == c.outcome.size()) return {outcome_from_int(v)};
    } catch (const std::logic_error&) {
    }
    throw ValidationError("--outcome must be +1, 0, -1 or all");
}

ErrorDensity density_of(const RunConfig& c) { return make_density(density_kind_from_string(c.family), c.epsilon()); }

KsSet ks_of(const RunConfig& c) { return c.set_file.empty() ? load_ks_set(c.set) : load_ks_set_file(c.set_file); }

void validate(const RunConfig& c) {
    const double eps = c.epsilon();
    if (!(eps > 0.0) || eps > std::numbers::pi) throw ValidationError("epsilon must lie in (0, pi]");
    UnsharpnessTolerance{c.delta};
    if (c.trials < 1) throw ValidationError("--trials must be at least 1");
    c.quadrature().validate();
    density_kind_from_string(c.family);
}

json config_echo(const RunConfig& c) {
    return {{"command", c.command},
            {"family", c.family},
            {"epsilon", c.epsilon()},
            {"epsilon_input", c.epsilon_input},
            {"degrees", c.degrees},
            {"delta", c.delta},
            {"direction", c.direction},
            {"set", c.set},
            {"set_file", c.set_file},
            {"trials", c.trials},
            {"seed", c.seed},
            {"quadrature", report::quadrature(c.quadrature())},
            {"format", c.format},
            {"outcome", c.outcome},
            {"state", c.state},
            {"method", c.method},
            {"battery_file", c.battery_file}};
}

Output cmd_alphas(const RunConfig& c) {
    const ErrorDensity w = density_of(c);
    const AlphaProfile a = alpha_profile(w, c.quadrature());
    Output out;
    out.result = {{"density", report::density(w)}, {"quadrature", report::alphas(a)}};
    out.table.header = {"method", "alpha1", "alpha2", "alpha3", "alpha4"};
    out.table.rows.push_back({"quadrature", num(a.alpha1), num(a.alpha2), num(a.alpha3), num(a.alpha4)});
    if (w.kind() == DensityKind::uniform_cap) {
        const AlphaProfile cf = uniform_cap_alphas(c.epsilon());
        out.result["closed_form"] = report::alphas(cf);
        out.result["max_abs_difference"] =
            std::max({std::abs(a.alpha1 - cf.alpha1), std::abs(a.alpha2 - cf.alpha2),
                      std::abs(a.alpha3 - cf.alpha3), std::abs(a.alpha4 - cf.alpha4)});
        out.table.rows.push_back({"closed-form", num(cf.alpha1), num(cf.alpha2), num(cf.alpha3), num(cf.alpha4)});
    }
    return out;
}

Output cmd_povm(const RunConfig& c) {
    const ErrorDensity w = density_of(c);
    const UnitVector3 n = direction_of(c);
    SpinPovm p = [&] {
        if (c.method == "rotated") return build_povm(n, w, c.quadrature());
        if (c.method == "direct") return build_povm_direct(n, w, c.quadrature());
        throw ValidationError("--method must be rotated or direct");
    }();
    Output out;
    out.result = report::povm(p);
    out.result["method"] = c.method;
    out.table.header = {"outcome", "row", "col", "re", "im"};
    for (Outcome o : kOutcomes)
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t k = 0; k < 3; ++k) {
                const Complex z = p[o].matrix()(r, k);
                out.table.rows.push_back(
                    {report::outcome_key(o), std::to_string(r), std::to_string(k), num(z.real()), num(z.imag())});
            }
    return out;
}

Output cmd_threshold(const RunConfig& c) {
    const DensityKind kind = density_kind_from_string(c.family);
    const CriticalEpsilon ce = critical_epsilon(UnsharpnessTolerance(c.delta), density_family(kind), c.quadrature());
    const double deg = ce.epsilon * 180.0 / std::numbers::pi;
    Output out;
    out.result = {{"family", std::string(to_string(kind))},
                  {"delta", c.delta},
                  {"critical_epsilon", ce.epsilon},
                  {"critical_epsilon_degrees", deg},
                  {"binding_constraint", std::string(to_string(ce.binding))}};
    out.table.header = {"family", "delta", "critical_epsilon", "critical_epsilon_degrees", "binding_constraint"};
    out.table.rows.push_back(
        {std::string(to_string(kind)), num(c.delta), num(ce.epsilon), num(deg), std::string(to_string(ce.binding))});
    return out;
}

Output cmd_colour(const RunConfig& c) {
    const ErrorDensity w = density_of(c);
    const UnitVector3 n = direction_of(c);
    const UnsharpnessTolerance delta(c.delta);
    const AlphaProfile a = alpha_profile(w, c.quadrature());
    const auto rays = eig_hermitian3(spin_operator(n));
    Output out;
    json eigenrays = json::array();
    for (const auto& p : rays) eigenrays.push_back(report::complex_vec(p.vector));
    out.result = {{"density", report::density(w)},
                  {"direction", report::vec(n)},
                  {"delta", c.delta},
                  {"alphas", report::alphas(a)},
                  {"eigenrays", eigenrays},
                  {"hypothesis_ok", hypothesis_check(a, delta)}};
    json per = json::array();
    out.table.header = {"outcome", "eigenray", "eigenvalue", "colour"};
    for (Outcome o : outcomes_of(c)) {
        const TripodColouring t = colour_tripod(n, a, o, delta);
        const auto ev = a.pattern(o);
        per.push_back({{"outcome", report::outcome_key(o)},
                       {"eigenvalues", json::array({ev[0], ev[1], ev[2]})},
                       {"colours", report::colours(t.colours)},
                       {"one_true_two_false", t.one_true_two_false()}});
        for (Outcome r : kOutcomes) {
            const std::size_t k = outcome_index(r);
            out.table.rows.push_back(
                {report::outcome_key(o), report::outcome_key(r), num(ev[k]), std::string(to_string(t.colours[k]))});
        }
    }
    out.result["tripods"] = per;
    return out;
}

Output cmd_ks_check(const RunConfig& c) {
    const KsSet ks = ks_of(c);
    const ColourabilityVerdict v = colourability_search(ks);
    Output out;
    out.result = {{"ks_set", report::ks_summary(ks)}, {"colourability", report::verdict(ks, v)}};
    if (v.assignment) out.result["assignment_verified"] = verify_colouring(ks, *v.assignment);
    out.table.header = {"ray", "colour"};
    if (v.assignment)
        for (std::size_t r = 0; r < ks.size(); ++r)
            out.table.rows.push_back({ks.rays[r].to_string(), std::string(to_string((*v.assignment)[r]))});
    else
        out.table.rows.push_back({"(none)", "unsatisfiable"});
    return out;
}

Output cmd_theorem1(const RunConfig& c) {
    const ErrorDensity w = density_of(c);
    const KsSet ks = ks_of(c);
    Theorem1Options opt;
    opt.quadrature = c.quadrature();
    const Theorem1Report r = theorem1_demonstration(w, UnsharpnessTolerance(c.delta), ks, opt);
    Output out;
    out.result = report::theorem1(ks, r);
    out.result["density"] = report::density(w);
    out.table.header = {"item", "value"};
    out.table.rows = {{"covariance_max_residual", num(r.covariance.max_residual)},
                      {"covariance_passed", r.covariance.passed ? "true" : "false"},
                      {"hypothesis_ok", r.hypothesis_ok ? "true" : "false"},
                      {"tripod_checks", std::to_string(r.tripods.checks)},
                      {"tripod_one_true_two_false", std::to_string(r.tripods.one_true_two_false)},
                      {"satisfiable", r.verdict.satisfiable ? "true" : "false"},
                      {"conclusion", std::string(to_string(r.conclusion))}};
    return out;
}

Output cmd_simulate(const RunConfig& c) {
    const ErrorDensity w = density_of(c);
    const UnitVector3 n = direction_of(c);
    const ComplexVector3 psi = state_of(c);
    const SimulationReport s = run_experiment(psi, n, w, c.trials, c.seed, c.quadrature());
    Output out;
    out.result = report::simulation(s);
    out.result["density"] = report::density(w);
    out.result["direction"] = report::vec(n);
    out.result["state"] = report::complex_vec(psi);
    out.table.header = {"outcome", "count", "frequency", "expected", "z_score"};
    for (Outcome o : kOutcomes) {
        const std::size_t i = outcome_index(o);
        out.table.rows.push_back({report::outcome_key(o), std::to_string(s.counts[i]), num(s.frequencies[i]),
                                  num(s.expected[i]), num(s.z_scores[i])});
    }
    return out;
}

Output cmd_meyer_witness(const RunConfig& c) {
    std::vector<WitnessSample> battery;
    if (c.battery_file.empty()) {
        battery = default_witness_battery();
    } else {
        std::ifstream in(c.battery_file);
        if (!in) throw LookupError("cannot open battery file '" + c.battery_file + "'");
        battery = parse_witness_battery(in);
    }
    const CovarianceViolationReport r = covariance_violation_report(battery);
    Output out;
    out.result = report::witness(r);
    out.table.header = {"direction", "axis", "pi4_image", "pi4_rational", "witness", "pi2_image", "pi2_rational"};
    for (const auto& row : r.rows)
        out.table.rows.push_back({row.sample.direction.to_string(), row.sample.axis.to_string(), to_string(row.image),
                                  row.image_check.rational ? "true" : "false", row.image_check.witness,
                                  to_string(row.control_image), row.control_check.rational ? "true" : "false"});
    return out;
}

Output dispatch(const RunConfig& c) {
    validate(c);
    if (c.command == "alphas") return cmd_alphas(c);
    if (c.command == "povm") return cmd_povm(c);
    if (c.command == "threshold") return cmd_threshold(c);
    if (c.command == "colour") return cmd_colour(c);
    if (c.command == "ks-check") return cmd_ks_check(c);
    if (c.command == "theorem1") return cmd_theorem1(c);
    if (c.command == "simulate") return cmd_simulate(c);
    if (c.command == "meyer-witness") return cmd_meyer_witness(c);
    throw ValidationError("unknown command '" + c.command + "'");
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

void print_csv(std::ostream& os, const Table& t) {
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) os << (k ? "," : "") << csv_field(cells[k]);
        os << '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
}

void print_text(std::ostream& os, const json& j, const std::string& prefix = "") {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) print_text(os, v, prefix.empty() ? k : prefix + "." + k);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array()) && j.size() > 3) {
        for (std::size_t i = 0; i < j.size(); ++i) print_text(os, j[i], prefix + "[" + std::to_string(i) + "]");
    } else {
        os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Unsharp spin-1 observables, KS colourings and misalignment models", "fpks"};
    app.set_version_flag("--version", std::string(kVersion));
    app.fallthrough();
    app.require_subcommand(1, 1);

    app.add_option("--family", cfg.family, "Misalignment density: uniform-cap or truncated-gaussian")
        ->capture_default_str();
    app.add_option("--epsilon", cfg.epsilon_input, "Inaccuracy angle (radians unless --degrees)")
        ->capture_default_str();
    app.add_flag("--degrees", cfg.degrees, "Read --epsilon in degrees");
    app.add_option("--delta", cfg.delta, "Unsharpness tolerance, 0 <= delta < 0.5")->capture_default_str();
    app.add_option("--direction", cfg.direction, "Intended direction x,y,z (normalized)")->capture_default_str();
    app.add_option("--set", cfg.set, "Built-in KS set: peres33, coordinate-triad, demo-colourable, empty")
        ->capture_default_str();
    app.add_option("--set-file", cfg.set_file, "Ray-set file (overrides --set)");
    app.add_option("--trials", cfg.trials, "Monte Carlo trials")->capture_default_str();
    app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    app.add_option("--theta-points", cfg.theta_points, "Initial Gauss-Legendre order in theta")->capture_default_str();
    app.add_option("--phi-points", cfg.phi_points, "Trapezoid points in phi")->capture_default_str();
    app.add_option("--tolerance", cfg.tolerance, "Quadrature convergence tolerance")->capture_default_str();
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    app.add_option("--outcome", cfg.outcome, "colour: +1, 0, -1 or all")->capture_default_str();
    app.add_option("--state", cfg.state, "simulate: +1, 0, -1 (S_z eigenstate) or a,b,c")->capture_default_str();
    app.add_option("--method", cfg.method, "povm: rotated or direct")->capture_default_str();
    app.add_option("--battery-file", cfg.battery_file, "meyer-witness: battery in ray-set format");

    for (const char* name :
         {"alphas", "povm", "threshold", "colour", "ks-check", "theorem1", "simulate", "meyer-witness"})
        app.add_subcommand(name)->callback([&cfg, name] { cfg.command = name; });
    app.get_subcommand("alphas")->description("Eigenvalue profile alpha1..alpha4 of the unsharp effects");
    app.get_subcommand("povm")->description("Effect matrices F(+1), F(0), F(-1) for a direction");
    app.get_subcommand("threshold")->description("Largest epsilon meeting the AT/AF hypothesis for delta");
    app.get_subcommand("colour")->description("AT/AF colours of the eigenrays for each outcome");
    app.get_subcommand("ks-check")->description("Exact colourability search on a KS set");
    app.get_subcommand("theorem1")->description("Hypotheses plus colourability, composed");
    app.get_subcommand("simulate")->description("Misaligned sharp measurements versus the effects");
    app.get_subcommand("meyer-witness")->description("Exact pi/4 rotations of rational directions");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        const Output out = dispatch(cfg);
        if (cfg.format == "csv") {
            print_csv(std::cout, out.table);
        } else {
            json doc{{"tool", {{"name", std::string(kToolName)}, {"version", std::string(kVersion)}}},
                     {"config", config_echo(cfg)},
                     {"result", out.result}};
            if (cfg.format == "json")
                std::cout << doc.dump(2) << '\n';
            else
                print_text(std::cout, doc);
        }
        return 0;
    } catch (const NumericalError& e) {
        std::cerr << "fpks: numerical error: " << e.what() << " (achieved " << e.achieved() << ")\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "fpks: " << e.what() << '\n';
        return kExitInvalid;
    }
}
