// Command line front end: parse a system, run the analysis pipeline, print a
// report. Exit codes: 0 decisive verdict, 2 inconclusive, 1 bad input.

#include "quadctrl/analyze.hpp"
#include "quadctrl/models.hpp"
#include "quadctrl/sim.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace quadctrl;

RVec parse_vec_arg(const std::string& s) {
    RVec out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) out.push_back(parse_rational(item));
    return out;
}

AnySystem build_model(const std::string& model, const std::string& mu_s,
                      const std::string& sigma_s, const std::string& rho_s,
                      const std::string& beta_s, const std::string& xi_s,
                      const std::vector<std::string>& control_args, bool scale_torques) {
    std::vector<RVec> controls;
    for (const auto& c : control_args) controls.push_back(parse_vec_arg(c));
    if (model == "sprott") {
        if (controls.empty()) throw std::invalid_argument("sprott needs at least one --control");
        return sprott(parse_rational(mu_s), controls);
    }
    if (model == "lorenz") {
        if (controls.empty()) throw std::invalid_argument("lorenz needs at least one --control");
        return lorenz(parse_rational(sigma_s), parse_rational(rho_s), parse_rational(beta_s),
                      controls);
    }
    if (model == "rigid-body") {
        RVec xi = parse_vec_arg(xi_s);
        if (controls.empty()) throw std::invalid_argument("rigid-body needs at least one --control");
        return rigid_body(xi, controls, scale_torques);
    }
    throw std::invalid_argument("unknown model '" + model + "'");
}

int run_examples(bool as_json) {
    auto examples = bundled_examples();
    if (as_json) {
        Json j = Json::array();
        for (const auto& ex : examples) {
            Json e;
            e["name"] = ex.name;
            e["summary"] = ex.summary;
            e["system"] = system_to_json(ex.system);
            j.push_back(e);
        }
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& ex : examples) std::cout << ex.name << "\t" << ex.summary << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Accessibility and small-time local controllability for quadratic systems"};
    app.require_subcommand(1);

    auto* analyze_cmd = app.add_subcommand("analyze", "Analyze a system and print a report");
    std::string spec_path, model, example_name;
    std::string mu = "1", sigma = "10", rho = "28", beta = "8/3", xi = "1,2,3";
    std::vector<std::string> control_args;
    bool scale_torques = false;
    bool use_oracle = false, simulate = false, as_json = false;
    std::size_t oracle_depth = 8;
    std::string mode_arg;
    double tol = 0.0;
    AnalyzeOptions opt;
    std::string endpoints_csv;

    analyze_cmd->add_option("spec", spec_path, "Path to a JSON system spec ('-' for stdin)");
    analyze_cmd->add_option("--model", model, "Built-in family: sprott, lorenz, rigid-body");
    analyze_cmd->add_option("--example", example_name, "Bundled example by name");
    analyze_cmd->add_option("--mu", mu, "Sprott parameter");
    analyze_cmd->add_option("--sigma", sigma, "Lorenz sigma");
    analyze_cmd->add_option("--rho", rho, "Lorenz rho");
    analyze_cmd->add_option("--beta", beta, "Lorenz beta");
    analyze_cmd->add_option("--xi", xi, "Rigid body inertia triple, comma separated");
    analyze_cmd->add_option("--control", control_args,
                            "Control vector, comma separated (repeatable)");
    analyze_cmd->add_flag("--scale-torques", scale_torques,
                          "Divide rigid body torque axes by the inertias");
    analyze_cmd->add_flag("--oracle", use_oracle, "Cross-check the chain with Lie brackets");
    analyze_cmd->add_option("--oracle-depth", oracle_depth, "Maximum bracket length");
    analyze_cmd->add_flag("--simulate", simulate, "Sample a reachable endpoint cloud");
    analyze_cmd->add_option("--horizon", opt.sim_horizon, "Simulation horizon");
    analyze_cmd->add_option("--samples", opt.sim_samples, "Simulation sample count");
    analyze_cmd->add_option("--bound", opt.sim_bound, "Control amplitude bound");
    analyze_cmd->add_option("--segments", opt.sim_segments, "Piecewise-constant segments");
    analyze_cmd->add_option("--seed", opt.sim_seed, "Simulation seed");
    analyze_cmd->add_option("--dt", opt.sim_dt, "Integrator step");
    analyze_cmd->add_option("--endpoints-csv", endpoints_csv,
                            "Write simulated endpoints to a CSV file");
    analyze_cmd->add_option("--mode", mode_arg, "Force arithmetic: rational or float");
    analyze_cmd->add_option("--tol", tol, "Float-mode rank tolerance (0 = automatic)");
    analyze_cmd->add_flag("--json", as_json, "Emit the full JSON report");

    auto* examples_cmd = app.add_subcommand("examples", "List bundled example systems");
    bool examples_json = false;
    examples_cmd->add_flag("--json", examples_json, "Emit examples as JSON");

    CLI11_PARSE(app, argc, argv);

    if (examples_cmd->parsed()) return run_examples(examples_json);

    try {
        AnySystem sys = [&]() -> AnySystem {
            int sources = (!spec_path.empty()) + (!model.empty()) + (!example_name.empty());
            if (sources != 1)
                throw std::invalid_argument(
                    "provide exactly one of: a spec path, --model, or --example");
            if (!model.empty())
                return build_model(model, mu, sigma, rho, beta, xi, control_args, scale_torques);
            if (!example_name.empty()) {
                for (const auto& ex : bundled_examples())
                    if (ex.name == example_name) return ex.system;
                throw std::invalid_argument("no bundled example named '" + example_name + "'");
            }
            if (spec_path == "-") {
                Json spec = Json::parse(std::cin);
                return parse_system_json(spec);
            }
            return parse_system_file(spec_path);
        }();

        if (mode_arg == "rational") {
            if (const auto* d = std::get_if<DSystem>(&sys)) sys = rationalize_system(*d);
        } else if (mode_arg == "float") {
            if (const auto* r = std::get_if<RSystem>(&sys)) sys = to_double_system(*r);
        } else if (!mode_arg.empty()) {
            throw std::invalid_argument("--mode must be rational or float");
        }
        if (tol > 0.0) {
            if (auto* d = std::get_if<DSystem>(&sys)) d->tol = tol;
        }

        opt.oracle = use_oracle;
        opt.oracle_depth = oracle_depth;
        opt.simulate = simulate || !endpoints_csv.empty();

        AnalysisReport report = analyze(sys, opt);

        if (!endpoints_csv.empty()) {
            DSystem dsys = std::holds_alternative<DSystem>(sys)
                               ? std::get<DSystem>(sys)
                               : to_double_system(std::get<RSystem>(sys));
            CloudStats stats = reachable_cloud(dsys, opt.sim_horizon, opt.sim_samples,
                                               opt.sim_bound, opt.sim_segments, opt.sim_seed,
                                               opt.sim_dt);
            std::ofstream out(endpoints_csv);
            if (!out) throw std::invalid_argument("cannot write '" + endpoints_csv + "'");
            for (const auto& x : stats.endpoints) {
                for (std::size_t i = 0; i < x.size(); ++i)
                    out << (i ? "," : "") << x[i];
                out << "\n";
            }
        }

        if (as_json)
            std::cout << report.to_json().dump(2) << "\n";
        else
            std::cout << report.to_text();
        return report.decisive() ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
