// Command-line front end: run experiments, emit figure recipes, self-verify.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "catsim/circuits.hpp"
#include "catsim/error.hpp"
#include "catsim/harness/config.hpp"
#include "catsim/harness/experiment.hpp"
#include "catsim/harness/initial_state.hpp"
#include "catsim/harness/recipes.hpp"
#include "catsim/harness/verify.hpp"
#include "catsim/io.hpp"
#include "catsim/oracle.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

void report_error(const char* kind, const std::string& field, const std::string& message) {
    std::cerr << fmt::format("error kind={} field={} message=\"{}\"\n", kind, field.empty() ? "-" : field, message);
}

void print_summary(const std::string& name, const catsim::harness::ExperimentResult& r) {
    const auto& last = r.mean.back();
    std::cout << fmt::format("{}: backend={} n_d={} t={} f={:.6g} fa={:.6g} -> {}\n", name,
                             catsim::to_string(r.backend), r.n_d, last.t, last.f, last.f_a, r.config.output_dir);
}

int cmd_run(const std::string& config_path) {
    std::ifstream in(config_path);
    if (!in) throw catsim::ConfigError("config", "cannot open config file '" + config_path + "'");
    const auto cfg = catsim::harness::parse_config(in);
    catsim::harness::prepare_output_dir(cfg.output_dir);
    const auto result = catsim::harness::run_experiment(cfg);
    catsim::harness::write_outputs(result, cfg.output_dir);
    print_summary(config_path, result);
    return 0;
}

int cmd_recipe(const std::string& figure, const std::string& out, std::uint64_t seed, bool dry_run) {
    const auto batch = catsim::harness::recipe(catsim::harness::parse_figure(figure), out, seed);
    for (const auto& [name, cfg] : batch) {
        catsim::harness::prepare_output_dir(cfg.output_dir);
        std::ofstream(cfg.output_dir + "/config.txt") << catsim::harness::to_text(cfg);
        if (dry_run) {
            std::cout << cfg.output_dir << "/config.txt\n";
            continue;
        }
        const auto result = catsim::harness::run_experiment(cfg);
        catsim::harness::write_outputs(result, cfg.output_dir);
        print_summary(name, result);
    }
    return 0;
}

int cmd_verify(int n_q, std::size_t steps) {
    const auto r = catsim::harness::verify_oracle_equivalence(n_q, steps);
    std::cout << fmt::format("n_q={} steps={} lattice={}x{}\n", n_q, steps, 1u << n_q, 1u << n_q);
    std::cout << fmt::format("max |a_ij|^2 error vs classical map: {:.3g}\n", r.max_probability_error);
    std::cout << fmt::format("max workspace probability:           {:.3g}\n", r.max_workspace_probability);
    std::cout << fmt::format("gates per iteration: toffoli={} cnot={} total={}\n", r.gates.toffoli, r.gates.cnot,
                             r.gates.total);
    std::cout << fmt::format("implemented formula 2*(8*n_q-11) = {}; reference budget 16*n_q-22 = {}; delta = {}\n",
                             r.formula_total, r.reference_total, r.delta_vs_reference());
    std::cout << (r.passed() ? "verify: PASS\n" : "verify: FAIL\n");
    return r.passed() ? 0 : kExitRuntime;
}

int cmd_dump(int n_q) {
    catsim::dump_circuit(std::cout, catsim::build_cat_iteration(catsim::RegisterLayout(n_q)));
    return 0;
}

int cmd_export(int n_q, const std::string& initial, std::uint64_t steps, const std::string& points_out,
               const std::string& pgm_out) {
    const catsim::RegisterLayout layout(n_q);
    const auto n = layout.lattice_size();
    auto points = catsim::harness::load_initial(initial, n_q);
    for (auto& p : points) {
        for (std::uint64_t s = 0; s < steps; ++s) p = catsim::oracle::cat_step(p, n);
    }
    if (!points_out.empty()) {
        std::ofstream f(points_out);
        if (!f) throw catsim::ConfigError("points", "cannot write '" + points_out + "'");
        catsim::io::write_points(f, points);
    }
    if (!pgm_out.empty()) {
        std::ofstream f(pgm_out);
        if (!f) throw catsim::ConfigError("pgm", "cannot write '" + pgm_out + "'");
        catsim::io::write_pgm(f, n, catsim::oracle::LatticeDistribution::uniform(n, points).weights());
    }
    std::cout << fmt::format("{} points after {} steps\n", points.size(), steps);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lattice cat-map quantum simulator and phase-noise experiment harness"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run = app.add_subcommand("run", "Run one experiment from a config file");
    run->add_option("--config", config_path, "Config file (key = value)")->required();

    std::string figure, out = "out";
    std::uint64_t seed = 1;
    bool dry_run = false;
    auto* rec = app.add_subcommand("recipe", "Write and run the config batch for a figure");
    rec->add_option("figure", figure, "fig1-left | fig1-right | fig2")->required();
    rec->add_option("--out", out, "Output root directory");
    rec->add_option("--seed", seed, "Master seed for every config in the batch");
    rec->add_flag("--dry-run", dry_run, "Only write the config files");

    int n_q = 3;
    std::size_t steps = 20;
    auto* ver = app.add_subcommand("verify", "Check the map circuit against the classical lattice map");
    ver->add_option("--nq", n_q, "Qubits per coordinate register")->required();
    ver->add_option("--steps", steps, "Iterations to compare");

    auto* dump = app.add_subcommand("dump-circuit", "Print the gate list of one map iteration");
    dump->add_option("--nq", n_q, "Qubits per coordinate register")->required();

    std::string initial = "smile", points_out, pgm_out;
    std::uint64_t export_steps = 0;
    auto* exp = app.add_subcommand("export-initial", "Export a classical distribution after t exact steps");
    exp->add_option("--nq", n_q, "Qubits per coordinate register")->required();
    exp->add_option("--initial", initial, "smile | point list | .pgm bitmap");
    exp->add_option("--steps", export_steps, "Classical map iterations");
    exp->add_option("--points", points_out, "Write 'i j' point list");
    exp->add_option("--pgm", pgm_out, "Write P2 image of the weights");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run) return cmd_run(config_path);
        if (*rec) return cmd_recipe(figure, out, seed, dry_run);
        if (*ver) return cmd_verify(n_q, steps);
        if (*dump) return cmd_dump(n_q);
        if (*exp) return cmd_export(n_q, initial, export_steps, points_out, pgm_out);
    } catch (const catsim::ConfigError& e) {
        report_error("config", e.field(), e.what());
        return kExitConfig;
    } catch (const catsim::NumericalError& e) {
        report_error("numerical", "", e.what());
        return kExitRuntime;
    } catch (const std::exception& e) {
        report_error("runtime", "", e.what());
        return kExitRuntime;
    }
    return 0;
}
