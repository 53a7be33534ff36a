// conlift: experiment driver for the adaptive constraint-lifting controller.
//
//   conlift run <config> [-o DIR]
//   conlift sweep <config> [-o DIR] [-j THREADS]
//   conlift check-assumptions <config>
//   conlift version
//
// Exit codes: 0 success, 2 configuration error, 3 runtime violation.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "conlift/experiment.hpp"
#include "conlift/plant.hpp"
#include "conlift/report_format.hpp"

namespace {

using namespace conlift;

int cmd_run(const std::string& path, const std::string& out_override) {
    const ExperimentConfig cfg = load_experiment(path);
    const ExperimentResult result = run_experiment(cfg);
    const std::filesystem::path dir = out_override.empty() ? cfg.output_dir : std::filesystem::path(out_override);
    write_artifacts(result, cfg, dir);

    const auto& cert = result.certificate;
    if (cert.failure) {
        std::cerr << "simulation aborted at t = " << format_number(cert.failure->time) << ": "
                  << cert.failure->message << '\n';
    }
    std::cout << "samples: " << result.trajectory.samples.size() << '\n'
              << "certificate: " << (cert.all_pass() ? "all pass" : "FAILED") << '\n'
              << "artifacts: " << dir.string() << '\n';
    if (result.adjudication) {
        std::cout << "recommended p2 law sign: "
                  << (result.adjudication->recommended == P2LawSign::Derived ? "derived"
                                                                            : "literal")
                  << '\n';
    }
    return result.exit_code();
}

int cmd_sweep(const std::string& path, const std::string& out_override, unsigned threads) {
    const ExperimentConfig cfg = load_experiment(path);
    const auto rows = run_sweep(cfg, threads);
    const std::filesystem::path dir = out_override.empty() ? cfg.output_dir : std::filesystem::path(out_override);
    std::filesystem::create_directories(dir);
    std::ofstream os(dir / "sweep.csv", std::ios::binary);
    write_sweep_table(rows, *cfg.sweep, os);
    std::size_t ok = 0;
    for (const auto& r : rows) ok += r.status == SweepStatus::Ok;
    std::cout << "rows: " << rows.size() << " (" << ok << " completed)\n"
              << "table: " << (dir / "sweep.csv").string() << '\n';
    return kExitOk;
}

int cmd_check_assumptions(const std::string& path) {
    const ExperimentConfig cfg = load_experiment(path);
    const AssumptionReport rep =
        check_assumptions(cfg.sim.plant.model(), cfg.sim.safe_set, cfg.assumption_grid);
    std::cout << "plant: " << cfg.sim.plant.model().name() << '\n'
              << "grid: " << rep.grid_n << " x " << rep.grid_n << '\n'
              << "result: " << (rep.passed() ? "pass" : "fail") << '\n';
    for (const auto& v : rep.violations) {
        std::cout << "violation: " << v.condition << " at (" << format_number(v.x1) << ", "
                  << format_number(v.x2) << "), value " << format_number(v.value) << '\n';
    }
    for (const auto& n : rep.notes) std::cout << "note: " << n << '\n';
    return rep.passed() ? kExitOk : kExitRuntimeViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive constraint-lifting control: simulation and certification"};
    app.require_subcommand(1);

    std::string config, out;
    unsigned threads = 0;

    auto* run = app.add_subcommand("run", "Simulate one configuration and certify it");
    run->add_option("config", config, "Experiment config file")->required();
    run->add_option("-o,--out", out, "Output directory (overrides output.dir)");

    auto* sweep = app.add_subcommand("sweep", "Run every combination of the [sweep] axes");
    sweep->add_option("config", config, "Experiment config file")->required();
    sweep->add_option("-o,--out", out, "Output directory (overrides output.dir)");
    sweep->add_option("-j,--threads", threads, "Worker threads (0 = hardware)");

    auto* check = app.add_subcommand("check-assumptions",
                                     "Sample the plant's structural assumptions over the safe set");
    check->add_option("config", config, "Experiment config file")->required();

    auto* version = app.add_subcommand("version", "Print the version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfigError;
    }

    try {
        if (*version) {
            std::cout << "conlift " << CONLIFT_VERSION << '\n';
            return kExitOk;
        }
        if (*run) return cmd_run(config, out);
        if (*sweep) return cmd_sweep(config, out, threads);
        if (*check) return cmd_check_assumptions(config);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntimeViolation;
    }
    return kExitOk;
}
