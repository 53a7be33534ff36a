#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conlift/certificate.hpp"
#include "conlift/plant.hpp"
#include "conlift/simulator.hpp"

namespace conlift {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitRuntimeViolation = 3;

/// Raw "[section] key = value" content of a configuration file.
using ConfigSections = std::map<std::string, std::map<std::string, std::string>>;

/// One sweep axis: "section.key = v1, v2, ..." in the [sweep] section.
struct SweepAxis {
    std::string section;
    std::string key;
    std::vector<std::string> values;
};

struct ExperimentConfig {
    SimConfig sim;
    CertificateThresholds thresholds;
    std::filesystem::path output_dir = "out";
    bool adjudicate_p2_sign = false;
    int assumption_grid = 21;
    std::optional<std::vector<SweepAxis>> sweep;
    ConfigSections raw;
};

/// Reads and tokenizes an INI-style file. Throws ConfigError.
[[nodiscard]] ConfigSections read_config_sections(const std::filesystem::path& path);
[[nodiscard]] ConfigSections parse_config_sections(const std::string& text);

/// Builds and validates an experiment from raw sections. Unknown sections or
/// keys are rejected. Throws ConfigError.
[[nodiscard]] ExperimentConfig build_experiment(const ConfigSections& raw);

[[nodiscard]] inline ExperimentConfig load_experiment(const std::filesystem::path& path) {
    return build_experiment(read_config_sections(path));
}

struct SignAdjudication {
    Certificate derived;  // +gamma
    Certificate literal;  // -gamma
    P2LawSign recommended = P2LawSign::Derived;
};

/// Runs the configuration once with each p2_hat law sign and recommends the
/// one whose run certifies Lyapunov monotonicity and the Vdot identity.
[[nodiscard]] SignAdjudication adjudicate_p2_sign(const SimConfig& cfg,
                                                  const CertificateThresholds& thresholds);
[[nodiscard]] std::string format_adjudication(const SignAdjudication& a);

struct ExperimentResult {
    Trajectory trajectory;
    Certificate certificate;
    std::optional<SignAdjudication> adjudication;

    [[nodiscard]] int exit_code() const noexcept {
        return certificate.all_pass() ? kExitOk : kExitRuntimeViolation;
    }
};

[[nodiscard]] ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Writes trace.csv, cert.txt, plot_states.csv, plot_estimation_errors.csv
/// (and sign_adjudication.txt when present) into dir.
void write_artifacts(const ExperimentResult& result, const ExperimentConfig& cfg,
                     const std::filesystem::path& dir);

void write_trace_csv(const Trajectory& traj, std::ostream& os);

inline constexpr const char* kTraceHeader =
    "t,x1,x2,z1,z2,e1,e2,u,p2_hat,theta1_hat,V,Vdot_num,Vdot_analytic";

enum class SweepStatus { Ok, InvalidConfig, Aborted };

struct SweepRow {
    std::size_t index = 0;
    std::vector<std::string> values;  // one per axis, in axis order
    SweepStatus status = SweepStatus::Ok;
    std::string message;
    std::optional<Certificate> certificate;
};

/// Cartesian product of the sweep axes over the base configuration, one
/// certified run per combination. Rows come back in lexicographic axis order
/// whatever the thread count. An axis with no values yields no rows.
/// Throws ConfigError if the experiment has no [sweep] section.
[[nodiscard]] std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg,
                                              unsigned threads = 0);

void write_sweep_table(const std::vector<SweepRow>& rows, const std::vector<SweepAxis>& axes,
                       std::ostream& os);

[[nodiscard]] std::string_view to_string(SweepStatus status) noexcept;

}  // namespace conlift
