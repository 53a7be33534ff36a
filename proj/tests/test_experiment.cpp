#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "conlift/errors.hpp"
#include "conlift/experiment.hpp"

using namespace conlift;

namespace {

const char* kBase = R"(
# DC motor, short horizon
[simulation]
dt = 1e-3
t_final = 2

[plant]
model = dc_motor

[safe_set]
xbar1 = 2
xbar2 = 1

[controller]
k1 = 1
gamma = 1
alpha = 1
x1d = -1.9

[initial]
x1 = 0
x2 = 0.9
)";

ExperimentConfig parse(const std::string& text) {
    return build_experiment(parse_config_sections(text));
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("conlift_test_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

}  // namespace

TEST(Config, ParsesBaseConfig) {
    const auto cfg = parse(kBase);
    EXPECT_DOUBLE_EQ(cfg.sim.x1d, -1.9);
    EXPECT_DOUBLE_EQ(cfg.sim.x0.x2, 0.9);
    EXPECT_DOUBLE_EQ(cfg.sim.t_final, 2.0);
    EXPECT_DOUBLE_EQ(cfg.sim.plant.true_parameters().theta1, -9.99);
    EXPECT_EQ(cfg.sim.p2_sign, P2LawSign::Derived);
    EXPECT_EQ(cfg.sim.families.first->name(), "tanh");
    EXPECT_FALSE(cfg.sweep.has_value());
    EXPECT_EQ(cfg.output_dir, "out");
}

TEST(Config, OptionalKeys) {
    const auto cfg = parse(std::string(kBase) + R"(
[lifting]
family = algebraic
family_x1 = tanh
[report]
adjudicate_p2_sign = true
[output]
dir = results
)");
    EXPECT_EQ(cfg.sim.families.first->name(), "tanh");
    EXPECT_EQ(cfg.sim.families.second->name(), "algebraic");
    EXPECT_TRUE(cfg.adjudicate_p2_sign);
    EXPECT_EQ(cfg.output_dir, "results");
    auto lit = parse_config_sections(kBase);
    lit["controller"]["p2_law_sign"] = "literal";
    EXPECT_EQ(build_experiment(lit).sim.p2_sign, P2LawSign::Literal);
}

TEST(Config, ZeroInitialP2EstimateIsRejected) {
    auto raw = parse_config_sections(kBase);
    raw["initial"]["p2_hat"] = "0";
    try {
        (void)build_experiment(raw);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("p2_hat"), std::string::npos) << e.what();
    }
}

TEST(Config, InitialStateOutsideSetIsRejected) {
    auto raw = parse_config_sections(kBase);
    raw["initial"]["x2"] = "1.5";
    try {
        (void)build_experiment(raw);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("strictly inside"), std::string::npos) << e.what();
    }
}

TEST(Config, Rejections) {
    auto with = [](const std::string& section, const std::string& key, const std::string& v) {
        auto raw = parse_config_sections(kBase);
        raw[section][key] = v;
        return raw;
    };
    EXPECT_THROW((void)build_experiment(with("controller", "k1", "abc")), ConfigError);
    EXPECT_THROW((void)build_experiment(with("controller", "k1", "0")), ConfigError);
    EXPECT_THROW((void)build_experiment(with("controller", "k3", "1")), ConfigError);
    EXPECT_THROW((void)build_experiment(with("bogus", "k", "1")), ConfigError);
    EXPECT_THROW((void)build_experiment(with("plant", "model", "pendulum")), ConfigError);
    EXPECT_THROW((void)build_experiment(with("plant", "J", "-1")), ConfigError);
    EXPECT_THROW((void)build_experiment(with("lifting", "family", "sigmoid")), ConfigError);
    EXPECT_THROW((void)build_experiment(with("controller", "p2_law_sign", "maybe")), ConfigError);
    EXPECT_THROW((void)build_experiment(with("controller", "theta2_sign", "-1")), ConfigError);
    EXPECT_THROW((void)build_experiment(with("simulation", "log_stride", "1.5")), ConfigError);
    EXPECT_THROW((void)build_experiment(with("certificate", "vdot_tol", "0")), ConfigError);
    EXPECT_THROW((void)build_experiment(with("sweep", "k1", "1,2")), ConfigError);
    EXPECT_THROW((void)build_experiment(with("sweep", "controller.k9", "1,2")), ConfigError);
    auto missing = parse_config_sections(kBase);
    missing["controller"].erase("x1d");
    EXPECT_THROW((void)build_experiment(missing), ConfigError);
    EXPECT_THROW((void)parse_config_sections("k1 = 1\n[controller]\n"), ConfigError);
    EXPECT_THROW((void)parse_config_sections("[controller\n"), ConfigError);
    EXPECT_THROW((void)read_config_sections("/nonexistent/conlift.cfg"), ConfigError);
}

TEST(Experiment, TraceIsDeterministicAndHasHeader) {
    const auto cfg = parse(kBase);
    const auto a = scratch("trace_a"), b = scratch("trace_b");
    write_artifacts(run_experiment(cfg), cfg, a);
    write_artifacts(run_experiment(cfg), cfg, b);
    for (const char* f : {"trace.csv", "cert.txt", "plot_states.csv", "plot_estimation_errors.csv"}) {
        ASSERT_TRUE(std::filesystem::exists(a / f)) << f;
        EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
    }
    const auto trace = slurp(a / "trace.csv");
    EXPECT_EQ(trace.substr(0, trace.find('\n')), kTraceHeader);
    EXPECT_EQ(std::count(trace.begin(), trace.end(), '\n'), 2002);
    EXPECT_FALSE(std::filesystem::exists(a / "sign_adjudication.txt"));
}

TEST(Experiment, ExitCodeFollowsCertificate) {
    const auto r = run_experiment(parse(kBase));
    EXPECT_EQ(r.exit_code(), r.certificate.all_pass() ? kExitOk : kExitRuntimeViolation);
}

TEST(Experiment, AdjudicationReportIsWritten) {
    auto raw = parse_config_sections(kBase);
    raw["report"]["adjudicate_p2_sign"] = "true";
    const auto cfg = build_experiment(raw);
    const auto result = run_experiment(cfg);
    ASSERT_TRUE(result.adjudication.has_value());
    const auto dir = scratch("adjudication");
    write_artifacts(result, cfg, dir);
    const auto text = slurp(dir / "sign_adjudication.txt");
    EXPECT_EQ(text.rfind("recommended_p2_law_sign = ", 0), 0u);
    EXPECT_NE(text.find("derived.lyapunov_monotone = "), std::string::npos);
    EXPECT_NE(text.find("literal.lyapunov_monotone = "), std::string::npos);
}

TEST(Sweep, ThreeGainsGiveThreeRowsInOrder) {
    const auto cfg = parse(std::string(kBase) + "[sweep]\ncontroller.k1 = 0.5, 1, 2\n");
    const auto rows = run_sweep(cfg, 3);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].values[0], "0.5");
    EXPECT_EQ(rows[2].values[0], "2");
    for (const auto& r : rows) EXPECT_EQ(r.status, SweepStatus::Ok) << r.message;
    std::ostringstream os;
    write_sweep_table(rows, *cfg.sweep, os);
    const auto table = os.str();
    EXPECT_EQ(table.substr(0, table.find('\n')),
              "index,controller.k1,status,safe,all_pass,tracking_error_final,worst_v_increment,"
              "sup_abs_p2_hat,sup_abs_theta1_hat,message");
    EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 4);
}

TEST(Sweep, InvalidRowIsIsolated) {
    const auto cfg = parse(std::string(kBase) + "[sweep]\ncontroller.k1 = 1, -1, 2\n");
    const auto rows = run_sweep(cfg, 2);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].status, SweepStatus::Ok);
    EXPECT_EQ(rows[1].status, SweepStatus::InvalidConfig);
    EXPECT_FALSE(rows[1].certificate.has_value());
    EXPECT_EQ(rows[2].status, SweepStatus::Ok);
}

TEST(Sweep, CartesianProductIsLexicographic) {
    const auto cfg = parse(std::string(kBase) +
                           "[sweep]\ncontroller.k1 = 1, 2\ncontroller.gamma = 0.5, 1, 2\n");
    const auto serial = run_sweep(cfg, 1);
    const auto parallel = run_sweep(cfg, 4);
    ASSERT_EQ(serial.size(), 6u);
    // Axes come in key order: controller.gamma before controller.k1.
    EXPECT_EQ(serial[1].values, (std::vector<std::string>{"0.5", "2"}));
    EXPECT_EQ(serial[2].values, (std::vector<std::string>{"1", "1"}));
    for (std::size_t i = 0; i < serial.size(); ++i) {
        EXPECT_EQ(serial[i].values, parallel[i].values);
        EXPECT_EQ(serial[i].certificate->tracking_error_final,
                  parallel[i].certificate->tracking_error_final);
    }
}

TEST(Sweep, EmptyAxisGivesNoRows) {
    const auto cfg = parse(std::string(kBase) + "[sweep]\ncontroller.k1 =\n");
    EXPECT_TRUE(run_sweep(cfg).empty());
    EXPECT_THROW((void)run_sweep(parse(kBase)), ConfigError);
}
