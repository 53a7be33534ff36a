#include "conlift/experiment.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "conlift/report_format.hpp"

namespace conlift {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"simulation", {"dt", "t_final", "log_stride"}},
        {"plant", {"model", "J", "b", "R", "Kt", "Kb", "theta"}},
        {"safe_set", {"xbar1", "xbar2"}},
        {"lifting", {"family", "family_x1", "family_x2"}},
        {"controller", {"k1", "gamma", "alpha", "x1d", "p2_law_sign", "theta2_sign"}},
        {"initial", {"x1", "x2", "p2_hat", "theta1_hat"}},
        {"certificate",
         {"monotone_rel_tol", "vdot_tol", "tracking_tol", "residual_tol", "bound_factor"}},
        {"output", {"dir"}},
        {"report", {"adjudicate_p2_sign"}},
        {"assumptions", {"grid_n"}},
        {"sweep", {}},
    };
    return keys;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    if (trim(s).empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

// Typed access to one section with "section.key" in error messages.
class SectionReader {
public:
    SectionReader(const ConfigSections& raw, std::string section)
        : section_(std::move(section)) {
        if (auto it = raw.find(section_); it != raw.end()) values_ = &it->second;
    }

    [[nodiscard]] std::optional<std::string> text(const std::string& key) const {
        if (!values_) return std::nullopt;
        auto it = values_->find(key);
        if (it == values_->end()) return std::nullopt;
        return it->second;
    }

    [[nodiscard]] double number(const std::string& key, std::optional<double> fallback) const {
        auto t = text(key);
        if (!t) {
            if (fallback) return *fallback;
            throw ConfigError("missing required key " + where(key));
        }
        std::string s = trim(*t);
        if (!s.empty() && s.front() == '+') s.erase(0, 1);
        double v = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
            throw ConfigError(where(key) + " = '" + *t + "' is not a finite number");
        }
        return v;
    }

    [[nodiscard]] int integer(const std::string& key, int fallback) const {
        const double v = number(key, static_cast<double>(fallback));
        if (v != std::floor(v) || std::abs(v) > 1e9) {
            throw ConfigError(where(key) + " must be an integer");
        }
        return static_cast<int>(v);
    }

    [[nodiscard]] bool boolean(const std::string& key, bool fallback) const {
        auto t = text(key);
        if (!t) return fallback;
        const std::string s = trim(*t);
        if (s == "true" || s == "1" || s == "yes") return true;
        if (s == "false" || s == "0" || s == "no") return false;
        throw ConfigError(where(key) + " must be true or false");
    }

    [[nodiscard]] std::string where(const std::string& key) const {
        return section_ + "." + key;
    }

private:
    std::string section_;
    const std::map<std::string, std::string>* values_ = nullptr;
};

Plant build_plant(const SectionReader& r) {
    const std::string model = r.text("model").value_or("dc_motor");
    if (model == "dc_motor") {
        const DcMotorParams d;
        return dc_motor({r.number("J", d.J), r.number("b", d.b), r.number("R", d.R),
                         r.number("Kt", d.Kt), r.number("Kb", d.Kb)});
    }
    if (model == "double_integrator") return double_integrator(r.number("theta", std::nullopt));
    throw ConfigError("plant.model '" + model + "' is not one of dc_motor, double_integrator");
}

P2LawSign parse_p2_sign(const SectionReader& r) {
    const std::string s = trim(r.text("p2_law_sign").value_or("derived"));
    if (s == "derived" || s == "+1" || s == "1") return P2LawSign::Derived;
    if (s == "literal" || s == "-1") return P2LawSign::Literal;
    throw ConfigError("controller.p2_law_sign must be derived (+1) or literal (-1)");
}

void check_known(const ConfigSections& raw) {
    const auto& known = known_keys();
    for (const auto& [section, values] : raw) {
        auto it = known.find(section);
        if (it == known.end()) throw ConfigError("unknown section [" + section + "]");
        if (section == "sweep") continue;
        for (const auto& [key, value] : values) {
            if (!it->second.contains(key)) {
                throw ConfigError("unknown key " + section + "." + key);
            }
        }
    }
}

std::vector<SweepAxis> build_sweep(const std::map<std::string, std::string>& values) {
    std::vector<SweepAxis> axes;
    const auto& known = known_keys();
    for (const auto& [name, list] : values) {
        const auto dot = name.find('.');
        if (dot == std::string::npos) {
            throw ConfigError("sweep axis '" + name + "' must be written section.key");
        }
        SweepAxis axis{name.substr(0, dot), name.substr(dot + 1), split_list(list)};
        auto it = known.find(axis.section);
        if (it == known.end() || axis.section == "sweep" || !it->second.contains(axis.key)) {
            throw ConfigError("sweep axis '" + name + "' does not name a known key");
        }
        axes.push_back(std::move(axis));
    }
    return axes;
}

std::ofstream open_output(const std::filesystem::path& p) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + p.string() + " for writing");
    return os;
}

}  // namespace

ConfigSections parse_config_sections(const std::string& text) {
    pt::ptree tree;
    std::istringstream is(text);
    try {
        pt::read_ini(is, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    ConfigSections out;
    for (const auto& [section, child] : tree) {
        if (child.empty()) {
            throw ConfigError("key '" + section + "' appears outside of any [section]");
        }
        auto& dst = out[section];
        for (const auto& [key, value] : child) dst[key] = value.get_value<std::string>();
    }
    return out;
}

ConfigSections read_config_sections(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config_sections(ss.str());
}

ExperimentConfig build_experiment(const ConfigSections& raw) {
    check_known(raw);
    const SectionReader sim(raw, "simulation"), plant(raw, "plant"), box(raw, "safe_set"),
        lifting(raw, "lifting"), ctrl(raw, "controller"), init(raw, "initial"),
        cert(raw, "certificate"), output(raw, "output"), report(raw, "report"),
        assumptions(raw, "assumptions");

    try {
        Plant p = build_plant(plant);
        SafeSet s(box.number("xbar1", std::nullopt), box.number("xbar2", std::nullopt));
        const std::string fam = lifting.text("family").value_or("tanh");
        FamilyPair families(make_family(lifting.text("family_x1").value_or(fam)),
                            make_family(lifting.text("family_x2").value_or(fam)));

        ControllerGains gains{
            .k1 = ctrl.number("k1", 1.0),
            .gamma = ctrl.number("gamma", 1.0),
            .alpha = ctrl.number("alpha", 1.0),
            .theta2_sign = ctrl.integer("theta2_sign", p.model().theta2_sign()),
        };

        ExperimentConfig cfg{
            .sim =
                SimConfig{
                    .plant = std::move(p),
                    .safe_set = s,
                    .families = std::move(families),
                    .gains = gains,
                    .p2_sign = parse_p2_sign(ctrl),
                    .x1d = ctrl.number("x1d", std::nullopt),
                    .x0 = State{init.number("x1", std::nullopt), init.number("x2", std::nullopt)},
                    .est0 = EstimatorState{init.number("p2_hat", 1.0),
                                           init.number("theta1_hat", 0.0)},
                    .dt = sim.number("dt", 1e-3),
                    .t_final = sim.number("t_final", 30.0),
                    .log_stride = sim.integer("log_stride", 1),
                },
            .thresholds = {},
            .output_dir = output.text("dir").value_or("out"),
            .adjudicate_p2_sign = report.boolean("adjudicate_p2_sign", false),
            .assumption_grid = assumptions.integer("grid_n", 21),
            .sweep = std::nullopt,
            .raw = raw,
        };
        const CertificateThresholds d;
        cfg.thresholds = {
            .monotone_rel_tol = cert.number("monotone_rel_tol", d.monotone_rel_tol),
            .vdot_tol = cert.number("vdot_tol", d.vdot_tol),
            .tracking_tol = cert.number("tracking_tol", d.tracking_tol),
            .residual_tol = cert.number("residual_tol", d.residual_tol),
            .bound_factor = cert.number("bound_factor", d.bound_factor),
        };
        cfg.thresholds.validate();
        if (cfg.assumption_grid < 2) throw ConfigError("assumptions.grid_n must be at least 2");
        if (auto it = raw.find("sweep"); it != raw.end()) cfg.sweep = build_sweep(it->second);
        cfg.sim.validate();
        return cfg;
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
}

SignAdjudication adjudicate_p2_sign(const SimConfig& cfg,
                                    const CertificateThresholds& thresholds) {
    SimConfig derived = cfg;
    derived.p2_sign = P2LawSign::Derived;
    SimConfig literal = cfg;
    literal.p2_sign = P2LawSign::Literal;

    SignAdjudication a{certify(run(derived), derived, thresholds),
                       certify(run(literal), literal, thresholds), P2LawSign::Derived};
    auto lyapunov_ok = [](const Certificate& c) {
        return c.completed && c.lyapunov_monotone && c.vdot_identity;
    };
    if (!lyapunov_ok(a.derived) && lyapunov_ok(a.literal)) a.recommended = P2LawSign::Literal;
    return a;
}

std::string format_adjudication(const SignAdjudication& a) {
    std::ostringstream os;
    auto block = [&os](const char* prefix, const Certificate& c) {
        std::istringstream lines(format_report(c));
        for (std::string line; std::getline(lines, line);) os << prefix << line << '\n';
    };
    os << "recommended_p2_law_sign = "
       << (a.recommended == P2LawSign::Derived ? "derived" : "literal") << '\n';
    block("derived.", a.derived);
    block("literal.", a.literal);
    return os.str();
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    ExperimentResult r{run(cfg.sim), {}, std::nullopt};
    r.certificate = certify(r.trajectory, cfg.sim, cfg.thresholds);
    if (cfg.adjudicate_p2_sign) r.adjudication = adjudicate_p2_sign(cfg.sim, cfg.thresholds);
    return r;
}

void write_trace_csv(const Trajectory& traj, std::ostream& os) {
    os << kTraceHeader << '\n';
    for (const auto& s : traj.samples) {
        const double cols[] = {s.t,  s.x1, s.x2,     s.z1,         s.z2, s.e1,         s.e2,
                               s.u,  s.p2_hat, s.theta1_hat, s.V,  s.vdot_numeric, s.vdot_analytic};
        bool first = true;
        for (double v : cols) {
            if (!first) os << ',';
            os << format_number(v);
            first = false;
        }
        os << '\n';
    }
}

void write_artifacts(const ExperimentResult& result, const ExperimentConfig& cfg,
                     const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto& traj = result.trajectory;
    {
        auto os = open_output(dir / "trace.csv");
        write_trace_csv(traj, os);
    }
    {
        auto os = open_output(dir / "cert.txt");
        os << format_report(result.certificate);
    }
    {
        auto os = open_output(dir / "plot_states.csv");
        os << "t,x1,x2,u,x1d,xbar1,xbar2\n";
        for (const auto& s : traj.samples) {
            os << format_number(s.t) << ',' << format_number(s.x1) << ','
               << format_number(s.x2) << ',' << format_number(s.u) << ','
               << format_number(cfg.sim.x1d) << ',' << format_number(cfg.sim.safe_set.xbar1())
               << ',' << format_number(cfg.sim.safe_set.xbar2()) << '\n';
        }
    }
    {
        const auto& truth = cfg.sim.plant.true_parameters();
        auto os = open_output(dir / "plot_estimation_errors.csv");
        os << "t,abs_theta1_error,abs_p2_error,log10_abs_theta1_error,log10_abs_p2_error\n";
        for (const auto& s : traj.samples) {
            const double th = std::abs(s.theta1_hat - truth.theta1);
            const double p2 = std::abs(s.p2_hat - 1.0 / truth.theta2);
            os << format_number(s.t) << ',' << format_number(th) << ',' << format_number(p2)
               << ',' << format_number(std::log10(th)) << ',' << format_number(std::log10(p2))
               << '\n';
        }
    }
    if (result.adjudication) {
        auto os = open_output(dir / "sign_adjudication.txt");
        os << format_adjudication(*result.adjudication);
    }
}

std::string_view to_string(SweepStatus status) noexcept {
    switch (status) {
        case SweepStatus::Ok: return "ok";
        case SweepStatus::InvalidConfig: return "invalid-config";
        case SweepStatus::Aborted: return "aborted";
    }
    return "unknown";
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg, unsigned threads) {
    if (!cfg.sweep) throw ConfigError("no [sweep] section in the configuration");
    const auto& axes = *cfg.sweep;

    std::size_t total = axes.empty() ? 0 : 1;
    for (const auto& a : axes) total *= a.values.size();

    std::vector<SweepRow> rows(total);
    for (std::size_t i = 0; i < total; ++i) {
        rows[i].index = i;
        rows[i].values.resize(axes.size());
        std::size_t rem = i;
        for (std::size_t k = axes.size(); k-- > 0;) {
            rows[i].values[k] = axes[k].values[rem % axes[k].values.size()];
            rem /= axes[k].values.size();
        }
    }

    auto evaluate = [&](SweepRow& row) {
        ConfigSections raw = cfg.raw;
        raw.erase("sweep");
        for (std::size_t k = 0; k < axes.size(); ++k) {
            raw[axes[k].section][axes[k].key] = row.values[k];
        }
        std::optional<ExperimentConfig> rc;
        try {
            rc.emplace(build_experiment(raw));
        } catch (const ConfigError& e) {
            row.status = SweepStatus::InvalidConfig;
            row.message = e.what();
            return;
        }
        const Trajectory traj = run(rc->sim);
        row.certificate = certify(traj, rc->sim, rc->thresholds);
        if (traj.failure) {
            row.status = SweepStatus::Aborted;
            row.message = traj.failure->message;
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(total, 1)));
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < total; i = next++) evaluate(rows[i]);
        });
    }
    pool.clear();
    return rows;
}

void write_sweep_table(const std::vector<SweepRow>& rows, const std::vector<SweepAxis>& axes,
                       std::ostream& os) {
    os << "index";
    for (const auto& a : axes) os << ',' << a.section << '.' << a.key;
    os << ",status,safe,all_pass,tracking_error_final,worst_v_increment,sup_abs_p2_hat,"
          "sup_abs_theta1_hat,message\n";
    for (const auto& r : rows) {
        os << r.index;
        for (const auto& v : r.values) os << ',' << v;
        os << ',' << to_string(r.status);
        if (r.certificate) {
            const auto& c = *r.certificate;
            os << ',' << (c.safe_invariance ? "true" : "false") << ','
               << (c.all_pass() ? "true" : "false") << ',' << format_number(c.tracking_error_final)
               << ',' << format_number(c.worst_v_increment) << ','
               << format_number(c.sup_abs_p2_hat) << ',' << format_number(c.sup_abs_theta1_hat);
        } else {
            os << ",,,,,,";
        }
        std::string msg = r.message;
        for (char& ch : msg) {
            if (ch == ',' || ch == '\n' || ch == '"') ch = ';';
        }
        os << ',' << msg << '\n';
    }
}

}  // namespace conlift
