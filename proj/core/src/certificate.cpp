#include "conlift/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "conlift/lyapunov.hpp"
#include "conlift/report_format.hpp"

namespace conlift {

void CertificateThresholds::validate() const {
    for (double v : {monotone_rel_tol, vdot_tol, tracking_tol, residual_tol, bound_factor}) {
        if (!(std::isfinite(v) && v > 0.0)) {
            throw ConfigError("certificate thresholds must be finite and positive");
        }
    }
}

bool Certificate::all_pass() const noexcept {
    return completed && safe_invariance && lyapunov_monotone && level_set_bounded &&
           vdot_identity && estimates_bounded && tracking && converged && equilibrium;
}

Certificate certify(const Trajectory& traj, const SimConfig& cfg,
                    const CertificateThresholds& thresholds) {
    Certificate c;
    c.completed = traj.completed();
    c.failure = traj.failure;
    const auto& s = traj.samples;
    if (s.empty()) {
        if (traj.failure) c.first_violation_time = traj.failure->time;
        return c;
    }

    // Safety: every sample strictly inside, and no aborted step.
    c.safe_invariance = c.completed;
    for (const auto& smp : s) {
        if (!smp.in_safe_set) {
            c.safe_invariance = false;
            c.first_violation_time = smp.t;
            break;
        }
    }
    if (!c.first_violation_time && traj.failure) c.first_violation_time = traj.failure->time;

    // Lyapunov decrease.
    c.v_initial = s.front().V;
    for (std::size_t i = 1; i < s.size(); ++i) {
        const double inc = s[i].V - s[i - 1].V;
        if (inc > c.worst_v_increment) {
            c.worst_v_increment = inc;
            c.worst_v_increment_time = s[i].t;
        }
    }
    const double v_scale = std::max(1.0, c.v_initial);
    c.lyapunov_monotone = c.worst_v_increment < thresholds.monotone_rel_tol * v_scale;

    // Sublevel-set ball implied by V <= V(0).
    {
        const ClosedLoop loop(cfg);
        const auto& truth = cfg.plant.true_parameters();
        const double v0 = c.v_initial * (1.0 + thresholds.monotone_rel_tol) +
                          thresholds.monotone_rel_tol;
        const double e1_max = std::sqrt(2.0 * v0);
        const double p2_max = std::sqrt(2.0 * cfg.gains.gamma * v0 / std::abs(truth.theta2));
        const double th_max = std::sqrt(2.0 * cfg.gains.alpha * v0);
        const double p2 = 1.0 / truth.theta2;
        const double th = theta1_adaptation_target(truth, cfg.safe_set);
        const auto& fam2 = *cfg.families.second;
        c.level_set_bounded = std::all_of(s.begin(), s.end(), [&](const Sample& smp) {
            return smp.V <= v0 && std::abs(smp.e1) <= e1_max &&
                   fam2.vcal(smp.zeta2) <= v0 && std::abs(smp.p2_hat - p2) <= p2_max &&
                   std::abs(smp.theta1_hat - th) <= th_max;
        });

        const Sample& last = s.back();
        try {
            const AugmentedState rates =
                loop.rhs({last.x1, last.x2, last.p2_hat, last.theta1_hat});
            c.equilibrium_residual =
                std::max({std::abs(rates.x1), std::abs(rates.x2), std::abs(rates.p2_hat),
                          std::abs(rates.theta1_hat)});
        } catch (const Error&) {
            c.equilibrium_residual = std::numeric_limits<double>::infinity();
        }
    }

    for (const auto& smp : s) {
        c.vdot_identity_error =
            std::max(c.vdot_identity_error, std::abs(smp.vdot_numeric - smp.vdot_analytic));
        c.sup_abs_p2_hat = std::max(c.sup_abs_p2_hat, std::abs(smp.p2_hat));
        c.sup_abs_theta1_hat = std::max(c.sup_abs_theta1_hat, std::abs(smp.theta1_hat));
    }
    c.vdot_identity = c.vdot_identity_error < thresholds.vdot_tol;
    c.estimate_bound = thresholds.bound_factor * (1.0 + c.v_initial);
    c.estimates_bounded = std::isfinite(c.sup_abs_p2_hat) &&
                          std::isfinite(c.sup_abs_theta1_hat) &&
                          c.sup_abs_p2_hat < c.estimate_bound &&
                          c.sup_abs_theta1_hat < c.estimate_bound;

    const Sample& last = s.back();
    c.tracking_error_final = std::abs(last.x1 - cfg.x1d);
    c.tracking = c.completed && c.tracking_error_final < thresholds.tracking_tol;
    c.final_abs_e1 = std::abs(last.e1);
    c.final_abs_e2 = std::abs(last.e2);
    c.final_abs_u = std::abs(last.u);
    c.final_abs_z2 = std::abs(last.z2);
    c.converged = c.completed && c.final_abs_e1 < thresholds.residual_tol &&
                  c.final_abs_e2 < thresholds.residual_tol &&
                  c.final_abs_u < thresholds.residual_tol &&
                  c.final_abs_z2 < thresholds.residual_tol;
    c.equilibrium = c.completed && c.equilibrium_residual < thresholds.residual_tol;
    return c;
}

std::string format_report(const Certificate& c) {
    std::ostringstream os;
    auto flag = [](bool b) { return b ? "pass" : "fail"; };
    auto kv = [&os](const char* key, const std::string& value) {
        os << key << " = " << value << '\n';
    };
    kv("all_pass", c.all_pass() ? "true" : "false");
    kv("completed", c.completed ? "true" : "false");
    kv("failure_cause", c.failure ? std::string(to_string(c.failure->cause)) : "none");
    kv("failure_time", c.failure ? format_number(c.failure->time) : "none");
    kv("safe_invariance", flag(c.safe_invariance));
    kv("first_violation_time",
       c.first_violation_time ? format_number(*c.first_violation_time) : "none");
    kv("lyapunov_monotone", flag(c.lyapunov_monotone));
    kv("v_initial", format_number(c.v_initial));
    kv("worst_v_increment", format_number(c.worst_v_increment));
    kv("worst_v_increment_time", format_number(c.worst_v_increment_time));
    kv("level_set_bounded", flag(c.level_set_bounded));
    kv("vdot_identity", flag(c.vdot_identity));
    kv("vdot_identity_error", format_number(c.vdot_identity_error));
    kv("estimates_bounded", flag(c.estimates_bounded));
    kv("sup_abs_p2_hat", format_number(c.sup_abs_p2_hat));
    kv("sup_abs_theta1_hat", format_number(c.sup_abs_theta1_hat));
    kv("estimate_bound", format_number(c.estimate_bound));
    kv("tracking", flag(c.tracking));
    kv("tracking_error_final", format_number(c.tracking_error_final));
    kv("converged", flag(c.converged));
    kv("final_abs_e1", format_number(c.final_abs_e1));
    kv("final_abs_e2", format_number(c.final_abs_e2));
    kv("final_abs_u", format_number(c.final_abs_u));
    kv("final_abs_z2", format_number(c.final_abs_z2));
    kv("equilibrium", flag(c.equilibrium));
    kv("equilibrium_residual", format_number(c.equilibrium_residual));
    return os.str();
}

}  // namespace conlift
