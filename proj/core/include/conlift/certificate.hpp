#pragma once

#include <optional>
#include <string>

#include "conlift/simulator.hpp"

namespace conlift {

struct CertificateThresholds {
    double monotone_rel_tol = 1e-6;  // worst V increment relative to max(1, V(0))
    double vdot_tol = 1e-3;          // sup |Vdot_numeric - Vdot_analytic|
    double tracking_tol = 0.02;      // |x1(t_final) - x1d|
    double residual_tol = 1e-2;      // final |e1|, |e2|, |u|, |z2| and rhs residual
    double bound_factor = 10.0;      // sup |estimate| < bound_factor (1 + V(0))

    /// Throws ConfigError unless every threshold is finite and positive.
    void validate() const;
};

/// Trajectory-level numerical stand-in for the stability and safety claims.
struct Certificate {
    bool completed = false;
    std::optional<Failure> failure;

    bool safe_invariance = false;
    std::optional<double> first_violation_time;

    bool lyapunov_monotone = false;
    double worst_v_increment = 0.0;
    double worst_v_increment_time = 0.0;
    double v_initial = 0.0;

    // V(t) <= V(0) and every logged state and estimate in the ball implied by
    // the sublevel set {V <= V(0)}.
    bool level_set_bounded = false;

    bool vdot_identity = false;
    double vdot_identity_error = 0.0;

    bool estimates_bounded = false;
    double sup_abs_p2_hat = 0.0;
    double sup_abs_theta1_hat = 0.0;
    double estimate_bound = 0.0;

    bool tracking = false;
    double tracking_error_final = 0.0;

    bool converged = false;
    double final_abs_e1 = 0.0;
    double final_abs_e2 = 0.0;
    double final_abs_u = 0.0;
    double final_abs_z2 = 0.0;

    bool equilibrium = false;
    double equilibrium_residual = 0.0;

    [[nodiscard]] bool all_pass() const noexcept;
};

[[nodiscard]] Certificate certify(const Trajectory& traj, const SimConfig& cfg,
                                  const CertificateThresholds& thresholds = {});

/// Flat "key = value" report, one entry per line, fixed key order.
[[nodiscard]] std::string format_report(const Certificate& cert);

}  // namespace conlift
