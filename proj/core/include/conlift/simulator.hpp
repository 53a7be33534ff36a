#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conlift/controller.hpp"
#include "conlift/errors.hpp"
#include "conlift/integrator.hpp"
#include "conlift/lifted_dynamics.hpp"
#include "conlift/plant.hpp"

namespace conlift {

/// Closed-loop state: plant state plus the two parameter estimates.
struct AugmentedState {
    double x1 = 0.0;
    double x2 = 0.0;
    double p2_hat = 1.0;
    double theta1_hat = 0.0;

    [[nodiscard]] Vec<4> as_vec() const noexcept { return {x1, x2, p2_hat, theta1_hat}; }
    [[nodiscard]] static AugmentedState from_vec(const Vec<4>& v) noexcept {
        return {v[0], v[1], v[2], v[3]};
    }
    [[nodiscard]] State x() const noexcept { return {x1, x2}; }
    [[nodiscard]] EstimatorState estimates() const noexcept { return {p2_hat, theta1_hat}; }
};

struct SimConfig {
    Plant plant;
    SafeSet safe_set;
    FamilyPair families;
    ControllerGains gains;
    P2LawSign p2_sign = P2LawSign::Derived;
    double x1d = 0.0;
    State x0;
    EstimatorState est0;
    double dt = 1e-3;
    double t_final = 30.0;
    int log_stride = 1;

    /// Throws ConfigError describing the first violated requirement.
    void validate() const;

    [[nodiscard]] long step_count() const;
};

/// DC motor with default constants, safe set (-2,2) x (-1,1), tanh lifting,
/// x(0) = (0, 0.9), x1d = -1.9, k1 = gamma = alpha = 1, p2_hat(0) = 1,
/// theta1_hat(0) = 0, dt = 1e-3, t_final = 30.
[[nodiscard]] SimConfig dc_motor_setpoint_config();

struct Sample {
    double t;
    double x1, x2;
    double chi1, chi2;
    double z1, z2;
    double zeta1, zeta2;
    double e1, e2;
    double u;
    double p2_hat, theta1_hat;
    double V;
    double vdot_analytic;
    double vdot_numeric;
    bool in_safe_set;
};

struct Failure {
    ErrorKind cause;
    double time;
    std::string message;
};

struct Trajectory {
    std::vector<Sample> samples;
    std::optional<Failure> failure;

    [[nodiscard]] bool completed() const noexcept { return !failure.has_value(); }
};

/// Closed-loop vector field in physical coordinates.
class ClosedLoop {
public:
    explicit ClosedLoop(const SimConfig& cfg);

    [[nodiscard]] const AdaptiveController& controller() const noexcept { return controller_; }
    [[nodiscard]] const LiftedDynamics& lifted() const noexcept { return lifted_; }
    [[nodiscard]] const Plant& plant() const noexcept { return plant_; }

    /// Rates of (x1, x2, p2_hat, theta1_hat). Throws DomainViolation when the
    /// state is inside the guard band, plus anything the controller throws.
    [[nodiscard]] AugmentedState rhs(const AugmentedState& s) const;

    /// Rates of (z1, z2, p2_hat, theta1_hat) using the lifted vector field.
    [[nodiscard]] Vec<4> lifted_rhs(const Vec<4>& zs) const;

    [[nodiscard]] Sample observe(double t, const AugmentedState& s) const;
    [[nodiscard]] Sample observe(double t, const CoordinateFrame& frame,
                                 const EstimatorState& est) const;

private:
    Plant plant_;
    LiftedDynamics lifted_;
    AdaptiveController controller_;
};

/// One RK4 step of the augmented system with the controller and estimator
/// rates evaluated at every stage. Throws StepRejected carrying t.
[[nodiscard]] AugmentedState step(const ClosedLoop& loop, double t, const AugmentedState& s,
                                  double dt);

/// Integrates from t = 0 to t_final, logging every log_stride steps. Stops at
/// the first rejected step and keeps the partial trajectory. Throws
/// ConfigError if the configuration is invalid.
[[nodiscard]] Trajectory run(const SimConfig& cfg);

/// The same closed loop integrated in lifted coordinates (z1, z2, p2_hat,
/// theta1_hat) and mapped back for logging. Used to cross-check the lifted
/// vector field against the physical one.
[[nodiscard]] Trajectory run_lifted(const SimConfig& cfg);

}  // namespace conlift
