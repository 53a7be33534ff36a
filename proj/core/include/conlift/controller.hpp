#pragma once

#include "conlift/lifted_dynamics.hpp"
#include "conlift/lifting.hpp"

namespace conlift {

/// Backstepping and adaptation gains. The second backstepping gain is not
/// stored: it is always the reciprocal of k1.
struct ControllerGains {
    double k1 = 1.0;
    double gamma = 1.0;
    double alpha = 1.0;
    int theta2_sign = 1;

    [[nodiscard]] double k2() const noexcept { return 1.0 / k1; }

    /// Throws InvalidParams unless k1, gamma, alpha are finite and positive and
    /// theta2_sign is +-1.
    void validate() const;
};

/// Sign in front of gamma in the p2_hat update. Derived is the one that makes
/// the Lyapunov derivative collapse; Literal reproduces the flipped sign of the
/// worked DC-motor instantiation.
enum class P2LawSign : int { Derived = 1, Literal = -1 };

/// p2_hat estimates 1/theta2; theta1_hat estimates the drift parameter.
struct EstimatorState {
    double p2_hat = 1.0;
    double theta1_hat = 0.0;
};

/// Set point for x1 and its lifted image z1d = xbar1 phi(x1d / xbar1).
class Reference {
public:
    /// Throws DomainViolation unless |x1d| < xbar1 (1 - kDomainGuard).
    Reference(double x1d, const SafeSet& s, const LiftingFamily& family_x1);

    [[nodiscard]] double x1d() const noexcept { return x1d_; }
    [[nodiscard]] double chi1d() const noexcept { return chi1d_; }
    [[nodiscard]] double z1d() const noexcept { return z1d_; }

private:
    double x1d_;
    double chi1d_;
    double z1d_;
};

struct TrackingErrors {
    double e1 = 0.0;
    double e2 = 0.0;
};

struct EstimatorRates {
    double dp2_hat = 0.0;
    double dtheta1_hat = 0.0;
};

struct ControllerOutput {
    TrackingErrors errors;
    double u = 0.0;
    EstimatorRates rates;
};

/// Adaptive backstepping law in lifted coordinates:
///
///     e1 = z1 - z1d,   e2 = Phi psi(zeta2) + k1 e1
///     u  = -xbar2 p2_hat (F2 theta1_hat + Phi k2 e2) / G2
///     p2_hat'     = s gamma sign(theta2) psi(zeta2) (F2 theta1_hat + Phi k2 e2)
///     theta1_hat' = alpha psi(zeta2) F2
///
/// where s is the P2LawSign. Only the controller-facing plant model is
/// visible here.
class AdaptiveController {
public:
    AdaptiveController(LiftedFields fields, ControllerGains gains, Reference reference,
                       P2LawSign p2_sign = P2LawSign::Derived);

    [[nodiscard]] const LiftedFields& fields() const noexcept { return fields_; }
    [[nodiscard]] const ControllerGains& gains() const noexcept { return gains_; }
    [[nodiscard]] const Reference& reference() const noexcept { return reference_; }
    [[nodiscard]] P2LawSign p2_sign() const noexcept { return p2_sign_; }

    [[nodiscard]] TrackingErrors errors(const CoordinateFrame& frame) const;
    [[nodiscard]] double control(const CoordinateFrame& frame, const EstimatorState& est) const;
    [[nodiscard]] EstimatorRates estimator_rates(const CoordinateFrame& frame,
                                                 const EstimatorState& est) const;

    /// All of the above from one evaluation of the lifted fields.
    [[nodiscard]] ControllerOutput evaluate(const CoordinateFrame& frame,
                                            const EstimatorState& est) const;

private:
    LiftedFields fields_;
    ControllerGains gains_;
    Reference reference_;
    P2LawSign p2_sign_;
};

}  // namespace conlift
