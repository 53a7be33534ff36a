#pragma once

#include "conlift/controller.hpp"
#include "conlift/lifting.hpp"
#include "conlift/plant.hpp"

namespace conlift {

/// The value theta1_hat is driven toward in the Lyapunov candidate. With a
/// general xbar2 the drift term enters the derivative scaled by 1/xbar2, so the
/// cancelling target is theta1 / xbar2 (it equals theta1 when xbar2 = 1).
[[nodiscard]] double theta1_adaptation_target(const TrueParameters& truth, const SafeSet& s);

struct LyapunovTerms {
    double tracking = 0.0;        // e1^2 / 2
    double barrier = 0.0;         // vcal(zeta2)
    double p2_penalty = 0.0;      // |theta2| (p2_hat - 1/theta2)^2 / (2 gamma)
    double theta1_penalty = 0.0;  // (target - theta1_hat)^2 / (2 alpha)

    [[nodiscard]] double total() const noexcept {
        return tracking + barrier + p2_penalty + theta1_penalty;
    }
};

/// Term-wise Lyapunov candidate. Reads the true parameters, so it is a
/// diagnostic only. Throws NonFiniteInput on non-finite estimates.
[[nodiscard]] LyapunovTerms lyapunov_terms(const CoordinateFrame& frame,
                                           const AdaptiveController& controller,
                                           const EstimatorState& est,
                                           const TrueParameters& truth);

[[nodiscard]] inline double lyapunov(const CoordinateFrame& frame,
                                     const AdaptiveController& controller,
                                     const EstimatorState& est, const TrueParameters& truth) {
    return lyapunov_terms(frame, controller, est, truth).total();
}

/// -(sqrt(k1) e1 - sqrt(k2) e2)^2 with k2 = 1/k1.
[[nodiscard]] double vdot_analytic(double e1, double e2, const ControllerGains& gains);

}  // namespace conlift
