#include "conlift/lyapunov.hpp"

#include <cmath>

#include "conlift/errors.hpp"

namespace conlift {

double theta1_adaptation_target(const TrueParameters& truth, const SafeSet& s) {
    return truth.theta1 / s.xbar2();
}

LyapunovTerms lyapunov_terms(const CoordinateFrame& frame, const AdaptiveController& controller,
                             const EstimatorState& est, const TrueParameters& truth) {
    if (!std::isfinite(est.p2_hat) || !std::isfinite(est.theta1_hat)) {
        throw NonFiniteInput("parameter estimate is not finite");
    }
    const auto& gains = controller.gains();
    const auto& fields = controller.fields();
    const double e1 = frame.z1 - controller.reference().z1d();
    const double p2_err = est.p2_hat - 1.0 / truth.theta2;
    const double th_err = theta1_adaptation_target(truth, fields.safe_set()) - est.theta1_hat;

    LyapunovTerms t;
    t.tracking = 0.5 * e1 * e1;
    t.barrier = fields.families().second->vcal(frame.zeta2);
    t.p2_penalty = 0.5 / gains.gamma * std::abs(truth.theta2) * p2_err * p2_err;
    t.theta1_penalty = 0.5 / gains.alpha * th_err * th_err;
    return t;
}

double vdot_analytic(double e1, double e2, const ControllerGains& gains) {
    const double r = std::sqrt(gains.k1) * e1 - std::sqrt(gains.k2()) * e2;
    return -r * r;
}

}  // namespace conlift
