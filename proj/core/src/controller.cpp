#include "conlift/controller.hpp"

#include <cmath>
#include <utility>

#include "conlift/errors.hpp"

namespace conlift {

void ControllerGains::validate() const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(k1)) throw InvalidParams("k1 must be positive");
    if (!positive(gamma)) throw InvalidParams("gamma must be positive");
    if (!positive(alpha)) throw InvalidParams("alpha must be positive");
    if (theta2_sign != 1 && theta2_sign != -1) {
        throw InvalidParams("theta2 sign must be +1 or -1");
    }
}

Reference::Reference(double x1d, const SafeSet& s, const LiftingFamily& family_x1)
    : x1d_(x1d), chi1d_(x1d / s.xbar1()) {
    if (!std::isfinite(x1d)) throw NonFiniteInput("x1d is not finite");
    if (std::abs(chi1d_) >= 1.0 - kDomainGuard) {
        throw DomainViolation("reference x1d must lie strictly inside (-xbar1, xbar1)");
    }
    z1d_ = s.xbar1() * family_x1.phi(chi1d_);
}

AdaptiveController::AdaptiveController(LiftedFields fields, ControllerGains gains,
                                       Reference reference, P2LawSign p2_sign)
    : fields_(std::move(fields)), gains_(gains), reference_(reference), p2_sign_(p2_sign) {
    gains_.validate();
}

TrackingErrors AdaptiveController::errors(const CoordinateFrame& frame) const {
    return evaluate(frame, EstimatorState{}).errors;
}

double AdaptiveController::control(const CoordinateFrame& frame,
                                   const EstimatorState& est) const {
    return evaluate(frame, est).u;
}

EstimatorRates AdaptiveController::estimator_rates(const CoordinateFrame& frame,
                                                   const EstimatorState& est) const {
    return evaluate(frame, est).rates;
}

ControllerOutput AdaptiveController::evaluate(const CoordinateFrame& frame,
                                              const EstimatorState& est) const {
    if (!std::isfinite(est.p2_hat) || !std::isfinite(est.theta1_hat)) {
        throw NonFiniteInput("parameter estimate is not finite");
    }
    const double phi = fields_.big_phi(frame.zeta1);
    const double psi2 = fields_.families().second->psi(frame.zeta2);
    const double f2 = fields_.f2_lifted(frame.z1, frame.z2);
    const double g2 = fields_.g2_lifted(frame.z1, frame.z2);

    ControllerOutput out;
    out.errors.e1 = frame.z1 - reference_.z1d();
    out.errors.e2 = phi * psi2 + gains_.k1 * out.errors.e1;

    // Common factor of the control law and the p2_hat update.
    const double w = f2 * est.theta1_hat + phi * gains_.k2() * out.errors.e2;

    out.u = -fields_.safe_set().xbar2() * est.p2_hat * w / g2;
    out.rates.dp2_hat = static_cast<double>(static_cast<int>(p2_sign_)) * gains_.gamma *
                        static_cast<double>(gains_.theta2_sign) * psi2 * w;
    out.rates.dtheta1_hat = gains_.alpha * psi2 * f2;
    return out;
}

}  // namespace conlift
