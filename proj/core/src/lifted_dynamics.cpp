#include "conlift/lifted_dynamics.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "conlift/errors.hpp"

namespace conlift {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw NonFiniteInput(std::string(what) + " is not finite");
}

double require_nonsingular(double v, const char* what, double where) {
    if (!std::isfinite(v) || v == 0.0) {
        throw SingularityDetected(std::string(what) + " = " + std::to_string(v) +
                                  " at zeta = " + std::to_string(where));
    }
    return v;
}

}  // namespace

LiftedFields::LiftedFields(PlantModel model, SafeSet safe_set, FamilyPair families)
    : model_(std::move(model)), safe_set_(safe_set), families_(std::move(families)) {}

double LiftedFields::big_phi(double zeta1) const {
    require_finite(zeta1, "zeta1");
    const auto& fam = *families_.first;
    const double chi1 = fam.psi(zeta1);
    const double v = fam.dphi(chi1) * model_.g1(safe_set_.xbar1() * chi1) * safe_set_.xbar2();
    return require_nonsingular(v, "Phi", zeta1);
}

double LiftedFields::g1_lifted(double z1, double z2) const {
    require_finite(z2, "z2");
    return big_phi(z1 / safe_set_.xbar1()) * families_.second->psi(z2 / safe_set_.xbar2());
}

double LiftedFields::f2_lifted(double z1, double z2) const {
    require_finite(z1, "z1");
    require_finite(z2, "z2");
    const double chi1 = families_.first->psi(z1 / safe_set_.xbar1());
    const double chi2 = families_.second->psi(z2 / safe_set_.xbar2());
    const double v = families_.second->dphi(chi2) *
                     model_.f2(safe_set_.xbar1() * chi1, safe_set_.xbar2() * chi2);
    if (!std::isfinite(v)) {
        throw SingularityDetected("F2 is not finite at z2 = " + std::to_string(z2));
    }
    return v;
}

double LiftedFields::g2_lifted(double z1, double z2) const {
    require_finite(z1, "z1");
    require_finite(z2, "z2");
    const double chi1 = families_.first->psi(z1 / safe_set_.xbar1());
    const double chi2 = families_.second->psi(z2 / safe_set_.xbar2());
    const double v = families_.second->dphi(chi2) *
                     model_.g2(safe_set_.xbar1() * chi1, safe_set_.xbar2() * chi2);
    return require_nonsingular(v, "G2", z2 / safe_set_.xbar2());
}

LiftedDynamics::LiftedDynamics(const Plant& plant, SafeSet safe_set, FamilyPair families)
    : fields_(plant.model(), safe_set, std::move(families)), params_(plant.true_parameters()) {}

LiftedRate LiftedDynamics::lifted_rhs(Lifted z, double u) const {
    require_finite(u, "u");
    return {fields_.g1_lifted(z.z1, z.z2),
            fields_.f2_lifted(z.z1, z.z2) * params_.theta1 +
                fields_.g2_lifted(z.z1, z.z2) * u * params_.theta2};
}

}  // namespace conlift
