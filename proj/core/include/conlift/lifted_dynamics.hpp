#pragma once

#include "conlift/lifting.hpp"
#include "conlift/plant.hpp"

namespace conlift {

/// Structural vector fields of the plant in lifted coordinates,
///
///     z1' = G1(z1, z2)
///     z2' = F2(z1, z2) theta1 + G2(z1, z2) u theta2
///
/// with G1 = Phi(zeta1) psi(zeta2). Built from the controller-facing model,
/// so the controller can evaluate these without seeing theta1 or theta2.
class LiftedFields {
public:
    LiftedFields(PlantModel model, SafeSet safe_set, FamilyPair families);

    [[nodiscard]] const PlantModel& model() const noexcept { return model_; }
    [[nodiscard]] const SafeSet& safe_set() const noexcept { return safe_set_; }
    [[nodiscard]] const FamilyPair& families() const noexcept { return families_; }

    /// Phi(zeta1) = dphi(psi(zeta1)) g1(xbar1 psi(zeta1)) xbar2.
    /// Throws SingularityDetected if the result is zero or not finite.
    [[nodiscard]] double big_phi(double zeta1) const;

    [[nodiscard]] double g1_lifted(double z1, double z2) const;
    [[nodiscard]] double f2_lifted(double z1, double z2) const;
    /// Throws SingularityDetected if the result is zero or not finite.
    [[nodiscard]] double g2_lifted(double z1, double z2) const;

    [[nodiscard]] CoordinateFrame lift(State x) const { return conlift::lift(x, safe_set_, families_); }
    [[nodiscard]] CoordinateFrame unlift(Lifted z) const {
        return conlift::unlift(z, safe_set_, families_);
    }

private:
    PlantModel model_;
    SafeSet safe_set_;
    FamilyPair families_;
};

struct LiftedRate {
    double dz1 = 0.0;
    double dz2 = 0.0;
};

/// Lifted fields plus the true parameters: the z-coordinate simulation model.
class LiftedDynamics {
public:
    LiftedDynamics(const Plant& plant, SafeSet safe_set, FamilyPair families);

    [[nodiscard]] const LiftedFields& fields() const noexcept { return fields_; }
    [[nodiscard]] const TrueParameters& true_parameters() const noexcept { return params_; }

    /// (G1(z), F2(z) theta1 + G2(z) u theta2).
    [[nodiscard]] LiftedRate lifted_rhs(Lifted z, double u) const;

private:
    LiftedFields fields_;
    TrueParameters params_;
};

}  // namespace conlift
