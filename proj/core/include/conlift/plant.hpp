#pragma once

#include <functional>
#include <string>
#include <vector>

#include "conlift/lifting.hpp"

namespace conlift {

using ScalarField1 = std::function<double(double)>;
using ScalarField2 = std::function<double(double, double)>;

/// Controller-facing view of a strict-feedback plant
///
///     x1' = g1(x1) x2
///     x2' = f2(x1, x2) theta1 + g2(x1, x2) u theta2
///
/// It carries the structural functions and sign(theta2) only. The parameter
/// values live in Plant and are never reachable from here.
///
/// The callables must be pure; models are shared across threads.
class PlantModel {
public:
    PlantModel(std::string name, ScalarField1 g1, ScalarField2 f2, ScalarField2 g2,
               int theta2_sign);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] double g1(double x1) const { return g1_(x1); }
    [[nodiscard]] double f2(double x1, double x2) const { return f2_(x1, x2); }
    [[nodiscard]] double g2(double x1, double x2) const { return g2_(x1, x2); }
    [[nodiscard]] int theta2_sign() const noexcept { return theta2_sign_; }

private:
    std::string name_;
    ScalarField1 g1_;
    ScalarField2 f2_;
    ScalarField2 g2_;
    int theta2_sign_;
};

/// The unknown parameters. Only simulation oracles and diagnostics read these.
struct TrueParameters {
    double theta1 = 0.0;
    double theta2 = 1.0;
};

class Plant {
public:
    /// Throws InvalidParams if theta2 == 0, a parameter is not finite, or the
    /// model's exported sign disagrees with sign(theta2).
    Plant(PlantModel model, TrueParameters params);

    [[nodiscard]] const PlantModel& model() const noexcept { return model_; }
    [[nodiscard]] const TrueParameters& true_parameters() const noexcept { return params_; }

private:
    PlantModel model_;
    TrueParameters params_;
};

struct StateRate {
    double dx1 = 0.0;
    double dx2 = 0.0;
};

/// (g1(x1) x2, f2(x1,x2) theta1 + g2(x1,x2) u theta2). Throws NonFiniteInput.
StateRate plant_rhs(const Plant& p, State x, double u);

struct DcMotorParams {
    double J = 0.01;   // rotor inertia
    double b = 0.1;    // viscous damping
    double R = 1.0;    // armature resistance
    double Kt = 0.01;  // torque constant
    double Kb = 0.01;  // back-EMF constant

    [[nodiscard]] double theta1() const noexcept { return -(b * R - Kb * Kt) / (J * R); }
    [[nodiscard]] double theta2() const noexcept { return Kt / (J * R); }
};

/// Shaft angle x1 = theta, speed x2 = omega, voltage u = V.
/// Throws InvalidParams if any constant is not positive.
Plant dc_motor(const DcMotorParams& params);

/// x1' = x2, x2' = theta u. Throws InvalidParams if theta == 0.
Plant double_integrator(double theta);

// ----------------------------------------------------------------------------
// Sampled check of the structural assumptions
// ----------------------------------------------------------------------------

struct AssumptionViolation {
    std::string condition;  // e.g. "g2 != 0"
    double x1;
    double x2;
    double value;
};

struct AssumptionReport {
    int grid_n = 0;
    std::vector<AssumptionViolation> violations;
    std::vector<std::string> notes;  // informational, not failures

    [[nodiscard]] bool passed() const noexcept { return violations.empty(); }
};

/// Evaluates f2(x1, 0) == 0, f2 != 0 for x2 != 0, g1 != 0 and g2 != 0 on a
/// grid_n x grid_n grid of interior points of the safe set (an odd grid_n
/// includes the origin). Throws InvalidParams if grid_n < 2.
AssumptionReport check_assumptions(const PlantModel& model, const SafeSet& s, int grid_n);

}  // namespace conlift
