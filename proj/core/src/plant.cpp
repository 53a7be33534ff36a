#include "conlift/plant.hpp"

#include <cmath>
#include <utility>

#include "conlift/errors.hpp"

namespace conlift {

PlantModel::PlantModel(std::string name, ScalarField1 g1, ScalarField2 f2, ScalarField2 g2,
                       int theta2_sign)
    : name_(std::move(name)),
      g1_(std::move(g1)),
      f2_(std::move(f2)),
      g2_(std::move(g2)),
      theta2_sign_(theta2_sign) {
    if (!g1_ || !f2_ || !g2_) throw InvalidParams("plant functions must be callable");
    if (theta2_sign_ != 1 && theta2_sign_ != -1) {
        throw InvalidParams("theta2 sign must be +1 or -1");
    }
}

Plant::Plant(PlantModel model, TrueParameters params)
    : model_(std::move(model)), params_(params) {
    if (!std::isfinite(params_.theta1) || !std::isfinite(params_.theta2)) {
        throw InvalidParams("plant parameters must be finite");
    }
    if (params_.theta2 == 0.0) throw InvalidParams("theta2 must be nonzero");
    const int sign = params_.theta2 > 0.0 ? 1 : -1;
    if (sign != model_.theta2_sign()) {
        throw InvalidParams("exported theta2 sign disagrees with theta2");
    }
}

StateRate plant_rhs(const Plant& p, State x, double u) {
    if (!std::isfinite(x.x1) || !std::isfinite(x.x2) || !std::isfinite(u)) {
        throw NonFiniteInput("plant_rhs: non-finite state or input");
    }
    const auto& m = p.model();
    const auto& th = p.true_parameters();
    return {m.g1(x.x1) * x.x2, m.f2(x.x1, x.x2) * th.theta1 + m.g2(x.x1, x.x2) * u * th.theta2};
}

Plant dc_motor(const DcMotorParams& params) {
    for (double v : {params.J, params.b, params.R, params.Kt, params.Kb}) {
        if (!(std::isfinite(v) && v > 0.0)) {
            throw InvalidParams("DC motor constants must be positive");
        }
    }
    PlantModel model(
        "dc_motor", [](double) { return 1.0; }, [](double, double x2) { return x2; },
        [](double, double) { return 1.0; }, +1);
    return Plant(std::move(model), {params.theta1(), params.theta2()});
}

Plant double_integrator(double theta) {
    if (!std::isfinite(theta) || theta == 0.0) {
        throw InvalidParams("double integrator gain must be finite and nonzero");
    }
    PlantModel model(
        "double_integrator", [](double) { return 1.0; }, [](double, double x2) { return x2; },
        [](double, double) { return 1.0; }, theta > 0.0 ? 1 : -1);
    return Plant(std::move(model), {0.0, theta});
}

AssumptionReport check_assumptions(const PlantModel& model, const SafeSet& s, int grid_n) {
    if (grid_n < 2) throw InvalidParams("assumption grid needs at least 2 points per axis");

    AssumptionReport report;
    report.grid_n = grid_n;
    auto node = [grid_n](double bound, int i) {
        return -bound + 2.0 * bound * static_cast<double>(i + 1) / static_cast<double>(grid_n + 1);
    };
    auto flag = [&report](const char* cond, double x1, double x2, double v) {
        report.violations.push_back({cond, x1, x2, v});
    };

    bool f2_positive = false;
    bool f2_negative = false;
    for (int i = 0; i < grid_n; ++i) {
        const double x1 = node(s.xbar1(), i);
        if (const double v = model.f2(x1, 0.0); v != 0.0) flag("f2(x1, 0) == 0", x1, 0.0, v);
        if (const double v = model.g1(x1); !(std::isfinite(v) && v != 0.0)) {
            flag("g1 != 0", x1, 0.0, v);
        }
        for (int j = 0; j < grid_n; ++j) {
            const double x2 = node(s.xbar2(), j);
            if (const double v = model.g2(x1, x2); !(std::isfinite(v) && v != 0.0)) {
                flag("g2 != 0", x1, x2, v);
            }
            if (x2 == 0.0) continue;
            const double v = model.f2(x1, x2);
            if (!(std::isfinite(v) && v != 0.0)) flag("f2 != 0 for x2 != 0", x1, x2, v);
            f2_positive |= v > 0.0;
            f2_negative |= v < 0.0;
        }
    }
    if (f2_positive != f2_negative) {
        report.notes.emplace_back(f2_positive ? "f2 >= 0 on the whole grid"
                                              : "f2 <= 0 on the whole grid");
    }
    return report;
}

}  // namespace conlift
