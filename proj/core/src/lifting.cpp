#include "conlift/lifting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "conlift/errors.hpp"

namespace conlift {

namespace {

// Largest double strictly below one.
const double kBelowOne = std::nextafter(1.0, 0.0);

// psi is mathematically confined to (-1, 1) but rounds to +-1 for large
// arguments; round such results toward the interior instead.
double into_open_unit(double v) { return std::clamp(v, -kBelowOne, kBelowOne); }

double into_open_box(double v, double bound) {
    const double lim = std::nextafter(bound, 0.0);
    return std::clamp(v, -lim, lim);
}

class TanhFamily final : public LiftingFamily {
public:
    std::string_view name() const noexcept override { return "tanh"; }
    double phi(double chi) const override { return std::atanh(chi); }
    double psi(double zeta) const override { return into_open_unit(std::tanh(zeta)); }
    double dphi(double chi) const override { return 1.0 / ((1.0 - chi) * (1.0 + chi)); }
    double vcal(double zeta) const override {
        // log cosh without overflow for large |zeta|.
        const double a = std::abs(zeta);
        return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
    }
};

class AlgebraicFamily final : public LiftingFamily {
public:
    std::string_view name() const noexcept override { return "algebraic"; }
    double phi(double chi) const override {
        return chi / std::sqrt((1.0 - chi) * (1.0 + chi));
    }
    double psi(double zeta) const override {
        return into_open_unit(zeta / std::hypot(1.0, zeta));
    }
    double dphi(double chi) const override {
        const double s = (1.0 - chi) * (1.0 + chi);
        return 1.0 / (s * std::sqrt(s));
    }
    double vcal(double zeta) const override {
        // sqrt(1 + zeta^2) - 1 without cancellation near zero.
        const double a = std::abs(zeta);
        return a * (a / (std::hypot(1.0, a) + 1.0));
    }
};

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw NonFiniteInput(std::string(what) + " is not finite");
    }
}

double normalize_guarded(double x, double bound, const char* what) {
    const double chi = x / bound;
    if (std::abs(chi) >= 1.0 - kDomainGuard) {
        throw DomainViolation(std::string(what) + " = " + std::to_string(x) +
                              " is at or beyond the constraint boundary " +
                              std::to_string(bound));
    }
    return chi;
}

}  // namespace

SafeSet::SafeSet(double xbar1, double xbar2) : xbar1_(xbar1), xbar2_(xbar2) {
    if (!(std::isfinite(xbar1) && xbar1 > 0.0) || !(std::isfinite(xbar2) && xbar2 > 0.0)) {
        throw InvalidParams("safe set bounds must be finite and positive");
    }
}

bool SafeSet::contains(double x1, double x2) const noexcept {
    return std::abs(x1) < xbar1_ && std::abs(x2) < xbar2_;
}

FamilyPtr make_tanh_family() {
    static const FamilyPtr family = std::make_shared<TanhFamily>();
    return family;
}

FamilyPtr make_algebraic_family() {
    static const FamilyPtr family = std::make_shared<AlgebraicFamily>();
    return family;
}

FamilyPtr make_family(std::string_view name) {
    if (name == "tanh") return make_tanh_family();
    if (name == "algebraic") return make_algebraic_family();
    throw InvalidParams("unknown lifting family '" + std::string(name) + "'");
}

FamilyPair::FamilyPair(FamilyPtr both) : FamilyPair(both, both) {}

FamilyPair::FamilyPair(FamilyPtr for_x1, FamilyPtr for_x2)
    : first(std::move(for_x1)), second(std::move(for_x2)) {
    if (!first || !second) throw InvalidParams("lifting family must not be null");
}

CoordinateFrame lift(State x, const SafeSet& s, const FamilyPair& fam) {
    require_finite(x.x1, "x1");
    require_finite(x.x2, "x2");
    CoordinateFrame f{};
    f.x1 = x.x1;
    f.x2 = x.x2;
    f.chi1 = normalize_guarded(x.x1, s.xbar1(), "x1");
    f.chi2 = normalize_guarded(x.x2, s.xbar2(), "x2");
    f.z1 = s.xbar1() * fam.first->phi(f.chi1);
    f.z2 = s.xbar2() * fam.second->phi(f.chi2);
    f.zeta1 = f.z1 / s.xbar1();
    f.zeta2 = f.z2 / s.xbar2();
    return f;
}

CoordinateFrame unlift(Lifted z, const SafeSet& s, const FamilyPair& fam) {
    require_finite(z.z1, "z1");
    require_finite(z.z2, "z2");
    CoordinateFrame f{};
    f.z1 = z.z1;
    f.z2 = z.z2;
    f.zeta1 = z.z1 / s.xbar1();
    f.zeta2 = z.z2 / s.xbar2();
    f.chi1 = fam.first->psi(f.zeta1);
    f.chi2 = fam.second->psi(f.zeta2);
    f.x1 = into_open_box(s.xbar1() * f.chi1, s.xbar1());
    f.x2 = into_open_box(s.xbar2() * f.chi2, s.xbar2());
    return f;
}

}  // namespace conlift
