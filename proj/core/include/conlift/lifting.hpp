#pragma once

#include <memory>
#include <string_view>

namespace conlift {

/// Relative guard band at the constraint boundary. Lifting refuses any
/// normalized coordinate with |chi| >= 1 - kDomainGuard.
inline constexpr double kDomainGuard = 1e-9;

/// Physical state (x1, x2).
struct State {
    double x1 = 0.0;
    double x2 = 0.0;
};

/// Lifted state (z1, z2).
struct Lifted {
    double z1 = 0.0;
    double z2 = 0.0;
};

/// Origin-symmetric open box (-xbar1, xbar1) x (-xbar2, xbar2).
class SafeSet {
public:
    /// Throws InvalidParams unless both bounds are finite and positive.
    SafeSet(double xbar1, double xbar2);

    [[nodiscard]] double xbar1() const noexcept { return xbar1_; }
    [[nodiscard]] double xbar2() const noexcept { return xbar2_; }

    [[nodiscard]] bool contains(double x1, double x2) const noexcept;
    [[nodiscard]] bool contains(State x) const noexcept { return contains(x.x1, x.x2); }

private:
    double xbar1_;
    double xbar2_;
};

// ============================================================================
// Constraint-lifting families
// ============================================================================
// A family is a strictly increasing odd bijection phi: (-1, 1) -> R with
// inverse psi, the analytic derivative dphi, and the sigmoid integral
// vcal(zeta) = integral_0^zeta psi(s) ds.

class LiftingFamily {
public:
    virtual ~LiftingFamily() = default;

    [[nodiscard]] virtual std::string_view name() const noexcept = 0;
    [[nodiscard]] virtual double phi(double chi) const = 0;
    [[nodiscard]] virtual double psi(double zeta) const = 0;
    [[nodiscard]] virtual double dphi(double chi) const = 0;
    [[nodiscard]] virtual double vcal(double zeta) const = 0;
};

using FamilyPtr = std::shared_ptr<const LiftingFamily>;

/// phi = artanh, psi = tanh, dphi = 1/(1 - chi^2), vcal = log cosh.
FamilyPtr make_tanh_family();

/// phi = chi/sqrt(1 - chi^2), psi = zeta/sqrt(1 + zeta^2),
/// dphi = (1 - chi^2)^(-3/2), vcal = sqrt(1 + zeta^2) - 1.
FamilyPtr make_algebraic_family();

/// Looks a family up by name ("tanh" or "algebraic"). Throws InvalidParams.
FamilyPtr make_family(std::string_view name);

/// Per-state family assignment. The usual setup uses one family for both.
struct FamilyPair {
    explicit FamilyPair(FamilyPtr both);
    FamilyPair(FamilyPtr for_x1, FamilyPtr for_x2);

    FamilyPtr first;
    FamilyPtr second;
};

/// All four coordinate representations of one state.
struct CoordinateFrame {
    double x1, x2;
    double chi1, chi2;
    double z1, z2;
    double zeta1, zeta2;

    [[nodiscard]] State x() const noexcept { return {x1, x2}; }
    [[nodiscard]] Lifted z() const noexcept { return {z1, z2}; }
};

/// x -> chi -> z -> zeta. Throws NonFiniteInput on NaN/inf and
/// DomainViolation when |x_i| >= xbar_i (1 - kDomainGuard).
CoordinateFrame lift(State x, const SafeSet& s, const FamilyPair& fam);

/// z -> zeta -> x. The result always satisfies |x_i| < xbar_i: when the
/// exact value is closer to the boundary than one ulp, it is rounded toward
/// the interior. Throws NonFiniteInput on NaN/inf.
CoordinateFrame unlift(Lifted z, const SafeSet& s, const FamilyPair& fam);

}  // namespace conlift
