#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "conlift/errors.hpp"
#include "conlift/lifting.hpp"
#include "test_support.hpp"

using namespace conlift;
using conlift::testing::uniform;

namespace {

const SafeSet kBox(2.0, 1.0);

class FamilyTest : public ::testing::TestWithParam<const char*> {
protected:
    FamilyPtr fam = make_family(GetParam());
};

}  // namespace

TEST(TanhFamily, ValuesAtOrigin) {
    const auto f = make_tanh_family();
    EXPECT_EQ(f->vcal(0.0), 0.0);
    EXPECT_EQ(f->psi(0.0), 0.0);
    EXPECT_EQ(f->phi(0.0), 0.0);
    EXPECT_EQ(f->dphi(0.0), 1.0);
}

TEST(TanhFamily, PhiAtHalfIsHalfLogThree) {
    // 0.5 ln 3, mpmath oracle.
    EXPECT_NEAR(make_tanh_family()->phi(0.5), 0.5493061443340548457, 1e-15);
}

TEST(TanhFamily, DphiAtPsiIsCoshSquared) {
    const auto f = make_tanh_family();
    for (double zeta = -5.0; zeta <= 5.0; zeta += 0.01) {
        const double c = std::cosh(zeta);
        EXPECT_LT(conlift::testing::rel_err(f->dphi(f->psi(zeta)), c * c), 1e-10) << zeta;
    }
}

TEST(TanhFamily, VcalIsLogCoshWithoutOverflow) {
    const auto f = make_tanh_family();
    EXPECT_NEAR(f->vcal(1.2), std::log(std::cosh(1.2)), 1e-15);
    EXPECT_NEAR(f->vcal(1000.0), 1000.0 - std::log(2.0), 1e-9);
}

TEST(Lift, OriginMapsToOrigin) {
    const auto fr = lift({0.0, 0.0}, kBox, FamilyPair(make_tanh_family()));
    EXPECT_EQ(fr.z1, 0.0);
    EXPECT_EQ(fr.z2, 0.0);
    EXPECT_EQ(fr.zeta1, 0.0);
    EXPECT_EQ(fr.zeta2, 0.0);
}

TEST(Lift, TanhExamples) {
    const FamilyPair fam(make_tanh_family());
    EXPECT_NEAR(lift({1.0, 0.0}, kBox, fam).z1, 1.0986122886681096914, 1e-14);
    EXPECT_NEAR(lift({0.0, 0.9}, kBox, fam).z2, 1.4722194895832202300, 1e-14);
}

TEST(Lift, FrameIsConsistent) {
    const auto fr = lift({-1.3, 0.4}, kBox, FamilyPair(make_tanh_family()));
    EXPECT_DOUBLE_EQ(fr.chi1, -0.65);
    EXPECT_DOUBLE_EQ(fr.chi2, 0.4);
    EXPECT_DOUBLE_EQ(fr.zeta1, fr.z1 / 2.0);
    EXPECT_DOUBLE_EQ(fr.zeta2, fr.z2);
    EXPECT_NEAR(2.0 * std::tanh(fr.zeta1), -1.3, 1e-14);
}

TEST(Lift, RejectsBoundaryAndGuardBand) {
    const FamilyPair fam(make_tanh_family());
    EXPECT_THROW((void)lift({2.0, 0.0}, kBox, fam), DomainViolation);
    EXPECT_THROW((void)lift({0.0, -1.0}, kBox, fam), DomainViolation);
    EXPECT_THROW((void)lift({0.0, 1.0 - 0.5e-9}, kBox, fam), DomainViolation);
    EXPECT_THROW((void)lift({0.0, 1.5}, kBox, fam), DomainViolation);
    EXPECT_NO_THROW((void)lift({0.0, 1.0 - 1e-8}, kBox, fam));
}

TEST(Lift, RejectsNonFinite) {
    const FamilyPair fam(make_tanh_family());
    EXPECT_THROW((void)lift({std::nan(""), 0.0}, kBox, fam), NonFiniteInput);
    EXPECT_THROW((void)unlift({0.0, std::numeric_limits<double>::infinity()}, kBox, fam),
                 NonFiniteInput);
}

TEST(Unlift, Examples) {
    const FamilyPair fam(make_tanh_family());
    const auto a = unlift({0.0, 0.0}, kBox, fam);
    EXPECT_EQ(a.x1, 0.0);
    EXPECT_EQ(a.x2, 0.0);
    EXPECT_NEAR(unlift({1.0986122886681096914, 0.0}, kBox, fam).x1, 1.0, 1e-14);
}

TEST(SafeSet, RejectsNonPositiveBounds) {
    EXPECT_THROW(SafeSet(0.0, 1.0), InvalidParams);
    EXPECT_THROW(SafeSet(1.0, -1.0), InvalidParams);
    EXPECT_THROW(SafeSet(std::nan(""), 1.0), InvalidParams);
    EXPECT_TRUE(kBox.contains(1.99, -0.99));
    EXPECT_FALSE(kBox.contains(2.0, 0.0));
}

TEST(Family, UnknownNameIsRejected) { EXPECT_THROW(make_family("sigmoid"), InvalidParams); }

TEST(FamilyPair, PerStateFamilies) {
    const FamilyPair fam(make_tanh_family(), make_algebraic_family());
    const auto fr = lift({1.0, 0.5}, kBox, fam);
    EXPECT_NEAR(fr.z1, 2.0 * std::atanh(0.5), 1e-14);
    EXPECT_NEAR(fr.z2, 0.5 / std::sqrt(0.75), 1e-14);
}

TEST_P(FamilyTest, OddAndZeroAtOrigin) {
    EXPECT_EQ(fam->phi(0.0), 0.0);
    EXPECT_EQ(fam->psi(0.0), 0.0);
    EXPECT_EQ(fam->vcal(0.0), 0.0);
    for (int i = 0; i < 100; ++i) {
        const double chi = uniform(-0.999, 0.999);
        EXPECT_DOUBLE_EQ(fam->phi(-chi), -fam->phi(chi));
    }
}

TEST_P(FamilyTest, RoundTripInterior) {
    const FamilyPair pair(fam);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        // Excludes the band within 1e-6 of the boundary where phi's
        // conditioning degrades the round trip.
        const State x{uniform(-2.0, 2.0) * (1.0 - 1e-6), uniform(-1.0, 1.0) * (1.0 - 1e-6)};
        const auto back = unlift(lift(x, kBox, pair).z(), kBox, pair);
        worst = std::max({worst, std::abs(back.x1 - x.x1), std::abs(back.x2 - x.x2)});
    }
    EXPECT_LT(worst, 1e-10);
}

TEST_P(FamilyTest, InverseInBothDirections) {
    for (int i = 0; i < 1000; ++i) {
        const double chi = uniform(-0.99, 0.99);
        EXPECT_NEAR(fam->psi(fam->phi(chi)), chi, 1e-13);
        const double zeta = uniform(-8.0, 8.0);
        EXPECT_LT(conlift::testing::rel_err(fam->phi(fam->psi(zeta)), zeta), 1e-8) << zeta;
    }
}

TEST_P(FamilyTest, StrictlyIncreasing) {
    for (int i = 0; i < 10000; ++i) {
        double a = uniform(-0.9999, 0.9999), b = uniform(-0.9999, 0.9999);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        EXPECT_LT(fam->phi(a), fam->phi(b));
        EXPECT_GT(fam->dphi(a), 0.0);
        double za = uniform(-15.0, 15.0), zb = uniform(-15.0, 15.0);
        if (za == zb) continue;
        if (za > zb) std::swap(za, zb);
        EXPECT_LT(fam->psi(za), fam->psi(zb));
    }
}

TEST_P(FamilyTest, DerivativeMatchesCentralDifference) {
    const double h = 1e-6;
    for (double chi = -0.99; chi <= 0.99; chi += 0.001) {
        const double fd = (fam->phi(chi + h) - fam->phi(chi - h)) / (2.0 * h);
        const double d = fam->dphi(chi);
        EXPECT_LT(std::abs(d - fd), 1e-6 * std::max(1.0, std::abs(d))) << chi;
    }
}

TEST_P(FamilyTest, SigmoidIntegralDerivativeIsPsi) {
    const double h = 1e-5;
    for (double zeta = -5.0; zeta <= 5.0; zeta += 0.01) {
        const double fd = (fam->vcal(zeta + h) - fam->vcal(zeta - h)) / (2.0 * h);
        EXPECT_LT(std::abs(fd - fam->psi(zeta)), 1e-6) << zeta;
        EXPECT_GE(fam->vcal(zeta), 0.0);
    }
}

TEST_P(FamilyTest, UnliftNeverLeavesSafeSet) {
    const FamilyPair pair(fam);
    for (double z : {1e3, -1e3, 40.0, -40.0, 1e300, -1e300}) {
        for (const SafeSet& s : {kBox, SafeSet(3.0, 0.7), SafeSet(1e-3, 7.1)}) {
            const auto fr = unlift({z, -z}, s, pair);
            EXPECT_TRUE(s.contains(fr.x1, fr.x2)) << z;
        }
    }
    for (int i = 0; i < 10000; ++i) {
        const auto fr = unlift({uniform(-50.0, 50.0), uniform(-50.0, 50.0)}, kBox, pair);
        ASSERT_TRUE(kBox.contains(fr.x1, fr.x2));
    }
}

INSTANTIATE_TEST_SUITE_P(Families, FamilyTest, ::testing::Values("tanh", "algebraic"));
