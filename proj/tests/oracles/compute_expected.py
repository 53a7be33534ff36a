"""High-precision oracle for the frozen expected values in the unit tests.

Run with: python3 tests/oracles/compute_expected.py
Every value is computed from closed forms with mpmath at 40 digits, independent
of the C++ implementation.
"""
from mpmath import mp, atanh, tanh, cosh, log, sqrt, mpf

mp.dps = 40

xbar1, xbar2 = mpf(2), mpf(1)
J, b, R, Kt, Kb = mpf("0.01"), mpf("0.1"), mpf(1), mpf("0.01"), mpf("0.01")
theta1 = -(b * R - Kb * Kt) / (J * R)
theta2 = Kt / (J * R)


def dphi(chi):
    return 1 / (1 - chi * chi)


vals = {}
vals["phi(0.5)"] = atanh(mpf("0.5"))
vals["z1 for x1=1, xbar1=2"] = xbar1 * atanh(mpf(1) / xbar1)
vals["z2 for x2=0.9, xbar2=1"] = xbar2 * atanh(mpf("0.9"))
vals["theta1"] = theta1
vals["theta2"] = theta2
vals["big_phi(artanh 0.5)"] = dphi(mpf("0.5")) * xbar2
vals["f2_lifted(z2=artanh 0.9)"] = dphi(mpf("0.9")) * mpf("0.9")
vals["g2_lifted(z2=artanh 0.9)"] = dphi(mpf("0.9"))

# DC motor set-point run at t = 0.
x1d = mpf("-1.9")
z1d = xbar1 * atanh(x1d / xbar1)
e1 = 0 - z1d
phi0 = dphi(mpf(0)) * 1 * xbar2
e2 = phi0 * mpf("0.9") + 1 * e1
G2 = dphi(mpf("0.9"))
F2 = dphi(mpf("0.9")) * mpf("0.9")
k1 = mpf(1)
k2 = 1 / k1
u = -xbar2 / G2 * 1 * (F2 * 0 + phi0 * k2 * e2)
vals["z1d"] = z1d
vals["e1(0)"] = e1
vals["e2(0)"] = e2
vals["u(0)"] = u
vals["dtheta1_hat(0)"] = 1 * mpf("0.9") * F2
vals["dp2_hat(0)"] = 1 * 1 * mpf("0.9") * (F2 * 0 + phi0 * k2 * e2)
zeta2 = atanh(mpf("0.9"))
V = e1**2 / 2 + log(cosh(zeta2)) + 0 + (theta1 - 0) ** 2 / 2
vals["logcosh(artanh 0.9)"] = log(cosh(zeta2))
vals["V(0)"] = V
vals["vdot(e1=0,e2=2,k1=4)"] = -(sqrt(4) * 0 - sqrt(mpf(1) / 4) * 2) ** 2
for k, v in vals.items():
    print(f"{k:32s} {mp.nstr(v, 20)}")
