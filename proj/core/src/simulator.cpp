#include "conlift/simulator.hpp"

#include <cmath>
#include <string>

#include "conlift/lyapunov.hpp"

namespace conlift {

namespace {

bool finite(const Vec<4>& v) {
    for (double c : v) {
        if (!std::isfinite(c)) return false;
    }
    return true;
}

// Centered differences inside, second-order one-sided differences at the ends.
void fill_numeric_vdot(std::vector<Sample>& samples) {
    const std::size_t n = samples.size();
    if (n < 3) {
        for (auto& s : samples) s.vdot_numeric = s.vdot_analytic;
        return;
    }
    const double h = samples[1].t - samples[0].t;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        samples[i].vdot_numeric = (samples[i + 1].V - samples[i - 1].V) / (2.0 * h);
    }
    samples[0].vdot_numeric =
        (-3.0 * samples[0].V + 4.0 * samples[1].V - samples[2].V) / (2.0 * h);
    samples[n - 1].vdot_numeric =
        (3.0 * samples[n - 1].V - 4.0 * samples[n - 2].V + samples[n - 3].V) / (2.0 * h);
}

template <class Advance, class Observe>
Trajectory integrate(const SimConfig& cfg, Vec<4> y, Advance&& advance, Observe&& observe) {
    Trajectory traj;
    const long n = cfg.step_count();
    traj.samples.reserve(static_cast<std::size_t>(n / cfg.log_stride + 1));
    for (long k = 0;; ++k) {
        const double t = static_cast<double>(k) * cfg.dt;
        if (k % cfg.log_stride == 0) {
            try {
                traj.samples.push_back(observe(t, y));
            } catch (const Error& e) {
                traj.failure = Failure{e.kind(), t, e.what()};
                break;
            }
        }
        if (k == n) break;
        try {
            y = advance(t, y);
        } catch (const StepRejected& e) {
            traj.failure = Failure{e.cause(), e.time(), e.what()};
            break;
        }
    }
    fill_numeric_vdot(traj.samples);
    return traj;
}

}  // namespace

void SimConfig::validate() const {
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };
    if (!(std::isfinite(dt) && dt > 0.0)) fail("dt must be positive");
    if (!(std::isfinite(t_final) && t_final >= dt)) fail("t_final must be at least dt");
    if (log_stride < 1) fail("log_stride must be at least 1");
    try {
        gains.validate();
    } catch (const InvalidParams& e) {
        fail(e.what());
    }
    if (gains.theta2_sign != plant.model().theta2_sign()) {
        fail("controller theta2_sign disagrees with the sign exported by the plant model");
    }
    if (!std::isfinite(x1d) ||
        std::abs(x1d) >= safe_set.xbar1() * (1.0 - kDomainGuard)) {
        fail("reference x1d must satisfy |x1d| < xbar1");
    }
    if (!std::isfinite(x0.x1) || !std::isfinite(x0.x2) ||
        std::abs(x0.x1) >= safe_set.xbar1() * (1.0 - kDomainGuard) ||
        std::abs(x0.x2) >= safe_set.xbar2() * (1.0 - kDomainGuard)) {
        fail("initial state (x1, x2) must lie strictly inside the safe set");
    }
    if (!std::isfinite(est0.p2_hat) || !std::isfinite(est0.theta1_hat)) {
        fail("initial estimates must be finite");
    }
    if (est0.p2_hat == 0.0) {
        fail("p2_hat(0) cannot be zero: a zero initial estimate makes u identically zero");
    }
}

long SimConfig::step_count() const { return std::lround(t_final / dt); }

SimConfig dc_motor_setpoint_config() {
    return SimConfig{
        .plant = dc_motor(DcMotorParams{}),
        .safe_set = SafeSet(2.0, 1.0),
        .families = FamilyPair(make_tanh_family()),
        .gains = ControllerGains{.k1 = 1.0, .gamma = 1.0, .alpha = 1.0, .theta2_sign = 1},
        .p2_sign = P2LawSign::Derived,
        .x1d = -1.9,
        .x0 = State{0.0, 0.9},
        .est0 = EstimatorState{1.0, 0.0},
        .dt = 1e-3,
        .t_final = 30.0,
        .log_stride = 1,
    };
}

ClosedLoop::ClosedLoop(const SimConfig& cfg)
    : plant_(cfg.plant),
      lifted_(cfg.plant, cfg.safe_set, cfg.families),
      controller_(lifted_.fields(), cfg.gains,
                  Reference(cfg.x1d, cfg.safe_set, *cfg.families.first), cfg.p2_sign) {}

AugmentedState ClosedLoop::rhs(const AugmentedState& s) const {
    const CoordinateFrame frame = controller_.fields().lift(s.x());
    const ControllerOutput out = controller_.evaluate(frame, s.estimates());
    const StateRate dx = plant_rhs(plant_, s.x(), out.u);
    return {dx.dx1, dx.dx2, out.rates.dp2_hat, out.rates.dtheta1_hat};
}

Vec<4> ClosedLoop::lifted_rhs(const Vec<4>& zs) const {
    const Lifted z{zs[0], zs[1]};
    const CoordinateFrame frame = controller_.fields().unlift(z);
    const ControllerOutput out = controller_.evaluate(frame, {zs[2], zs[3]});
    const LiftedRate dz = lifted_.lifted_rhs(z, out.u);
    return {dz.dz1, dz.dz2, out.rates.dp2_hat, out.rates.dtheta1_hat};
}

Sample ClosedLoop::observe(double t, const AugmentedState& s) const {
    return observe(t, controller_.fields().lift(s.x()), s.estimates());
}

Sample ClosedLoop::observe(double t, const CoordinateFrame& frame,
                           const EstimatorState& est) const {
    const ControllerOutput out = controller_.evaluate(frame, est);
    Sample smp{};
    smp.t = t;
    smp.x1 = frame.x1;
    smp.x2 = frame.x2;
    smp.chi1 = frame.chi1;
    smp.chi2 = frame.chi2;
    smp.z1 = frame.z1;
    smp.z2 = frame.z2;
    smp.zeta1 = frame.zeta1;
    smp.zeta2 = frame.zeta2;
    smp.e1 = out.errors.e1;
    smp.e2 = out.errors.e2;
    smp.u = out.u;
    smp.p2_hat = est.p2_hat;
    smp.theta1_hat = est.theta1_hat;
    smp.V = lyapunov(frame, controller_, est, plant_.true_parameters());
    smp.vdot_analytic = vdot_analytic(out.errors.e1, out.errors.e2, controller_.gains());
    smp.vdot_numeric = smp.vdot_analytic;
    smp.in_safe_set = controller_.fields().safe_set().contains(frame.x1, frame.x2);
    return smp;
}

AugmentedState step(const ClosedLoop& loop, double t, const AugmentedState& s, double dt) {
    try {
        if (!finite(s.as_vec())) throw NonFiniteInput("closed-loop state is not finite");
        const Vec<4> next = rk4_step<4>(
            [&loop](const Vec<4>& y) {
                if (!finite(y)) throw NonFiniteInput("RK4 stage state is not finite");
                return loop.rhs(AugmentedState::from_vec(y)).as_vec();
            },
            s.as_vec(), dt);
        if (!finite(next)) throw NonFiniteInput("RK4 step produced a non-finite state");
        return AugmentedState::from_vec(next);
    } catch (const StepRejected&) {
        throw;
    } catch (const Error& e) {
        throw StepRejected(t, e.kind(),
                           "step at t = " + std::to_string(t) + " rejected: " + e.what());
    }
}

Trajectory run(const SimConfig& cfg) {
    cfg.validate();
    const ClosedLoop loop(cfg);
    const AugmentedState s0{cfg.x0.x1, cfg.x0.x2, cfg.est0.p2_hat, cfg.est0.theta1_hat};
    return integrate(
        cfg, s0.as_vec(),
        [&](double t, const Vec<4>& y) {
            return step(loop, t, AugmentedState::from_vec(y), cfg.dt).as_vec();
        },
        [&](double t, const Vec<4>& y) { return loop.observe(t, AugmentedState::from_vec(y)); });
}

Trajectory run_lifted(const SimConfig& cfg) {
    cfg.validate();
    const ClosedLoop loop(cfg);
    const CoordinateFrame f0 = loop.controller().fields().lift(cfg.x0);
    const Vec<4> y0{f0.z1, f0.z2, cfg.est0.p2_hat, cfg.est0.theta1_hat};
    return integrate(
        cfg, y0,
        [&](double t, const Vec<4>& y) {
            try {
                Vec<4> next = rk4_step<4>(
                    [&loop](const Vec<4>& v) {
                        if (!finite(v)) throw NonFiniteInput("RK4 stage state is not finite");
                        return loop.lifted_rhs(v);
                    },
                    y, cfg.dt);
                if (!finite(next)) throw NonFiniteInput("RK4 step produced a non-finite state");
                return next;
            } catch (const Error& e) {
                throw StepRejected(t, e.kind(),
                                   "step at t = " + std::to_string(t) + " rejected: " + e.what());
            }
        },
        [&](double t, const Vec<4>& y) {
            const CoordinateFrame frame = loop.controller().fields().unlift({y[0], y[1]});
            return loop.observe(t, frame, {y[2], y[3]});
        });
}

}  // namespace conlift
