#pragma once

#include <array>
#include <cstddef>

namespace conlift {

template <std::size_t N>
using Vec = std::array<double, N>;

/// One classical fourth-order Runge-Kutta step of y' = f(y).
template <std::size_t N, class Rhs>
[[nodiscard]] Vec<N> rk4_step(Rhs&& f, const Vec<N>& y, double h) {
    auto axpy = [](const Vec<N>& a, double s, const Vec<N>& b) {
        Vec<N> r;
        for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + s * b[i];
        return r;
    };
    const Vec<N> k1 = f(y);
    const Vec<N> k2 = f(axpy(y, 0.5 * h, k1));
    const Vec<N> k3 = f(axpy(y, 0.5 * h, k2));
    const Vec<N> k4 = f(axpy(y, h, k3));
    Vec<N> out;
    for (std::size_t i = 0; i < N; ++i) {
        out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
}

}  // namespace conlift
