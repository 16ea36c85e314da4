/**
 * @file su2.hpp
 * @brief SU(2) arithmetic on unit quaternions.
 *
 * An element g = q0 + q1*i + q2*j + q3*k with |q| = 1 corresponds to the
 * matrix [[q0+i*q3, q2+i*q1], [-q2+i*q1, q0-i*q3]], so tr(g) = 2*q0.
 * Everything downstream (trace coordinates, flows, twists) only uses traces
 * and products, which quaternions provide at half the cost of 2x2 complex
 * matrices.
 */
#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace fricke {

constexpr double kPi = 3.14159265358979323846264338327950288;

/// Thrown where a construction needs g != +-I (the flow generator is
/// undefined at central elements).
struct CentralElementError : std::domain_error {
    CentralElementError() : std::domain_error("variation undefined at central element (+-I)") {}
};

struct AlgebraVec;  // fwd

struct Su2 {
    // q[0] scalar part; q[1..3] coefficients of i, j, k
    std::array<double, 4> q{1.0, 0.0, 0.0, 0.0};

    constexpr Su2() = default;
    constexpr Su2(double w, double x, double y, double z) : q{w, x, y, z} {}

    static constexpr Su2 identity() { return {}; }

    double norm() const {
        return std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
    }

    Su2 normalized() const {
        const double n = norm();
        return {q[0] / n, q[1] / n, q[2] / n, q[3] / n};
    }

    constexpr Su2 inverse() const { return {q[0], -q[1], -q[2], -q[3]}; }

    constexpr Su2 operator-() const { return {-q[0], -q[1], -q[2], -q[3]}; }

    friend constexpr Su2 operator*(const Su2& p, const Su2& r) {
        return {p.q[0] * r.q[0] - p.q[1] * r.q[1] - p.q[2] * r.q[2] - p.q[3] * r.q[3],
                p.q[0] * r.q[1] + p.q[1] * r.q[0] + p.q[2] * r.q[3] - p.q[3] * r.q[2],
                p.q[0] * r.q[2] - p.q[1] * r.q[3] + p.q[2] * r.q[0] + p.q[3] * r.q[1],
                p.q[0] * r.q[3] + p.q[1] * r.q[2] - p.q[2] * r.q[1] + p.q[3] * r.q[0]};
    }
};

inline double trace(const Su2& g) { return 2.0 * g.q[0]; }

inline double dist_max(const Su2& g, const Su2& h) {
    double m = 0.0;
    for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(g.q[i] - h.q[i]));
    return m;
}

/// angle f(g) = arccos(tr(g)/2) in [0, pi]
inline double angle(const Su2& g) {
    double c = g.q[0];
    if (c > 1.0) c = 1.0;
    if (c < -1.0) c = -1.0;
    return std::acos(c);
}

/// Unit vector in the Lie algebra su(2) (pure-imaginary quaternions).
struct AlgebraVec {
    std::array<double, 3> v{0.0, 0.0, 0.0};

    double norm() const {
        return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    }
};

/// The variation F(g): the unit imaginary direction of g, so that
/// g = cos(f(g)) + sin(f(g)) * F(g). Equivariant: F(h g h^-1) = h F(g) h^-1.
inline AlgebraVec variation(const Su2& g) {
    const double s = std::sqrt(g.q[1] * g.q[1] + g.q[2] * g.q[2] + g.q[3] * g.q[3]);
    if (s < 1e-10) throw CentralElementError{};
    return {{g.q[1] / s, g.q[2] / s, g.q[3] / s}};
}

/// exp(t * u) = cos(t) + sin(t) * u for a unit algebra vector u.
inline Su2 exp_scaled(const AlgebraVec& u, double t) {
    const double c = std::cos(t), s = std::sin(t);
    return {c, s * u.v[0], s * u.v[1], s * u.v[2]};
}

inline Su2 conjugate(const Su2& h, const Su2& g) { return h * g * h.inverse(); }

}  // namespace fricke
