/**
 * @file char_point.hpp
 * @brief The seven trace coordinates of a representation class and the
 *        boundary-trace data of the three surfaces.
 */
#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "fricke/su2.hpp"
#include "fricke/word.hpp"

namespace fricke {

/// (a,b,c,x,y,z,d) = traces of A, B, C, AB, BC, CA, ABC.
struct CharPoint {
    double a = 2, b = 2, c = 2, x = 2, y = 2, z = 2, d = 2;

    std::array<double, 7> to_array() const { return {a, b, c, x, y, z, d}; }
    static CharPoint from_array(const std::array<double, 7>& v) {
        return {v[0], v[1], v[2], v[3], v[4], v[5], v[6]};
    }

    double operator[](int i) const { return to_array()[i]; }

    friend bool operator==(const CharPoint&, const CharPoint&) = default;
};

inline CharPoint coords_from_rep(const Representation& rho) {
    const Su2 &A = rho.gens[0], &B = rho.gens[1], &C = rho.gens[2];
    return {trace(A), trace(B), trace(C),
            trace(A * B), trace(B * C), trace(C * A), trace(A * B * C)};
}

/// Fricke relation residual; zero (to rounding) on representation-derived
/// points.
inline double fricke_value(const CharPoint& p) {
    return p.a * p.a + p.b * p.b + p.c * p.c + p.d * p.d + p.x * p.x + p.y * p.y + p.z * p.z
         - ((p.a * p.b + p.c * p.d) * p.x + (p.b * p.c + p.d * p.a) * p.y + (p.c * p.a + p.b * p.d) * p.z)
         + p.x * p.y * p.z + p.a * p.b * p.c * p.d - 4.0;
}

/// two-generator Fricke form p^2 + q^2 + r^2 - pqr - 4 (<= 0 on SU(2) characters)
inline double fricke2(double p, double q, double r) {
    return p * p + q * q + r * r - p * q * r - 4.0;
}

/// Snap d to the nearest root of the Fricke relation, which is quadratic in
/// d: d^2 + (abc - cx - ay - bz) d + C = 0. Every built-in twist moves d, so
/// this correction never touches a twist's invariant coordinates. Iterated
/// twist maps amplify off-variety rounding exponentially (the transverse
/// direction is unstable under composed twists); re-projecting once per step
/// keeps orbits on the variety at rounding accuracy. Returns the point
/// unchanged if the d-fiber misses the variety or the nearest root is not
/// within `max_jump`.
inline CharPoint project_to_variety(CharPoint p, double max_jump = 1e-3) {
    const double B = p.a * p.b * p.c - p.c * p.x - p.a * p.y - p.b * p.z;
    const double C = p.a * p.a + p.b * p.b + p.c * p.c + p.x * p.x + p.y * p.y + p.z * p.z
                   - p.a * p.b * p.x - p.b * p.c * p.y - p.c * p.a * p.z + p.x * p.y * p.z - 4.0;
    const double disc = B * B - 4.0 * C;
    if (disc < 0.0) return p;
    const double s = std::sqrt(disc);
    const double r1 = (-B + s) / 2.0, r2 = (-B - s) / 2.0;
    const double d = std::abs(r1 - p.d) <= std::abs(r2 - p.d) ? r1 : r2;
    if (std::abs(d - p.d) > max_jump) return p;
    p.d = d;
    return p;
}

/// Boundary traces. N22: (c, k=abd-az-by+c); N13: (b, c, k=ad-y);
/// N31: (k = abcd-bcy-acz-abx+a^2+b^2+c^2-2).
inline std::vector<double> boundary_traces(Surface s, const CharPoint& p) {
    switch (s) {
        case Surface::N22:
            return {p.c, p.a * p.b * p.d - p.a * p.z - p.b * p.y + p.c};
        case Surface::N13:
            return {p.b, p.c, p.a * p.d - p.y};
        case Surface::N31:
            return {p.a * p.b * p.c * p.d - p.b * p.c * p.y - p.a * p.c * p.z - p.a * p.b * p.x
                    + p.a * p.a + p.b * p.b + p.c * p.c - 2.0};
    }
    return {};
}

}  // namespace fricke
