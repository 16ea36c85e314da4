/**
 * @file ellipse.hpp
 * @brief Twist-invariant ellipse normal form: each built-in twist moves
 *        exactly two (possibly rescaled) coordinates, acting on them as an
 *        affine map with linear part of determinant 1 and trace nu^2-2,
 *        i.e. conjugate to a rotation by 2*acos(nu/2). The invariant conic is
 *
 *            eta^2 + zeta^2 + nu*eta*zeta = R
 *
 *        with (eta, zeta) the displacement from the map's fixed point and R
 *        the product-of-Fricke-forms residual; R >= 0 exactly because both
 *        factors are two-generator SU(2) character forms (<= 0) and
 *        4 - nu^2 > 0.
 *
 * Moving planes: tau_T: (d, z); tau_U(N13): (d, x); tau_W: (a, d);
 * tau_U(N22): (x, z/b); tau_U(N31): (x/c, y/a).
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fricke/char_point.hpp"
#include "fricke/twist_maps.hpp"

namespace fricke {

struct DegenerateEllipse : std::domain_error {
    explicit DegenerateEllipse(const std::string& why) : std::domain_error("degenerate ellipse: " + why) {}
};

constexpr double kNuDegenerate = 1e-6;   // |nu| within this of 2
constexpr double kDenomFloor = 1e-8;     // coordinate denominators below this

struct EllipseForm {
    Surface surface;
    Twist twist;
    double nu = 0;                    // conserved curve trace
    std::array<double, 2> center{};   // fixed point in the (scaled) moving plane
    double residual = 0;              // R, from the closed forms below
    std::array<const char*, 2> plane{"", ""};  // labels of the moving coordinates

    /// invariant quadratic form evaluated on a displacement
    double quad(double eta, double zeta) const {
        return eta * eta + zeta * zeta + nu * eta * zeta;
    }
};

namespace ellipse_detail {

struct PlaneOps {
    std::array<const char*, 2> labels;
    // project full coordinates to the scaled moving plane
    std::array<double, 2> (*proj)(const CharPoint&);
    // rebuild full coordinates from plane values, invariants taken from base
    CharPoint (*lift)(const CharPoint& base, double u1, double u2);
};

inline double k_n13(const CharPoint& p) { return p.a * p.d - p.y; }
inline double k_n22(const CharPoint& p) { return p.a * p.b * p.d - p.a * p.z - p.b * p.y + p.c; }
inline double k_n31(const CharPoint& p) { return boundary_traces(Surface::N31, p)[0]; }

inline PlaneOps plane_ops(Surface s, Twist t) {
    switch (s) {
        case Surface::N13:
            if (t == Twist::T)
                return {{"d", "z"},
                        [](const CharPoint& p) { return std::array<double, 2>{p.d, p.z}; },
                        [](const CharPoint& b, double d_, double z_) {
                            CharPoint p = b;
                            p.d = d_;
                            p.z = z_;
                            p.y = b.a * d_ - k_n13(b);
                            return p;
                        }};
            if (t == Twist::U)
                return {{"d", "x"},
                        [](const CharPoint& p) { return std::array<double, 2>{p.d, p.x}; },
                        [](const CharPoint& b, double d_, double x_) {
                            CharPoint p = b;
                            p.d = d_;
                            p.x = x_;
                            p.y = b.a * d_ - k_n13(b);
                            return p;
                        }};
            if (t == Twist::W)
                return {{"a", "d"},
                        [](const CharPoint& p) { return std::array<double, 2>{p.a, p.d}; },
                        [](const CharPoint& b, double a_, double d_) {
                            CharPoint p = b;
                            p.a = a_;
                            p.d = d_;
                            p.y = a_ * d_ - k_n13(b);
                            return p;
                        }};
            break;
        case Surface::N22:
            if (t == Twist::U)
                return {{"x", "z/b"},
                        [](const CharPoint& p) { return std::array<double, 2>{p.x, p.z / p.b}; },
                        [](const CharPoint& b, double x_, double zp) {
                            CharPoint p = b;
                            p.x = x_;
                            p.z = b.b * zp;
                            p.d = (b.a * p.z + b.b * b.y - b.c + k_n22(b)) / (b.a * b.b);
                            return p;
                        }};
            break;
        case Surface::N31:
            if (t == Twist::U)
                return {{"x/c", "y/a"},
                        [](const CharPoint& p) { return std::array<double, 2>{p.x / p.c, p.y / p.a}; },
                        [](const CharPoint& b, double xp, double yp) {
                            CharPoint p = b;
                            p.x = b.c * xp;
                            p.y = b.a * yp;
                            p.d = (b.b * b.c * p.y + b.a * b.c * b.z + b.a * b.b * p.x
                                   - b.a * b.a - b.b * b.b - b.c * b.c + 2.0 + k_n31(b))
                                  / (b.a * b.b * b.c);
                            return p;
                        }};
            break;
    }
    throw TwistDomainError(s, t);
}

inline void check_denominators(Surface s, const CharPoint& p) {
    auto need = [&](double v, const char* name) {
        if (std::abs(v) < kDenomFloor)
            throw DegenerateEllipse(std::string("coordinate ") + name + " below denominator floor");
    };
    if (s == Surface::N22) {
        need(p.a, "a");
        need(p.b, "b");
    } else if (s == Surface::N31) {
        need(p.a, "a");
        need(p.b, "b");
        need(p.c, "c");
    }
}

/// residual closed forms: product of the two two-generator Fricke forms the
/// paper identifies, over (4 - nu^2), with the extra a^2 / b^2 denominators
/// of the rescaled N22 / N31 planes
inline double residual_closed_form(Surface s, Twist t, const CharPoint& p, double nu) {
    switch (s) {
        case Surface::N13: {
            const double k = k_n13(p);
            if (t == Twist::T)
                return fricke2(nu, p.c, k) * fricke2(p.a, p.b, p.x) / (4.0 - nu * nu);
            if (t == Twist::U)
                return fricke2(nu, p.b, k) * fricke2(p.a, p.c, p.z) / (4.0 - nu * nu);
            if (t == Twist::W)
                return fricke2(p.x, p.z, k) * fricke2(p.b, p.c, nu) / (4.0 - nu * nu);
            break;
        }
        case Surface::N22: {
            const double k = k_n22(p);
            return fricke2(p.b, p.c, p.y) * fricke2(p.a * p.a - 2.0, nu, k)
                 / (p.a * p.a * (4.0 - nu * nu));
        }
        case Surface::N31: {
            const double k = k_n31(p);
            return fricke2(p.a, p.c, p.z) * fricke2(p.b * p.b - 2.0, nu, k)
                 / (p.b * p.b * (4.0 - nu * nu));
        }
    }
    throw TwistDomainError(s, t);
}

/// the two Fricke-form factors of the residual (for sign reporting)
inline std::array<double, 2> residual_factors(Surface s, Twist t, const CharPoint& p, double nu) {
    switch (s) {
        case Surface::N13: {
            const double k = k_n13(p);
            if (t == Twist::T) return {fricke2(nu, p.c, k), fricke2(p.a, p.b, p.x)};
            if (t == Twist::U) return {fricke2(nu, p.b, k), fricke2(p.a, p.c, p.z)};
            if (t == Twist::W) return {fricke2(p.x, p.z, k), fricke2(p.b, p.c, nu)};
            break;
        }
        case Surface::N22:
            return {fricke2(p.b, p.c, p.y), fricke2(p.a * p.a - 2.0, nu, k_n22(p))};
        case Surface::N31:
            return {fricke2(p.a, p.c, p.z), fricke2(p.b * p.b - 2.0, nu, k_n31(p))};
    }
    throw TwistDomainError(s, t);
}

struct AffineMap {
    // p -> M p + v on the scaled moving plane
    std::array<std::array<double, 2>, 2> M;
    std::array<double, 2> v;
};

/// The restricted action is affine in the moving plane for fixed invariants;
/// evaluate the polynomial map through lift/proj at three points to read the
/// coefficients off exactly.
inline AffineMap restricted_affine(Surface s, Twist t, const CharPoint& base, bool inverse = false) {
    const PlaneOps ops = plane_ops(s, t);
    auto G = [&](double u1, double u2) {
        return ops.proj(apply_twist(s, t, ops.lift(base, u1, u2), inverse));
    };
    const auto g0 = G(0.0, 0.0), g1 = G(1.0, 0.0), g2 = G(0.0, 1.0);
    AffineMap m;
    m.M = {{{g1[0] - g0[0], g2[0] - g0[0]}, {g1[1] - g0[1], g2[1] - g0[1]}}};
    m.v = g0;
    return m;
}

inline std::array<double, 2> fixed_point(const AffineMap& m) {
    const double a11 = 1.0 - m.M[0][0], a12 = -m.M[0][1];
    const double a21 = -m.M[1][0], a22 = 1.0 - m.M[1][1];
    const double det = a11 * a22 - a12 * a21;  // = 2 - tr M + det M = 4 - nu^2 for these maps
    return {(m.v[0] * a22 - m.v[1] * a12) / det, (a11 * m.v[1] - a21 * m.v[0]) / det};
}

}  // namespace ellipse_detail

inline EllipseForm ellipse_form(Surface s, Twist t, const CharPoint& p) {
    const double nu = twist_curve_trace(s, t, p);
    if (std::abs(nu) >= 2.0 - kNuDegenerate)
        throw DegenerateEllipse("curve trace " + std::to_string(nu) + " within 1e-6 of +-2");
    ellipse_detail::check_denominators(s, p);

    EllipseForm e;
    e.surface = s;
    e.twist = t;
    e.nu = nu;
    e.plane = ellipse_detail::plane_ops(s, t).labels;
    e.center = ellipse_detail::fixed_point(ellipse_detail::restricted_affine(s, t, p));
    e.residual = ellipse_detail::residual_closed_form(s, t, p, nu);
    return e;
}

struct RotationReport {
    double nu = 0;
    double det_m = 0;          // determinant of the restricted linear part
    double trace_m = 0;        // its trace; nu^2 - 2 for a twist
    double affine_dev = 0;     // max |apply_twist - (center + M (p - center))| in the plane
    double quad_residual_dev = 0;  // |quad(p - center) - R|
    double theta = 0;          // rotation angle 2 acos(nu/2)
    std::array<double, 2> fricke_factors{};  // both must be <= 0 (up to 1e-12)
};

inline RotationReport rotation_check(Surface s, Twist t, const CharPoint& p) {
    const EllipseForm e = ellipse_form(s, t, p);
    const auto ops = ellipse_detail::plane_ops(s, t);
    const auto aff = ellipse_detail::restricted_affine(s, t, p);

    RotationReport r;
    r.nu = e.nu;
    r.det_m = aff.M[0][0] * aff.M[1][1] - aff.M[0][1] * aff.M[1][0];
    r.trace_m = aff.M[0][0] + aff.M[1][1];
    r.theta = 2.0 * std::acos(std::clamp(e.nu / 2.0, -1.0, 1.0));
    r.fricke_factors = ellipse_detail::residual_factors(s, t, p, e.nu);

    const auto pp = ops.proj(p);
    const auto img = ops.proj(apply_twist(s, t, p));
    const double e1 = pp[0] - e.center[0], e2 = pp[1] - e.center[1];
    const double pr1 = e.center[0] + aff.M[0][0] * e1 + aff.M[0][1] * e2;
    const double pr2 = e.center[1] + aff.M[1][0] * e1 + aff.M[1][1] * e2;
    r.affine_dev = std::max(std::abs(pr1 - img[0]), std::abs(pr2 - img[1]));
    r.quad_residual_dev = std::abs(e.quad(e1, e2) - e.residual);
    return r;
}

}  // namespace fricke
