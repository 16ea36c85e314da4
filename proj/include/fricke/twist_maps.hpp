/**
 * @file twist_maps.hpp
 * @brief Closed-form coordinate action of the built-in Dehn twists on
 *        (a,b,c,x,y,z,d), forward and inverse.
 *
 * Each map ships in two forms: the closed-form functions below and the
 * polynomial route through induced_map(builtin twist); tests pin the two
 * together and against the word-level action on representations. Invariant
 * coordinates are copied, never recomputed, so they are preserved bitwise.
 *
 * Moving-coordinate components use the unique compact representatives
 * produced by the trace calculus; y-components (and the N22 z-component)
 * come from the boundary-trace identities k = ad - y resp. k = abd-az-by+c,
 * which hold as exact trace identities.
 */
#pragma once

#include <stdexcept>
#include <string>

#include "fricke/char_point.hpp"
#include "fricke/word.hpp"

namespace fricke {

enum class Twist { T, U, W };

inline const char* twist_name(Twist t) {
    switch (t) {
        case Twist::T: return "tau_T";
        case Twist::U: return "tau_U";
        case Twist::W: return "tau_W";
    }
    return "?";
}

struct TwistDomainError : std::invalid_argument {
    TwistDomainError(Surface s, Twist t)
        : std::invalid_argument(std::string(twist_name(t)) + " is not defined on " + surface_name(s)) {}
};

inline std::vector<Twist> twists_of(Surface s) {
    switch (s) {
        case Surface::N22: return {Twist::U};
        case Surface::N13: return {Twist::T, Twist::U, Twist::W};
        case Surface::N31: return {Twist::U};
    }
    return {};
}

inline Twist twist_from_name(Surface s, std::string_view name) {
    for (Twist t : twists_of(s))
        if (name == twist_name(t)) return t;
    throw std::invalid_argument("unknown twist '" + std::string(name) + "' on " + surface_name(s));
}

/// builtin endo matching (surface, twist)
inline EndoF3 twist_endo(Surface s, Twist t) {
    for (const auto& e : builtin_twists(s))
        if (e.name == twist_name(t)) return e;
    throw TwistDomainError(s, t);
}

namespace twist_detail {

inline CharPoint n13_tau_t(const CharPoint& p, bool inv) {
    CharPoint o = p;  // a, x, b, c invariant
    if (!inv) {
        o.z = p.a*p.a*p.x*p.x*p.z - p.a*p.a*p.a*p.x*p.d - p.a*p.c*p.x*p.x - 2.0*p.a*p.b*p.x*p.z
            + p.a*p.a*p.x*p.y + p.a*p.a*p.b*p.d + p.b*p.c*p.x + p.b*p.b*p.z + 2.0*p.a*p.x*p.d
            - p.a*p.b*p.y - p.x*p.y - p.b*p.d + p.a*p.c - p.z;
        o.d = -p.a*p.x*p.z + p.a*p.a*p.d + p.c*p.x + p.b*p.z - p.a*p.y - p.d;
    } else {
        o.z = -p.x*p.y + p.b*p.d + p.a*p.c - p.z;
        o.d = p.a*p.x*p.x*p.y - p.a*p.b*p.x*p.d - p.a*p.a*p.c*p.x - p.b*p.x*p.y + p.b*p.b*p.d
            + p.a*p.x*p.z + p.a*p.b*p.c + p.a*p.a*p.d + p.c*p.x - p.b*p.z - p.a*p.y - p.d;
    }
    o.y = p.a * o.d - p.a * p.d + p.y;  // k = ad - y preserved
    return o;
}

inline CharPoint n13_tau_u(const CharPoint& p, bool inv) {
    CharPoint o = p;  // a, z, b, c invariant
    if (!inv) {
        o.x = -p.y*p.z + p.c*p.d + p.a*p.b - p.x;
        o.d = p.a*p.y*p.z*p.z - p.a*p.c*p.z*p.d - p.a*p.a*p.b*p.z - p.c*p.y*p.z + p.c*p.c*p.d
            + p.a*p.x*p.z + p.a*p.b*p.c + p.a*p.a*p.d - p.c*p.x + p.b*p.z - p.a*p.y - p.d;
    } else {
        o.x = p.a*p.a*p.x*p.z*p.z - p.a*p.a*p.a*p.z*p.d - 2.0*p.a*p.c*p.x*p.z - p.a*p.b*p.z*p.z
            + p.a*p.a*p.y*p.z + p.a*p.a*p.c*p.d + p.c*p.c*p.x + p.b*p.c*p.z + 2.0*p.a*p.z*p.d
            - p.a*p.c*p.y - p.y*p.z - p.c*p.d + p.a*p.b - p.x;
        o.d = -p.a*p.x*p.z + p.a*p.a*p.d + p.c*p.x + p.b*p.z - p.a*p.y - p.d;
    }
    o.y = p.a * o.d - p.a * p.d + p.y;
    return o;
}

inline CharPoint n13_tau_w(const CharPoint& p, bool inv) {
    CharPoint o = p;  // x, z, b, c invariant
    if (!inv) {
        o.a = -p.x*p.z*p.d + p.a*p.d*p.d - p.y*p.d + p.c*p.z + p.b*p.x - p.a;
        o.d = p.x*p.x*p.z*p.z*p.d - 2.0*p.a*p.x*p.z*p.d*p.d + p.a*p.a*p.d*p.d*p.d
            + 2.0*p.x*p.y*p.z*p.d - p.c*p.x*p.z*p.z - p.b*p.x*p.x*p.z - 2.0*p.a*p.y*p.d*p.d
            + p.a*p.c*p.z*p.d + p.a*p.b*p.x*p.d + p.y*p.y*p.d - p.c*p.y*p.z - p.b*p.x*p.y
            + p.a*p.x*p.z - p.a*p.a*p.d + p.c*p.x + p.b*p.z + p.a*p.y - p.d;
    } else {
        o.a = p.a*p.x*p.x*p.z*p.z - 2.0*p.a*p.a*p.x*p.z*p.d - p.a*p.a*p.b*p.c*p.d
            + p.a*p.a*p.a*p.d*p.d - p.c*p.x*p.x*p.z - p.b*p.x*p.z*p.z + p.a*p.x*p.y*p.z
            + 2.0*p.a*p.c*p.x*p.d + 2.0*p.a*p.b*p.z*p.d + p.a*p.b*p.c*p.y - p.a*p.a*p.y*p.d
            + p.a*p.a*p.c*p.z + p.a*p.a*p.b*p.x + p.x*p.z*p.d - p.c*p.x*p.y - p.b*p.y*p.z
            - 2.0*p.a*p.d*p.d - p.a*p.z*p.z - p.a*p.x*p.x - p.a*p.c*p.c - p.a*p.b*p.b
            - p.a*p.a*p.a + p.y*p.d + p.c*p.z + p.b*p.x + 3.0*p.a;
        o.d = -p.a*p.x*p.z + p.a*p.a*p.d + p.c*p.x + p.b*p.z - p.a*p.y - p.d;
    }
    o.y = o.a * o.d - p.a * p.d + p.y;
    return o;
}

inline CharPoint n22_tau_u(const CharPoint& p, bool inv) {
    CharPoint o = p;  // a, b, y, c invariant
    if (!inv) {
        o.x = p.b*p.b*p.x*p.y*p.y - p.b*p.b*p.b*p.y*p.d - 2.0*p.b*p.c*p.x*p.y + p.b*p.b*p.y*p.z
            + p.b*p.b*p.c*p.d - p.a*p.b*p.y*p.y + p.c*p.c*p.x + 2.0*p.b*p.y*p.d - p.b*p.c*p.z
            + p.a*p.c*p.y - p.y*p.z - p.c*p.d + p.a*p.b - p.x;
        o.d = -p.b*p.x*p.y + p.b*p.b*p.d + p.c*p.x - p.b*p.z + p.a*p.y - p.d;
    } else {
        o.x = -p.y*p.z + p.c*p.d + p.a*p.b - p.x;
        o.d = p.b*p.y*p.y*p.z - p.b*p.c*p.y*p.d - p.a*p.b*p.b*p.y - p.c*p.y*p.z + p.c*p.c*p.d
            + p.b*p.x*p.y + p.b*p.b*p.d + p.a*p.b*p.c - p.c*p.x - p.b*p.z + p.a*p.y - p.d;
    }
    o.z = p.b * o.d - p.b * p.d + p.z;  // k = abd - az - by + c preserved
    return o;
}

inline CharPoint n31_tau_u(const CharPoint& p, bool inv) {
    CharPoint o = p;  // a, b, c, z invariant
    if (!inv) {
        o.x = -p.c*p.c*p.y*p.z + p.c*p.c*p.c*p.d - p.c*p.c*p.x + p.b*p.c*p.z + p.a*p.c*p.y
            - 2.0*p.c*p.d + p.x;
        o.y = p.a*p.a*p.c*p.c*p.y*p.z*p.z - p.a*p.a*p.c*p.c*p.c*p.z*p.d - p.a*p.c*p.c*p.c*p.y*p.z
            + p.a*p.c*p.c*p.c*p.c*p.d + p.a*p.a*p.c*p.c*p.x*p.z - p.a*p.a*p.b*p.c*p.z*p.z
            - 2.0*p.a*p.a*p.a*p.c*p.y*p.z + p.a*p.a*p.a*p.c*p.c*p.d - p.a*p.c*p.c*p.c*p.x
            + p.a*p.b*p.c*p.c*p.z + 2.0*p.a*p.a*p.c*p.z*p.d + p.a*p.a*p.c*p.c*p.y
            - p.a*p.a*p.a*p.c*p.x + p.a*p.a*p.a*p.b*p.z + p.a*p.a*p.a*p.a*p.y
            + 2.0*p.a*p.c*p.y*p.z - 4.0*p.a*p.c*p.c*p.d - p.a*p.a*p.x*p.z - p.a*p.a*p.a*p.d
            + 3.0*p.a*p.c*p.x - p.a*p.b*p.z - 3.0*p.a*p.a*p.y + 2.0*p.a*p.d + p.y;
        o.d = p.a*p.c*p.c*p.y*p.z*p.z - p.a*p.c*p.c*p.c*p.z*p.d - p.c*p.c*p.c*p.y*p.z
            + p.c*p.c*p.c*p.c*p.d + p.a*p.c*p.c*p.x*p.z - p.a*p.b*p.c*p.z*p.z
            - 2.0*p.a*p.a*p.c*p.y*p.z + p.a*p.a*p.c*p.c*p.d - p.c*p.c*p.c*p.x + p.b*p.c*p.c*p.z
            + 2.0*p.a*p.c*p.z*p.d + p.a*p.c*p.c*p.y - p.a*p.a*p.c*p.x + p.a*p.a*p.b*p.z
            + p.a*p.a*p.a*p.y + p.c*p.y*p.z - 3.0*p.c*p.c*p.d - p.a*p.x*p.z - p.a*p.a*p.d
            + 2.0*p.c*p.x - 2.0*p.a*p.y + p.d;
    } else {
        o.x = p.a*p.a*p.c*p.c*p.x*p.z*p.z - p.a*p.a*p.a*p.c*p.c*p.z*p.d
            - 2.0*p.a*p.c*p.c*p.c*p.x*p.z - p.a*p.b*p.c*p.c*p.z*p.z + p.a*p.a*p.c*p.c*p.y*p.z
            + p.a*p.a*p.c*p.c*p.c*p.d - p.a*p.a*p.a*p.c*p.x*p.z + p.a*p.a*p.a*p.a*p.c*p.d
            + p.c*p.c*p.c*p.c*p.x + p.b*p.c*p.c*p.c*p.z + 2.0*p.a*p.c*p.c*p.z*p.d
            - p.a*p.c*p.c*p.c*p.y + p.a*p.a*p.c*p.c*p.x + p.a*p.a*p.b*p.c*p.z
            - p.a*p.a*p.a*p.c*p.y - p.c*p.c*p.y*p.z - p.c*p.c*p.c*p.d + 2.0*p.a*p.c*p.x*p.z
            - 4.0*p.a*p.a*p.c*p.d - 3.0*p.c*p.c*p.x - p.b*p.c*p.z + 3.0*p.a*p.c*p.y
            + 2.0*p.c*p.d + p.x;
        o.y = -p.a*p.a*p.x*p.z + p.a*p.a*p.a*p.d + p.a*p.c*p.x + p.a*p.b*p.z - p.a*p.a*p.y
            - 2.0*p.a*p.d + p.y;
        o.d = p.a*p.a*p.c*p.x*p.z*p.z - p.a*p.a*p.a*p.c*p.z*p.d - 2.0*p.a*p.c*p.c*p.x*p.z
            - p.a*p.b*p.c*p.z*p.z + p.a*p.a*p.c*p.y*p.z + p.a*p.a*p.c*p.c*p.d
            - p.a*p.a*p.a*p.x*p.z + p.a*p.a*p.a*p.a*p.d + p.c*p.c*p.c*p.x + p.b*p.c*p.c*p.z
            + 2.0*p.a*p.c*p.z*p.d - p.a*p.c*p.c*p.y + p.a*p.a*p.c*p.x + p.a*p.a*p.b*p.z
            - p.a*p.a*p.a*p.y - p.c*p.y*p.z - p.c*p.c*p.d + p.a*p.x*p.z - 3.0*p.a*p.a*p.d
            - 2.0*p.c*p.x + 2.0*p.a*p.y + p.d;
    }
    return o;
}

}  // namespace twist_detail

inline CharPoint apply_twist(Surface s, Twist t, const CharPoint& p, bool inverse = false) {
    switch (s) {
        case Surface::N22:
            if (t == Twist::U) return twist_detail::n22_tau_u(p, inverse);
            break;
        case Surface::N13:
            if (t == Twist::T) return twist_detail::n13_tau_t(p, inverse);
            if (t == Twist::U) return twist_detail::n13_tau_u(p, inverse);
            if (t == Twist::W) return twist_detail::n13_tau_w(p, inverse);
            break;
        case Surface::N31:
            if (t == Twist::U) return twist_detail::n31_tau_u(p, inverse);
            break;
    }
    throw TwistDomainError(s, t);
}

/// trace of the twist curve in the coordinates: the conserved rotation
/// parameter nu (t = ax-b, u = az-c, w = xz-k, u = by-c, u = acz-a^2-c^2+2)
inline double twist_curve_trace(Surface s, Twist t, const CharPoint& p) {
    switch (s) {
        case Surface::N22:
            if (t == Twist::U) return p.b * p.y - p.c;
            break;
        case Surface::N13:
            if (t == Twist::T) return p.a * p.x - p.b;
            if (t == Twist::U) return p.a * p.z - p.c;
            if (t == Twist::W) return p.x * p.z - (p.a * p.d - p.y);
            break;
        case Surface::N31:
            if (t == Twist::U) return p.a * p.c * p.z - p.a * p.a - p.c * p.c + 2.0;
            break;
    }
    throw TwistDomainError(s, t);
}

}  // namespace fricke
