/**
 * @file orbit.hpp
 * @brief Iterating twist programs on character points, with a Fricke
 *        residual guard against numerical blow-up.
 */
#pragma once

#include <stdexcept>
#include <vector>

#include "fricke/char_point.hpp"
#include "fricke/twist_maps.hpp"

namespace fricke {

struct OrbitBlowup : std::runtime_error {
    OrbitBlowup(std::size_t step, double residual)
        : std::runtime_error("orbit aborted at step " + std::to_string(step)
                             + ": Fricke residual " + std::to_string(residual) + " exceeds 1e-6"),
          step(step), residual(residual) {}
    std::size_t step;
    double residual;
};

struct TwistStep {
    Twist twist;
    bool inverse = false;
};

constexpr double kOrbitFrickeGuard = 1e-6;

/// n steps of the program applied cyclically; returns n+1 points including
/// the start. Each step re-projects d onto the Fricke variety (composed
/// twists amplify transverse rounding exponentially, so unstabilized orbits
/// blow the residual guard within a few hundred steps). Aborts with
/// diagnostics if the Fricke residual ever exceeds the guard.
inline std::vector<CharPoint> orbit(Surface s, const std::vector<TwistStep>& program,
                                    const CharPoint& start, std::size_t n) {
    std::vector<CharPoint> out;
    out.reserve(n + 1);
    out.push_back(start);
    if (program.empty() && n > 0) throw std::invalid_argument("empty twist program");
    CharPoint p = start;
    for (std::size_t i = 0; i < n; ++i) {
        const TwistStep& st = program[i % program.size()];
        p = project_to_variety(apply_twist(s, st.twist, p, st.inverse));
        const double res = fricke_value(p);
        if (std::abs(res) > kOrbitFrickeGuard) throw OrbitBlowup(i + 1, res);
        out.push_back(p);
    }
    return out;
}

}  // namespace fricke
