#pragma once

#include <numbers>

namespace qdr {

// Public I/O (configs, CSV, JSON, printed summaries) uses linear frequencies in
// GHz and times in microseconds. Matrix elements, level spacings, coupling
// strengths, and rates inside the numerical core are angular, in rad/ns.
// GHz and rad/ns are numerically identical up to the 2*pi factor applied here.

inline constexpr double two_pi = 2.0 * std::numbers::pi;

constexpr double to_angular(double linear_ghz) { return two_pi * linear_ghz; }
constexpr double to_linear(double angular_rad_ns) { return angular_rad_ns / two_pi; }

constexpr double us_to_ns(double us) { return 1e3 * us; }
constexpr double ns_to_us(double ns) { return 1e-3 * ns; }

}  // namespace qdr
