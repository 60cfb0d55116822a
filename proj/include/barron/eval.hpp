#pragma once

#include <functional>
#include <span>
#include <vector>

#include "barron/measure.hpp"

namespace barron {

/// One-sided directional derivatives at a point. `jump` is stored as
/// forward - backward and vanishes when no atom is active at the point.
struct DirectionalDerivatives {
    double forward = 0.0;
    double backward = 0.0;
    double jump = 0.0;
};

/// Active-set tolerance for membership in {w.x + b = 0}; relative scaling
/// keeps the classification meaningful far from the origin. Single source
/// of truth for "on the singular hyperplane".
double active_set_tolerance(std::span<const double> x);

double evaluate(const BarronFunction& f, std::span<const double> x);

/// One-sided derivatives along v (v != 0):
///   forward  = sum_{w.x+b > tau} weight*(w.v) + sum_{|w.x+b| <= tau} weight*max(w.v, 0)
///   backward = sum_{w.x+b > tau} weight*(w.v) - sum_{|w.x+b| <= tau} weight*max(-w.v, 0)
DirectionalDerivatives directional_derivative(const BarronFunction& f,
                                              std::span<const double> x,
                                              std::span<const double> v);

/// The positively one-homogeneous profile lim_{r->inf} f(r x)/r.
BarronFunction asymptotic_profile(const BarronFunction& f);

/// x -> f(x) - f_inf(x), as a callable; there is no measure-level split,
/// only the function-level identity.
std::function<double(std::span<const double>)> bounded_part(const BarronFunction& f);

/// Row-major points (count x dim) -> values. `threads <= 1` runs serially;
/// output is identical for any thread count.
std::vector<double> evaluate_batch(const BarronFunction& f,
                                   std::span<const double> points, int threads = 1);

} // namespace barron
