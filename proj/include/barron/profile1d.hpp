#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "barron/measure.hpp"

namespace barron {

/// Second-derivative description of a one-dimensional function:
/// f(x) = f0 + df0 * x + sum_i mass_i * K(x, loc_i), where the kernel
/// K(x, t) = relu(x - t) for t >= 0 and relu(t - x) for t < 0 satisfies
/// K(0, t) = 0 and has vanishing left derivative at 0, so f0 = f(0) and
/// df0 is the left-continuous derivative at 0. d2_nodes hold density
/// samples already multiplied by their quadrature weight.
struct Profile1D {
    double f0 = 0.0;
    double df0 = 0.0;
    std::vector<std::pair<double, double>> d2_atoms;  // (location, mass)
    std::vector<std::pair<double, double>> d2_nodes;  // (location, density * quad weight)

    double operator()(double x) const;
};

enum class Weight1D {
    sqrt_one_plus_b2,  // integral weight sqrt(1 + b^2), the whole-line norm
    unit,              // integral weight 1, the unit-interval norm
};

/// Profile whose curvature has a Lebesgue density on [lo, hi], discretized
/// by the midpoint rule into d2_nodes.
Profile1D profile_from_curvature(double f0, double df0,
                                 const std::function<double(double)>& density,
                                 double lo, double hi, int n_nodes = 1024);

/// |f0| + |df0| + sum |mass| * weight(location).
double norm_1d(const Profile1D& p, Weight1D weight = Weight1D::sqrt_one_plus_b2);

/// Sphere measure (d = 1) inducing exactly the profile's reconstruction on
/// all of R. The linear term costs two atoms (relu(x) - relu(-x) = x).
SphereMeasure profile_to_measure(const Profile1D& p);

/// Push-forward of a d = 1 measure to its profile: each atom with inner
/// weight w != 0 yields curvature mass weight*|w| at -b/w; f0 and df0 are
/// read off the measure at 0 (value and backward derivative).
Profile1D measure_to_profile(const SphereMeasure& mu);

/// Profile of r -> f(r * nu) for unit nu. Neurons with w.nu = 0 and b = 0
/// contribute nothing and are dropped.
Profile1D slice_1d(const BarronFunction& f, std::span<const double> nu);

/// The 1D measure behind slice_1d, exposed for total-variation bounds.
SphereMeasure slice_measure(const SphereMeasure& mu, std::span<const double> nu);

} // namespace barron
