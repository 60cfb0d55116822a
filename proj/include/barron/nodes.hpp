#pragma once

#include <cstdint>
#include <vector>

namespace barron {

/// Deterministic, near-uniform node sets on the unit sphere of R^dim.
///  dim = 1: the two points {+1, -1}.
///  dim = 2: midpoint lattice on the circle.
///  dim = 3: Fibonacci lattice (uniform first coordinate, golden-angle
///           azimuth in the remaining plane).
///  dim >= 4: Halton points pushed through the normal quantile, normalized,
///            paired antipodally and iteratively whitened so the second
///            moment matrix equals I/dim to near machine precision.
/// If `antipodal` is set the returned set is exactly symmetric under
/// negation (count is rounded up to even as needed).
/// Returns row-major (count x dim).
std::vector<double> sphere_nodes(int dim, int count, std::uint64_t seed = 0,
                                 bool antipodal = false);

/// Gauss rule for the radial factor of a standard Gaussian in R^dim:
/// weights integrate g against the normalized density ~ r^{dim-1} e^{-r^2/2}
/// on (0, inf). Nodes/weights from the Golub-Welsch eigenproblem of the
/// generalized Laguerre recurrence with alpha = dim/2 - 1.
struct RadialRule {
    std::vector<double> r;
    std::vector<double> weight;  // sums to 1
};
RadialRule gaussian_radial_rule(int dim, int order);

} // namespace barron
