#pragma once

#include <cstdint>
#include <functional>

#include "barron/measure.hpp"
#include "barron/profile1d.hpp"

namespace barron {

/// Euclidean norm |x| as a uniform spherical average of single neurons with
/// zero bias. The scale constant is always estimated from the node set
/// itself, c_d = 1 / mean(relu(u_1)), never from a closed form, so the
/// construction evaluates |x| consistently at any node count.
/// d = 1 returns the exact two-atom measure and c_1 = 2.
struct EuclideanNorm {
    BarronFunction function;
    double c_d = 0.0;
};
EuclideanNorm euclidean_norm(int dim, int n_nodes, std::uint64_t seed = 0);

/// sqrt(x_1^2 + ... + x_k^2) in ambient dimension d: the k-dimensional
/// Euclidean construction embedded with zero trailing coordinates.
BarronFunction partial_norm(int dim, int k, int n_nodes, std::uint64_t seed = 0);

/// x^2 on [0,1] via the midpoint discretization of 2 * int_0^1 relu(x-t) dt.
BarronFunction square_fn(int n_nodes);

/// f(x) = (|x|^2 + 1)^{-1/2} as the spherical average of the radial kernel
/// g(t) = (1 + t^2)^{-d/2}, which is the exact Gaussian radial average of
/// exp(-z^2/2). n_radial counts curvature nodes of g (sinh-graded midpoint
/// rule); n_sphere counts direction nodes (antipodally paired). Everything
/// is stored as density nodes, so the result is C^1 territory.
BarronFunction gaussian_decay(int dim, int n_radial = 512, int n_sphere = 0,
                              std::uint64_t seed = 0);

/// Profile of the Gaussian bump exp(-z^2/2); kernel behind gaussian_decay's
/// norm bound.
Profile1D gaussian_bump_profile(int n_nodes = 512);

/// Kernel recipe for rapidly decaying constructions: h is supported in
/// [-1,1], h(0) != 0, and its first k even moments vanish.
struct DecayRecipe {
    int k = 0;
    Profile1D h_profile;
    int radial_quadrature = 512;
};

/// Finds h in the span of hat functions on a uniform grid of [-1,1]
/// (vanishing at the endpoints) whose even moments 0..k-1 vanish,
/// maximizing |h(0)| over the unit ball of the constraint nullspace and
/// rescaled so h(0) = 1. Throws if basis_size < k + 3 or no nullspace
/// element has h(0) != 0.
DecayRecipe solve_decay_kernel(int k, int basis_size);

/// Gaussian direction-average of the recipe kernel. The radial evaluator
/// computes f(r e_1) = (2 pi)^{-1/2} r^{-1} int h(y) exp(-y^2/(2 r^2)) dy
/// exactly per linear segment of h (erf/exp closed forms); the measure is a
/// sphere x radius x curvature tensor quadrature of the same average.
struct HigherDecay {
    std::function<double(double)> radial;  // r >= 0 -> f(r e_1)
    BarronFunction function;
};
HigherDecay higher_decay(const DecayRecipe& recipe, int dim, int n_sphere = 256,
                         int n_radial_gauss = 48, std::uint64_t seed = 0);

} // namespace barron
