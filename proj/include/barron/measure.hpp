#pragma once

#include <span>
#include <vector>

#include "barron/numeric.hpp"

namespace barron {

/// One ReLU unit a * relu(w.x + b).
struct Neuron {
    double a = 0.0;
    std::vector<double> w;
    double b = 0.0;
};

/// Finite signed measure on the unit sphere of R^{d+1}, where a direction
/// packs an inner weight w (first d entries) and a bias (last entry).
/// Atoms carry point masses; density_nodes carry quadrature-weighted samples
/// of an absolutely continuous part. Directions are stored unit-normalized,
/// atoms deduplicated within angular tolerance 1e-10 and sorted
/// lexicographically, so every reduction order is canonical.
class SphereMeasure {
  public:
    static constexpr double kDedupTol = 1e-10;  // angular merge tolerance for atoms
    static constexpr double kUnitTol = 1e-12;   // accepted deviation from |dir| = 1

    SphereMeasure() = default;

    /// Builds the canonical form: normalizes directions, merges duplicate
    /// atoms (weights summed exactly), sorts atoms and nodes.
    /// `weights[i]` pairs with `dirs[i*(d+1) .. i*(d+1)+d]`.
    static SphereMeasure create(int dim, std::vector<double> atom_weights,
                                std::vector<double> atom_dirs,
                                std::vector<double> node_weights = {},
                                std::vector<double> node_dirs = {});

    int dim() const { return dim_; }
    int ambient() const { return dim_ + 1; }

    std::size_t atom_count() const { return atom_w_.size(); }
    std::size_t node_count() const { return node_w_.size(); }

    double atom_weight(std::size_t i) const { return atom_w_[i]; }
    std::span<const double> atom_dir(std::size_t i) const {
        return {atom_dir_.data() + i * (dim_ + 1), static_cast<std::size_t>(dim_ + 1)};
    }
    double node_weight(std::size_t i) const { return node_w_[i]; }
    std::span<const double> node_dir(std::size_t i) const {
        return {node_dir_.data() + i * (dim_ + 1), static_cast<std::size_t>(dim_ + 1)};
    }

    std::span<const double> atom_weights() const { return atom_w_; }
    std::span<const double> node_weights() const { return node_w_; }

    bool empty() const { return atom_w_.empty() && node_w_.empty(); }

    /// f(x) = sum_i weight_i * relu(dir_i . (x,1)) over atoms and nodes,
    /// compensated summation in canonical order.
    double evaluate(std::span<const double> x) const;

  private:
    int dim_ = 0;
    std::vector<double> atom_w_;
    std::vector<double> atom_dir_;  // flat, stride dim_+1
    std::vector<double> node_w_;
    std::vector<double> node_dir_;
};

/// A Barron function held through one representing measure. The stored bound
/// is the total variation of that representation; the true norm is an
/// infimum over all representing measures and is not computed here.
struct BarronFunction {
    SphereMeasure measure;
    double norm_upper_bound = 0.0;

    explicit BarronFunction(SphereMeasure m);
    BarronFunction() = default;

    int dim() const { return measure.dim(); }
    double operator()(std::span<const double> x) const { return measure.evaluate(x); }
};

/// Lifts a finite network sum_i a_i relu(w_i.x + b_i) onto the sphere:
/// atom i gets weight a_i*|(w_i,b_i)| and direction (w_i,b_i)/|(w_i,b_i)|.
/// Throws if some (w_i, b_i) vanishes, naming the offending index.
SphereMeasure from_neurons(const std::vector<Neuron>& neurons, int dim);

/// Sum of |weight| over atoms and density nodes.
double total_variation(const SphereMeasure& mu);

/// Splits into the symmetric and antisymmetric parts under dir -> -dir:
/// even = (mu + T#mu)/2, odd = (mu - T#mu)/2.
struct OddEvenSplit {
    SphereMeasure even;
    SphereMeasure odd;
};
OddEvenSplit odd_even_split(const SphereMeasure& mu);

/// (1/2) * sum weight * dir over the odd part; the first d entries are the
/// gradient of the affine component, the last entry its constant.
std::vector<double> linear_part(const SphereMeasure& mu);

/// Push-forward of |w| * mu along (w,b) -> (w/|w|, 0). Pure-bias atoms are
/// dropped; the result induces lim_{r->inf} f(r x)/r.
SphereMeasure homogeneous_reduce(const SphereMeasure& mu);

/// Inverse of from_neurons on the canonical form: one neuron per atom with
/// |(w,b)| = 1. Density nodes are converted the same way.
std::vector<Neuron> to_neurons(const SphereMeasure& mu);

/// Reinterprets quadrature nodes as point masses. A discretized measure is
/// a finite atomic measure; this view exposes it to atomic-only analyses.
SphereMeasure as_atomic(const SphereMeasure& mu);

} // namespace barron
