#pragma once

#include <optional>
#include <string>
#include <vector>

#include "barron/measure.hpp"

namespace barron {

/// A group of atoms whose directions span a common linear subspace of
/// R^{d+1}. The induced singular stratum of f is the affine set where all
/// member hyperplanes {w.x + b = 0} meet; its dimension is d minus the
/// dimension of the span of the member inner weights.
struct Stratum {
    std::vector<std::size_t> atom_indices;
    int subspace_dim = 0;   // s = dim span of member w-components
    int singular_dim = 0;   // d - s
    std::optional<std::vector<double>> anchor;  // least-squares point on the stratum
    double jump_witness = 0.0;  // derivative jump of the member sub-measure at the anchor
    bool cancelled = false;     // |jump_witness| <= 1e-10
};

/// Groups the atoms of an atomic measure into strata. Greedy insertion in
/// descending |weight| order: an atom joins the first stratum whose current
/// direction span it extends by a principal angle below `group_tol`
/// (the span then absorbs the atom), otherwise it starts a new stratum.
/// Zero-weight atoms are skipped. Throws if density nodes are present --
/// the absolutely continuous part belongs to the C^1-smooth component and
/// has no atomic stratification.
std::vector<Stratum> stratify(const SphereMeasure& mu, double group_tol = 1e-8);

struct SingularReport {
    int dim = 0;
    std::vector<Stratum> strata;

    std::string to_json() const;
    std::string to_csv() const;
};

/// Stratifies and evaluates, per stratum, the derivative jump of its own
/// sub-measure at the anchor along the dominant direction of the stratum's
/// w-span; a stratum with |jump| <= 1e-10 is flagged cancelled.
SingularReport singular_report(const BarronFunction& f, double group_tol = 1e-8);

} // namespace barron
