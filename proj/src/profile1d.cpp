#include "barron/profile1d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "barron/eval.hpp"

namespace barron {

namespace {

double kernel(double x, double t) { return t >= 0.0 ? relu(x - t) : relu(t - x); }

} // namespace

double Profile1D::operator()(double x) const {
    KahanSum acc;
    acc.add(f0);
    acc.add(df0 * x);
    for (const auto& [loc, mass] : d2_atoms) acc.add(mass * kernel(x, loc));
    for (const auto& [loc, mass] : d2_nodes) acc.add(mass * kernel(x, loc));
    return acc.value();
}

Profile1D profile_from_curvature(double f0, double df0,
                                 const std::function<double(double)>& density,
                                 double lo, double hi, int n_nodes) {
    if (!(hi > lo) || n_nodes < 1)
        throw std::invalid_argument("profile_from_curvature: bad interval or node count");
    Profile1D p;
    p.f0 = f0;
    p.df0 = df0;
    const double h = (hi - lo) / n_nodes;
    p.d2_nodes.reserve(n_nodes);
    for (int j = 0; j < n_nodes; ++j) {
        const double t = lo + (j + 0.5) * h;
        p.d2_nodes.emplace_back(t, density(t) * h);
    }
    return p;
}

double norm_1d(const Profile1D& p, Weight1D weight) {
    KahanSum acc;
    acc.add(std::abs(p.f0));
    acc.add(std::abs(p.df0));
    auto w = [&](double b) {
        return weight == Weight1D::unit ? 1.0 : std::sqrt(1.0 + b * b);
    };
    for (const auto& [loc, mass] : p.d2_atoms) acc.add(std::abs(mass) * w(loc));
    for (const auto& [loc, mass] : p.d2_nodes) acc.add(std::abs(mass) * w(loc));
    return acc.value();
}

SphereMeasure profile_to_measure(const Profile1D& p) {
    std::vector<double> aw, ad, nw, nd;
    auto push = [](std::vector<double>& ws, std::vector<double>& ds, double weight,
                   double w, double b) {
        ws.push_back(weight);
        ds.push_back(w);
        ds.push_back(b);
    };
    if (p.f0 != 0.0) push(aw, ad, p.f0, 0.0, 1.0);
    if (p.df0 != 0.0) {
        push(aw, ad, p.df0, 1.0, 0.0);
        push(aw, ad, -p.df0, -1.0, 0.0);
    }
    // Curvature kernel at t: relu(x - t) is the neuron (w, b) = (1, -t);
    // the mirrored kernel for t < 0 is (-1, t). Scale by |(w, b)|.
    auto emit = [&](const std::vector<std::pair<double, double>>& src,
                    std::vector<double>& ws, std::vector<double>& ds) {
        for (const auto& [t, mass] : src) {
            if (mass == 0.0) continue;
            const double r = std::sqrt(1.0 + t * t);
            if (t >= 0.0)
                push(ws, ds, mass * r, 1.0 / r, -t / r);
            else
                push(ws, ds, mass * r, -1.0 / r, t / r);
        }
    };
    emit(p.d2_atoms, aw, ad);
    emit(p.d2_nodes, nw, nd);
    return SphereMeasure::create(1, std::move(aw), std::move(ad), std::move(nw),
                                 std::move(nd));
}

Profile1D measure_to_profile(const SphereMeasure& mu) {
    if (mu.dim() != 1)
        throw std::invalid_argument("measure_to_profile: measure must have dim 1");

    Profile1D p;
    auto absorb = [&](double weight, std::span<const double> dir,
                      std::vector<std::pair<double, double>>& dst) {
        const double w = dir[0], b = dir[1];
        if (w == 0.0) return;  // constant; captured by f0 below
        dst.emplace_back(-b / w, weight * std::abs(w));
    };
    for (std::size_t i = 0; i < mu.atom_count(); ++i)
        absorb(mu.atom_weight(i), mu.atom_dir(i), p.d2_atoms);
    for (std::size_t i = 0; i < mu.node_count(); ++i)
        absorb(mu.node_weight(i), mu.node_dir(i), p.d2_nodes);
    std::sort(p.d2_atoms.begin(), p.d2_atoms.end());
    std::sort(p.d2_nodes.begin(), p.d2_nodes.end());

    // Two functions with the same curvature measure differ by an affine map,
    // and the canonical kernels vanish to first order at 0 from the left.
    // Reading off f(0) and the backward derivative pins the affine part.
    const double x0[1] = {0.0};
    p.f0 = mu.evaluate(x0);

    const double tau = active_set_tolerance(x0);
    KahanSum slope;
    auto slope_at_zero = [&](double weight, std::span<const double> dir) {
        const double w = dir[0], b = dir[1];
        if (b > tau)
            slope.add(weight * w);
        else if (std::abs(b) <= tau && w < 0.0)
            slope.add(weight * w);  // backward derivative picks up -relu(-w.v)
    };
    for (std::size_t i = 0; i < mu.atom_count(); ++i)
        slope_at_zero(mu.atom_weight(i), mu.atom_dir(i));
    for (std::size_t i = 0; i < mu.node_count(); ++i)
        slope_at_zero(mu.node_weight(i), mu.node_dir(i));
    p.df0 = slope.value();
    return p;
}

SphereMeasure slice_measure(const SphereMeasure& mu, std::span<const double> nu) {
    const int d = mu.dim();
    if (static_cast<int>(nu.size()) != d)
        throw std::invalid_argument("slice_measure: direction dimension mismatch");

    std::vector<double> aw, ad, nw, nd;
    auto absorb = [&](double weight, std::span<const double> dir,
                      std::vector<double>& ws, std::vector<double>& ds) {
        const double s = dot(dir.first(d), nu);
        const double b = dir[d];
        const double r = std::sqrt(s * s + b * b);
        if (r == 0.0) return;  // relu(0) == 0 identically along the slice
        ws.push_back(weight * r);
        ds.push_back(s / r);
        ds.push_back(b / r);
    };
    for (std::size_t i = 0; i < mu.atom_count(); ++i)
        absorb(mu.atom_weight(i), mu.atom_dir(i), aw, ad);
    for (std::size_t i = 0; i < mu.node_count(); ++i)
        absorb(mu.node_weight(i), mu.node_dir(i), nw, nd);
    return SphereMeasure::create(1, std::move(aw), std::move(ad), std::move(nw),
                                 std::move(nd));
}

Profile1D slice_1d(const BarronFunction& f, std::span<const double> nu) {
    const double len = norm2(nu);
    if (std::abs(len - 1.0) > 1e-9)
        throw std::invalid_argument("slice_1d: direction must be unit length");
    return measure_to_profile(slice_measure(f.measure, nu));
}

} // namespace barron
