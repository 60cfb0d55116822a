#include "barron/constructions.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "barron/nodes.hpp"

namespace barron {

namespace {

int default_sphere_count(int dim) {
    if (dim == 1) return 2;
    if (dim == 2) return 256;
    return 512;
}

/// Midpoint grid for a curvature density on the line, graded through
/// xi = sinh(s) so nodes concentrate near the origin while the range still
/// reaches +-xi_max. Returns (location, density * cell weight) pairs.
std::vector<std::pair<double, double>> graded_density_nodes(
    const std::function<double(double)>& density, int count, double xi_max) {
    const double S = std::asinh(xi_max);
    const double ds = 2.0 * S / count;
    std::vector<std::pair<double, double>> out;
    out.reserve(count);
    for (int j = 0; j < count; ++j) {
        const double s = -S + (j + 0.5) * ds;
        const double xi = std::sinh(s);
        out.emplace_back(xi, density(xi) * std::cosh(s) * ds);
    }
    return out;
}

/// Appends the neuron a * relu(w.x + b) with w = scale * u, u unit in R^d,
/// as a density node of a measure over R^{d+1}.
void push_node(std::vector<double>& ws, std::vector<double>& ds, int d, double a,
               std::span<const double> u, double scale, double b) {
    const double r = std::sqrt(scale * scale + b * b);
    if (r == 0.0 || a == 0.0) return;
    ws.push_back(a * r);
    for (int k = 0; k < d; ++k) ds.push_back(scale * u[k] / r);
    ds.push_back(b / r);
}

/// Tensor assembly shared by gaussian_decay and higher_decay: direction
/// nodes (uniform weights) x curvature nodes of a 1D kernel profile, plus
/// the kernel's value at 0 as a constant node. Linear kernel terms cancel
/// exactly across antipodal direction pairs and are omitted.
SphereMeasure spherical_kernel_average(
    int dim, std::span<const double> dirs, std::size_t n_dirs, double h0,
    const std::vector<std::pair<double, double>>& curvature,
    const std::vector<double>& radial_scales, const std::vector<double>& radial_weights) {
    std::vector<double> nw, nd;
    nw.reserve(n_dirs * curvature.size() * radial_scales.size() + 1);
    const double p = 1.0 / static_cast<double>(n_dirs);
    for (std::size_t l = 0; l < n_dirs; ++l) {
        std::span<const double> u{dirs.data() + l * dim, static_cast<std::size_t>(dim)};
        for (std::size_t k = 0; k < radial_scales.size(); ++k) {
            const double pq = p * radial_weights[k];
            const double rk = radial_scales[k];
            for (const auto& [xi, mass] : curvature) {
                if (mass == 0.0) continue;
                if (xi >= 0.0)
                    push_node(nw, nd, dim, pq * mass, u, rk, -xi);
                else
                    push_node(nw, nd, dim, pq * mass, u, -rk, xi);
            }
        }
    }
    if (h0 != 0.0) {
        nw.push_back(h0);
        for (int k = 0; k < dim; ++k) nd.push_back(0.0);
        nd.push_back(1.0);
    }
    return SphereMeasure::create(dim, {}, {}, std::move(nw), std::move(nd));
}

} // namespace

EuclideanNorm euclidean_norm(int dim, int n_nodes, std::uint64_t seed) {
    if (dim < 1) throw std::invalid_argument("euclidean_norm: dim must be >= 1");
    if (n_nodes < 16) throw std::invalid_argument("euclidean_norm: need at least 16 nodes");

    if (dim == 1) {
        // relu(x) + relu(-x) = |x| exactly; mean relu(u_1) over {+1,-1} is 1/2.
        std::vector<double> w = {1.0, 1.0};
        std::vector<double> d = {1.0, 0.0, -1.0, 0.0};
        EuclideanNorm out{BarronFunction(SphereMeasure::create(1, std::move(w), std::move(d))),
                          2.0};
        return out;
    }

    const std::vector<double> nodes = sphere_nodes(dim, n_nodes, seed);
    const std::size_t count = nodes.size() / dim;

    KahanSum mean;
    for (std::size_t i = 0; i < count; ++i) mean.add(relu(nodes[i * dim]));
    const double estimate = mean.value() / static_cast<double>(count);
    const double c_d = 1.0 / estimate;

    std::vector<double> nw(count, c_d / static_cast<double>(count));
    std::vector<double> nd;
    nd.reserve(count * (dim + 1));
    for (std::size_t i = 0; i < count; ++i) {
        for (int k = 0; k < dim; ++k) nd.push_back(nodes[i * dim + k]);
        nd.push_back(0.0);
    }
    return {BarronFunction(SphereMeasure::create(dim, {}, {}, std::move(nw), std::move(nd))),
            c_d};
}

BarronFunction partial_norm(int dim, int k, int n_nodes, std::uint64_t seed) {
    if (k < 1 || k > dim)
        throw std::invalid_argument("partial_norm: k must lie in [1, dim], got " +
                                    std::to_string(k));
    const SphereMeasure& inner = euclidean_norm(k, n_nodes, seed).function.measure;

    auto embed = [&](std::size_t count, auto weight_at, auto dir_at,
                     std::vector<double>& ws, std::vector<double>& ds) {
        for (std::size_t i = 0; i < count; ++i) {
            ws.push_back(weight_at(i));
            auto dir = dir_at(i);
            for (int j = 0; j < k; ++j) ds.push_back(dir[j]);
            for (int j = k; j <= dim; ++j) ds.push_back(0.0);
        }
    };
    std::vector<double> aw, ad, nw, nd;
    embed(
        inner.atom_count(), [&](std::size_t i) { return inner.atom_weight(i); },
        [&](std::size_t i) { return inner.atom_dir(i); }, aw, ad);
    embed(
        inner.node_count(), [&](std::size_t i) { return inner.node_weight(i); },
        [&](std::size_t i) { return inner.node_dir(i); }, nw, nd);
    return BarronFunction(SphereMeasure::create(dim, std::move(aw), std::move(ad),
                                                std::move(nw), std::move(nd)));
}

BarronFunction square_fn(int n_nodes) {
    if (n_nodes < 2) throw std::invalid_argument("square_fn: need at least 2 nodes");
    std::vector<double> nw, nd;
    nw.reserve(n_nodes);
    nd.reserve(2 * n_nodes);
    for (int j = 0; j < n_nodes; ++j) {
        const double t = (j + 0.5) / n_nodes;
        const double r = std::sqrt(1.0 + t * t);
        nw.push_back(2.0 / n_nodes * r);
        nd.push_back(1.0 / r);
        nd.push_back(-t / r);
    }
    return BarronFunction(SphereMeasure::create(1, {}, {}, std::move(nw), std::move(nd)));
}

BarronFunction gaussian_decay(int dim, int n_radial, int n_sphere, std::uint64_t seed) {
    if (dim < 1) throw std::invalid_argument("gaussian_decay: dim must be >= 1");
    if (n_radial < 16) throw std::invalid_argument("gaussian_decay: n_radial too small");
    if (n_sphere <= 0) n_sphere = default_sphere_count(dim);

    // Radial average of exp(-z^2/2) over the Gaussian radius collapses to
    // g(t) = (1 + t^2)^{-d/2}; only the direction average remains.
    const double d = dim;
    auto g2 = [d](double t) {
        const double q = 1.0 + t * t;
        return d * ((d + 1.0) * t * t - 1.0) * std::pow(q, -(d + 4.0) / 2.0);
    };
    const auto curvature = graded_density_nodes(g2, n_radial, 1e4);

    // The kernel is even with zero slope at 0, so no linear cancellation is
    // required and the plain lattice can be used.
    const std::vector<double> dirs = sphere_nodes(dim, n_sphere, seed);
    const std::size_t n_dirs = dirs.size() / dim;
    return BarronFunction(spherical_kernel_average(dim, dirs, n_dirs, /*h0=*/1.0,
                                                   curvature, {1.0}, {1.0}));
}

Profile1D gaussian_bump_profile(int n_nodes) {
    Profile1D p;
    p.f0 = 1.0;
    p.df0 = 0.0;
    auto h2 = [](double z) { return (z * z - 1.0) * std::exp(-0.5 * z * z); };
    p.d2_nodes = graded_density_nodes(h2, n_nodes, 16.0);
    return p;
}

DecayRecipe solve_decay_kernel(int k, int basis_size) {
    if (k < 0) throw std::invalid_argument("solve_decay_kernel: k must be >= 0");
    if (basis_size < k + 3)
        throw std::invalid_argument("solve_decay_kernel: basis_size must be >= k + 3");

    const int B = basis_size;
    const double delta = 2.0 / (B + 1);
    auto grid = [&](int q) { return -1.0 + q * delta; };  // q = 0 .. B+1

    // Exact moment of a unit hat centered at c against y^m.
    auto hat_moment = [&](double c, int m) {
        auto P = [m](double a, double b) {
            return (std::pow(b, m + 1) - std::pow(a, m + 1)) / (m + 1);
        };
        auto Q = [m, &P](double a, double b) {
            return (std::pow(b, m + 2) - std::pow(a, m + 2)) / (m + 2);
        };
        const double left = (delta - c) / delta * P(c - delta, c) + Q(c - delta, c) / delta;
        const double right = (delta + c) / delta * P(c, c + delta) - Q(c, c + delta) / delta;
        return left + right;
    };

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(std::max(k, 1), B);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < B; ++i) A(j, i) = hat_moment(grid(i + 1), 2 * j);

    Eigen::VectorXd v0(B);
    for (int i = 0; i < B; ++i) {
        const double c = grid(i + 1);
        v0(i) = std::abs(c) < delta ? 1.0 - std::abs(c) / delta : 0.0;
    }

    Eigen::VectorXd coeff(B);
    if (k == 0) {
        coeff = v0;
    } else {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
        const double sv_tol = 1e-12 * svd.singularValues()(0);
        int rank = 0;
        for (int i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()(i) > sv_tol) ++rank;
        const int null_dim = B - rank;
        if (null_dim <= 0)
            throw std::invalid_argument("solve_decay_kernel: constraints leave no kernel");
        const Eigen::MatrixXd Vn = svd.matrixV().rightCols(null_dim);
        coeff = Vn * (Vn.transpose() * v0);
    }
    const double h0 = v0.dot(coeff);
    if (std::abs(h0) < 1e-10)
        throw std::invalid_argument(
            "solve_decay_kernel: no kernel element with h(0) != 0 for k = " +
            std::to_string(k) + ", basis_size = " + std::to_string(B));
    coeff /= h0;

    // Curvature of the hat combination: second differences of the padded
    // coefficients at every grid point, including the endpoints.
    Profile1D p;
    auto e = [&](int q) { return (q >= 1 && q <= B) ? coeff(q - 1) : 0.0; };
    for (int q = 0; q <= B + 1; ++q) {
        const double mass = (e(q - 1) - 2.0 * e(q) + e(q + 1)) / delta;
        if (mass != 0.0) p.d2_atoms.emplace_back(grid(q), mass);
    }
    p.f0 = 1.0;
    // Left-continuous slope at 0: slope of the segment whose right endpoint
    // is the first grid point >= 0.
    {
        int q = 0;
        while (q + 1 <= B + 1 && grid(q + 1) < 0.0) ++q;
        p.df0 = (e(q + 1) - e(q)) / delta;
    }

    return DecayRecipe{k, std::move(p), 512};
}

namespace {

/// Breakpoints and exact segment integration of a piecewise-linear profile
/// against exp(-y^2 / (2 r^2)) over the support interval.
struct PiecewiseLinear {
    std::vector<double> breaks;  // sorted, includes both support endpoints
    std::vector<double> values;  // profile values at breaks

    static PiecewiseLinear from_profile(const Profile1D& p, double lo, double hi) {
        PiecewiseLinear pl;
        pl.breaks.push_back(lo);
        for (const auto& [t, m] : p.d2_atoms)
            if (t > lo && t < hi) pl.breaks.push_back(t);
        for (const auto& [t, m] : p.d2_nodes)
            if (t > lo && t < hi) pl.breaks.push_back(t);
        pl.breaks.push_back(hi);
        std::sort(pl.breaks.begin(), pl.breaks.end());
        pl.breaks.erase(std::unique(pl.breaks.begin(), pl.breaks.end()), pl.breaks.end());
        pl.values.reserve(pl.breaks.size());
        for (double t : pl.breaks) pl.values.push_back(p(t));
        return pl;
    }

    double gaussian_integral(double r) const {
        // sum over segments of int (alpha y + beta) exp(-y^2/(2 r^2)) dy
        const double r2 = r * r;
        const double s = r * std::sqrt(M_PI / 2.0);
        KahanSum acc;
        for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
            const double a = breaks[i], b = breaks[i + 1];
            const double alpha = (values[i + 1] - values[i]) / (b - a);
            const double beta = values[i] - alpha * a;
            const double expa = std::exp(-a * a / (2.0 * r2));
            const double expb = std::exp(-b * b / (2.0 * r2));
            const double erfa = std::erf(a / (std::sqrt(2.0) * r));
            const double erfb = std::erf(b / (std::sqrt(2.0) * r));
            acc.add(alpha * r2 * (expa - expb) + beta * s * (erfb - erfa));
        }
        return acc.value();
    }

    double moment(int m) const {
        // exact integral of the piecewise-linear profile against y^m
        KahanSum acc;
        for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
            const double a = breaks[i], b = breaks[i + 1];
            const double alpha = (values[i + 1] - values[i]) / (b - a);
            const double beta = values[i] - alpha * a;
            const double pm = (std::pow(b, m + 1) - std::pow(a, m + 1)) / (m + 1);
            const double pm1 = (std::pow(b, m + 2) - std::pow(a, m + 2)) / (m + 2);
            acc.add(alpha * pm1 + beta * pm);
        }
        return acc.value();
    }
};

void validate_recipe(const DecayRecipe& recipe) {
    const Profile1D& h = recipe.h_profile;
    if (std::abs(h(1.0)) > 1e-10 || std::abs(h(-1.0)) > 1e-10)
        throw std::invalid_argument("higher_decay: kernel must vanish at +-1");
    if (h(0.0) == 0.0) throw std::invalid_argument("higher_decay: kernel must have h(0) != 0");

    const auto pl = PiecewiseLinear::from_profile(h, -1.0, 1.0);
    for (int j = 0; j < recipe.k; ++j) {
        const double m = pl.moment(2 * j);
        if (std::abs(m) > 1e-10)
            throw std::invalid_argument("higher_decay: moment constraint " +
                                        std::to_string(j) + " violated (integral = " +
                                        std::to_string(m) + ")");
    }
}

} // namespace

HigherDecay higher_decay(const DecayRecipe& recipe, int dim, int n_sphere,
                         int n_radial_gauss, std::uint64_t seed) {
    if (dim < 1) throw std::invalid_argument("higher_decay: dim must be >= 1");
    validate_recipe(recipe);

    auto pl = std::make_shared<PiecewiseLinear>(
        PiecewiseLinear::from_profile(recipe.h_profile, -1.0, 1.0));
    const double h0 = recipe.h_profile(0.0);
    auto radial = [pl, h0](double r) {
        if (r < 0.0) throw std::invalid_argument("higher_decay radial: r must be >= 0");
        if (r < 1e-8) return h0;
        return pl->gaussian_integral(r) / (std::sqrt(2.0 * M_PI) * r);
    };

    // Measure: direction nodes x Gaussian radius nodes x kernel curvature.
    std::vector<std::pair<double, double>> curvature = recipe.h_profile.d2_atoms;
    curvature.insert(curvature.end(), recipe.h_profile.d2_nodes.begin(),
                     recipe.h_profile.d2_nodes.end());

    const RadialRule rr = gaussian_radial_rule(dim, n_radial_gauss);
    const std::vector<double> dirs = sphere_nodes(dim, n_sphere, seed, /*antipodal=*/true);
    const std::size_t n_dirs = dirs.size() / dim;

    SphereMeasure mu =
        spherical_kernel_average(dim, dirs, n_dirs, h0, curvature, rr.r, rr.weight);
    return HigherDecay{std::move(radial), BarronFunction(std::move(mu))};
}

} // namespace barron
