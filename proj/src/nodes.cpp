#include "barron/nodes.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "barron/numeric.hpp"

namespace barron {

namespace {

double halton(std::uint64_t index, int base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                           31, 37, 41, 43, 47, 53, 59, 61, 67, 71};

std::vector<double> circle_nodes(int count) {
    std::vector<double> out(2 * count);
    for (int i = 0; i < count; ++i) {
        const double th = 2.0 * M_PI * (i + 0.5) / count;
        out[2 * i] = std::cos(th);
        out[2 * i + 1] = std::sin(th);
    }
    return out;
}

std::vector<double> fibonacci_nodes(int count) {
    // Uniform first coordinate so that quadrature of functions of w_1 is a
    // midpoint rule; golden-angle azimuth in the (w2, w3) plane.
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    std::vector<double> out(3 * count);
    for (int i = 0; i < count; ++i) {
        const double z = 1.0 - (2.0 * i + 1.0) / count;
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double th = golden * i;
        out[3 * i] = z;
        out[3 * i + 1] = rho * std::cos(th);
        out[3 * i + 2] = rho * std::sin(th);
    }
    return out;
}

void whiten(Eigen::MatrixXd& w) {
    // Enforce sum w w^T = (rows/cols) I; each sweep transforms by M^{-1/2}
    // and renormalizes rows, converging linearly.
    const int d = static_cast<int>(w.cols());
    for (int sweep = 0; sweep < 64; ++sweep) {
        Eigen::MatrixXd m = (w.transpose() * w) * (static_cast<double>(d) / w.rows());
        if ((m - Eigen::MatrixXd::Identity(d, d)).lpNorm<Eigen::Infinity>() < 1e-13) break;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
        w = w * es.operatorInverseSqrt();
        for (int i = 0; i < w.rows(); ++i) w.row(i) /= w.row(i).norm();
    }
}

// Riesz-energy descent over the antipodally mirrored set; spreads the half
// set toward quasi-uniformity. The exponent is the ambient dimension.
// Operates on a flat row-major (m x dim) buffer of unit rows.
void riesz_smooth(std::vector<double>& w, int m, int dim, int iters) {
    const int s = dim;

    // 1 / r^(s+2) via the squared distance: r^(s+2) = (r^2)^((s+2)/2)
    auto inv_pow = [s](double r2) {
        double acc = 1.0;
        int e = s + 2;
        if (e % 2 == 1) {
            acc = std::sqrt(r2);
            e -= 1;
        }
        for (int half = e / 2; half > 0; --half) acc *= r2;
        return 1.0 / acc;
    };

    std::vector<double> g(m * dim);
    std::vector<double> buf(dim);
    for (int it = 0; it < iters; ++it) {
        std::fill(g.begin(), g.end(), 0.0);
        for (int i = 0; i < m; ++i) {
            const double* wi = w.data() + i * dim;
            double* gi = g.data() + i * dim;
            for (int j = 0; j < m; ++j) {
                const double* wj = w.data() + j * dim;
                if (j != i) {
                    double r2 = 0.0;
                    for (int k = 0; k < dim; ++k) {
                        buf[k] = wi[k] - wj[k];
                        r2 += buf[k] * buf[k];
                    }
                    const double c = inv_pow(r2);
                    for (int k = 0; k < dim; ++k) gi[k] += c * buf[k];
                }
                double r2 = 0.0;
                for (int k = 0; k < dim; ++k) {
                    buf[k] = wi[k] + wj[k];
                    r2 += buf[k] * buf[k];
                }
                const double c = inv_pow(r2);
                for (int k = 0; k < dim; ++k) gi[k] += c * buf[k];
            }
            // tangential component
            double proj = 0.0;
            for (int k = 0; k < dim; ++k) proj += gi[k] * wi[k];
            for (int k = 0; k < dim; ++k) gi[k] -= proj * wi[k];
        }
        double gmax = 0.0;
        for (int i = 0; i < m; ++i) {
            double n2 = 0.0;
            for (int k = 0; k < dim; ++k) n2 += g[i * dim + k] * g[i * dim + k];
            gmax = std::max(gmax, std::sqrt(n2));
        }
        if (gmax == 0.0) break;
        const double tau = 0.1 / gmax;
        for (int i = 0; i < m; ++i) {
            double n2 = 0.0;
            for (int k = 0; k < dim; ++k) {
                w[i * dim + k] += tau * g[i * dim + k];
                n2 += w[i * dim + k] * w[i * dim + k];
            }
            const double inv = 1.0 / std::sqrt(n2);
            for (int k = 0; k < dim; ++k) w[i * dim + k] *= inv;
        }
    }
}

std::vector<double> halton_whitened_nodes(int dim, int count, std::uint64_t seed) {
    if (dim > 20) throw std::invalid_argument("sphere_nodes: dim too large");
    int pairs = (count + 1) / 2;
    Eigen::MatrixXd w(pairs, dim);
    for (int i = 0; i < pairs; ++i) {
        const std::uint64_t idx = 1 + seed * static_cast<std::uint64_t>(pairs) + i;
        double nrm = 0.0;
        for (int k = 0; k < dim; ++k) {
            double u = halton(idx, kPrimes[k]);
            u = std::min(std::max(u, 1e-12), 1.0 - 1e-12);
            w(i, k) = normal_quantile(u);
            nrm += w(i, k) * w(i, k);
        }
        w.row(i) /= std::sqrt(nrm);
    }

    whiten(w);
    {
        std::vector<double> flat(pairs * dim);
        for (int i = 0; i < pairs; ++i)
            for (int k = 0; k < dim; ++k) flat[i * dim + k] = w(i, k);
        riesz_smooth(flat, pairs, dim, 30);
        for (int i = 0; i < pairs; ++i)
            for (int k = 0; k < dim; ++k) w(i, k) = flat[i * dim + k];
    }
    whiten(w);

    std::vector<double> out;
    out.reserve(2 * pairs * dim);
    for (int i = 0; i < pairs; ++i)
        for (int k = 0; k < dim; ++k) out.push_back(w(i, k));
    for (int i = 0; i < pairs; ++i)
        for (int k = 0; k < dim; ++k) out.push_back(-w(i, k));
    return out;
}

} // namespace

std::vector<double> sphere_nodes(int dim, int count, std::uint64_t seed, bool antipodal) {
    if (dim < 1) throw std::invalid_argument("sphere_nodes: dim must be >= 1");
    if (dim == 1) return {1.0, -1.0};
    if (count < 2) throw std::invalid_argument("sphere_nodes: count must be >= 2");
    if (antipodal && count % 2 != 0) ++count;

    if (dim == 2) return circle_nodes(count);  // antipodal whenever count is even
    if (dim == 3 && !antipodal) return fibonacci_nodes(count);
    return halton_whitened_nodes(dim, count, seed);
}

RadialRule gaussian_radial_rule(int dim, int order) {
    if (dim < 1 || order < 1)
        throw std::invalid_argument("gaussian_radial_rule: bad arguments");
    const double alpha = 0.5 * dim - 1.0;

    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(order, order);
    for (int i = 0; i < order; ++i) {
        jac(i, i) = 2.0 * i + alpha + 1.0;
        if (i + 1 < order) {
            const double off = std::sqrt((i + 1.0) * (i + 1.0 + alpha));
            jac(i, i + 1) = off;
            jac(i + 1, i) = off;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);

    RadialRule rule;
    rule.r.resize(order);
    rule.weight.resize(order);
    for (int i = 0; i < order; ++i) {
        const double s = es.eigenvalues()(i);  // node of the s = r^2/2 rule
        rule.r[i] = std::sqrt(2.0 * s);
        const double v0 = es.eigenvectors()(0, i);
        rule.weight[i] = v0 * v0;  // already normalized to sum 1
    }
    return rule;
}

} // namespace barron
