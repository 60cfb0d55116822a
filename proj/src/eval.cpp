#include "barron/eval.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <thread>

namespace barron {

double active_set_tolerance(std::span<const double> x) {
    return 1e-9 * (1.0 + norm2(x));
}

double evaluate(const BarronFunction& f, std::span<const double> x) {
    for (double v : x)
        if (!std::isfinite(v)) throw std::invalid_argument("evaluate: non-finite point");
    return f.measure.evaluate(x);
}

DirectionalDerivatives directional_derivative(const BarronFunction& f,
                                              std::span<const double> x,
                                              std::span<const double> v) {
    const SphereMeasure& mu = f.measure;
    const int d = mu.dim();
    if (static_cast<int>(x.size()) != d || static_cast<int>(v.size()) != d)
        throw std::invalid_argument("directional_derivative: dimension mismatch");
    if (norm2(v) == 0.0)
        throw std::invalid_argument("directional_derivative: zero direction");

    const double tau = active_set_tolerance(x);
    KahanSum smooth, act_pos, act_neg;

    auto absorb = [&](double w, std::span<const double> dir) {
        double z = dir[d];
        double wv = 0.0;
        for (int k = 0; k < d; ++k) {
            z += dir[k] * x[k];
            wv += dir[k] * v[k];
        }
        if (std::abs(z) <= tau) {
            if (wv > 0.0)
                act_pos.add(w * wv);
            else if (wv < 0.0)
                act_neg.add(w * (-wv));
        } else if (z > tau) {
            smooth.add(w * wv);
        }
    };
    for (std::size_t i = 0; i < mu.atom_count(); ++i) absorb(mu.atom_weight(i), mu.atom_dir(i));
    for (std::size_t i = 0; i < mu.node_count(); ++i) absorb(mu.node_weight(i), mu.node_dir(i));

    DirectionalDerivatives out;
    const double s = smooth.value();
    out.forward = s + act_pos.value();
    out.backward = s - act_neg.value();
    out.jump = out.forward - out.backward;
    return out;
}

BarronFunction asymptotic_profile(const BarronFunction& f) {
    return BarronFunction(homogeneous_reduce(f.measure));
}

std::function<double(std::span<const double>)> bounded_part(const BarronFunction& f) {
    auto full = std::make_shared<BarronFunction>(f);
    auto profile = std::make_shared<BarronFunction>(asymptotic_profile(f));
    return [full, profile](std::span<const double> x) {
        return full->measure.evaluate(x) - profile->measure.evaluate(x);
    };
}

std::vector<double> evaluate_batch(const BarronFunction& f,
                                   std::span<const double> points, int threads) {
    const int d = f.dim();
    if (points.size() % d != 0)
        throw std::invalid_argument("evaluate_batch: point buffer not a multiple of dim");
    const std::size_t count = points.size() / d;
    std::vector<double> out(count);

    auto run = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            out[i] = f.measure.evaluate(points.subspan(i * d, d));
    };

    if (threads <= 1 || count < 2) {
        run(0, count);
        return out;
    }
    const std::size_t nt = std::min<std::size_t>(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    const std::size_t chunk = (count + nt - 1) / nt;
    for (std::size_t t = 0; t < nt; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(run, lo, hi);
    }
    for (auto& th : pool) th.join();
    return out;
}

} // namespace barron
