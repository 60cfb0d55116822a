#include "barron/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace barron {

namespace {

// Lexicographic comparison of two directions of length n.
bool dir_less(const double* a, const double* b, int n) {
    for (int k = 0; k < n; ++k) {
        if (a[k] < b[k]) return true;
        if (a[k] > b[k]) return false;
    }
    return false;
}

double dist2(const double* a, const double* b, int n) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
        const double d = a[k] - b[k];
        s += d * d;
    }
    return s;
}

struct Entry {
    double w;
    const double* dir;
};

void sort_entries(std::vector<Entry>& es, int n) {
    std::sort(es.begin(), es.end(),
              [n](const Entry& a, const Entry& b) { return dir_less(a.dir, b.dir, n); });
}

} // namespace

SphereMeasure SphereMeasure::create(int dim, std::vector<double> atom_weights,
                                    std::vector<double> atom_dirs,
                                    std::vector<double> node_weights,
                                    std::vector<double> node_dirs) {
    if (dim < 1) throw std::invalid_argument("SphereMeasure: dim must be >= 1");
    const int n = dim + 1;
    if (atom_dirs.size() != atom_weights.size() * n ||
        node_dirs.size() != node_weights.size() * n)
        throw std::invalid_argument("SphereMeasure: weight/direction size mismatch");

    auto normalize = [&](std::vector<double>& dirs, std::size_t count, const char* what) {
        for (std::size_t i = 0; i < count; ++i) {
            double* d = dirs.data() + i * n;
            const double r = norm2({d, static_cast<std::size_t>(n)});
            if (r == 0.0)
                throw std::invalid_argument(std::string("SphereMeasure: zero ") + what +
                                            " direction at index " + std::to_string(i));
            if (std::abs(r - 1.0) > kUnitTol)
                for (int k = 0; k < n; ++k) d[k] /= r;
        }
    };
    normalize(atom_dirs, atom_weights.size(), "atom");
    normalize(node_dirs, node_weights.size(), "node");

    SphereMeasure m;
    m.dim_ = dim;

    // Atoms: sort by direction, then merge clusters whose directions lie
    // within the angular tolerance (chord and angle coincide at this scale).
    // The sorted-window sweep only compares candidates whose first
    // coordinates are within tolerance.
    {
        std::vector<Entry> es(atom_weights.size());
        for (std::size_t i = 0; i < es.size(); ++i)
            es[i] = {atom_weights[i], atom_dirs.data() + i * n};
        sort_entries(es, n);

        const double tol2 = kDedupTol * kDedupTol;
        std::vector<int> owner(es.size(), -1);
        std::vector<std::size_t> reps;
        for (std::size_t i = 0; i < es.size(); ++i) {
            // reps are in ascending first-coordinate order; only a trailing
            // window can be within the merge tolerance.
            for (auto it = reps.rbegin(); it != reps.rend(); ++it) {
                if (es[i].dir[0] - es[*it].dir[0] > kDedupTol) break;
                if (dist2(es[i].dir, es[*it].dir, n) <= tol2) {
                    owner[i] = static_cast<int>(*it);
                    break;
                }
            }
            if (owner[i] < 0) {
                owner[i] = static_cast<int>(i);
                reps.push_back(i);
            }
        }

        m.atom_w_.reserve(reps.size());
        m.atom_dir_.reserve(reps.size() * n);
        for (std::size_t r : reps) {
            KahanSum w;
            for (std::size_t i = r; i < es.size(); ++i)
                if (owner[i] == static_cast<int>(r)) w.add(es[i].w);
            m.atom_w_.push_back(w.value());
            m.atom_dir_.insert(m.atom_dir_.end(), es[r].dir, es[r].dir + n);
        }
    }

    // Density nodes are quadrature samples; no merging, just canonical order.
    {
        std::vector<Entry> es(node_weights.size());
        for (std::size_t i = 0; i < es.size(); ++i)
            es[i] = {node_weights[i], node_dirs.data() + i * n};
        std::stable_sort(es.begin(), es.end(), [n](const Entry& a, const Entry& b) {
            return dir_less(a.dir, b.dir, n);
        });
        m.node_w_.reserve(es.size());
        m.node_dir_.reserve(es.size() * n);
        for (const Entry& e : es) {
            m.node_w_.push_back(e.w);
            m.node_dir_.insert(m.node_dir_.end(), e.dir, e.dir + n);
        }
    }

    return m;
}

double SphereMeasure::evaluate(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim_)
        throw std::invalid_argument("SphereMeasure::evaluate: point has dimension " +
                                    std::to_string(x.size()) + ", measure has " +
                                    std::to_string(dim_));
    const int n = dim_ + 1;
    KahanSum acc;
    for (std::size_t i = 0; i < atom_w_.size(); ++i) {
        const double* d = atom_dir_.data() + i * n;
        double z = d[dim_];
        for (int k = 0; k < dim_; ++k) z += d[k] * x[k];
        if (z > 0.0) acc.add(atom_w_[i] * z);
    }
    for (std::size_t i = 0; i < node_w_.size(); ++i) {
        const double* d = node_dir_.data() + i * n;
        double z = d[dim_];
        for (int k = 0; k < dim_; ++k) z += d[k] * x[k];
        if (z > 0.0) acc.add(node_w_[i] * z);
    }
    return acc.value();
}

BarronFunction::BarronFunction(SphereMeasure m)
    : measure(std::move(m)), norm_upper_bound(total_variation(measure)) {}

SphereMeasure from_neurons(const std::vector<Neuron>& neurons, int dim) {
    const int n = dim + 1;
    std::vector<double> weights;
    std::vector<double> dirs;
    weights.reserve(neurons.size());
    dirs.reserve(neurons.size() * n);
    for (std::size_t i = 0; i < neurons.size(); ++i) {
        const Neuron& nr = neurons[i];
        if (static_cast<int>(nr.w.size()) != dim)
            throw std::invalid_argument("from_neurons: neuron " + std::to_string(i) +
                                        " has inner weight of dimension " +
                                        std::to_string(nr.w.size()) + ", expected " +
                                        std::to_string(dim));
        double r2 = nr.b * nr.b;
        for (double v : nr.w) r2 += v * v;
        const double r = std::sqrt(r2);
        if (r == 0.0)
            throw std::invalid_argument("from_neurons: neuron " + std::to_string(i) +
                                        " has zero inner weight vector (w, b)");
        weights.push_back(nr.a * r);
        for (double v : nr.w) dirs.push_back(v / r);
        dirs.push_back(nr.b / r);
    }
    return SphereMeasure::create(dim, std::move(weights), std::move(dirs));
}

double total_variation(const SphereMeasure& mu) {
    KahanSum s;
    for (double w : mu.atom_weights()) s.add(std::abs(w));
    for (double w : mu.node_weights()) s.add(std::abs(w));
    return s.value();
}

OddEvenSplit odd_even_split(const SphereMeasure& mu) {
    const int n = mu.ambient();
    std::vector<double> ew, en_dir, ow, on_dir;
    std::vector<double> ew_n, en_dir_n, ow_n, on_dir_n;

    auto push = [n](std::vector<double>& ws, std::vector<double>& ds, double w,
                    std::span<const double> dir, double sign) {
        ws.push_back(w);
        for (int k = 0; k < n; ++k) ds.push_back(sign * dir[k]);
    };

    for (std::size_t i = 0; i < mu.atom_count(); ++i) {
        const double half = 0.5 * mu.atom_weight(i);
        auto d = mu.atom_dir(i);
        push(ew, en_dir, half, d, 1.0);
        push(ew, en_dir, half, d, -1.0);
        push(ow, on_dir, half, d, 1.0);
        push(ow, on_dir, -half, d, -1.0);
    }
    for (std::size_t i = 0; i < mu.node_count(); ++i) {
        const double half = 0.5 * mu.node_weight(i);
        auto d = mu.node_dir(i);
        push(ew_n, en_dir_n, half, d, 1.0);
        push(ew_n, en_dir_n, half, d, -1.0);
        push(ow_n, on_dir_n, half, d, 1.0);
        push(ow_n, on_dir_n, -half, d, -1.0);
    }

    OddEvenSplit out;
    out.even = SphereMeasure::create(mu.dim(), std::move(ew), std::move(en_dir),
                                     std::move(ew_n), std::move(en_dir_n));
    out.odd = SphereMeasure::create(mu.dim(), std::move(ow), std::move(on_dir),
                                    std::move(ow_n), std::move(on_dir_n));
    return out;
}

std::vector<double> linear_part(const SphereMeasure& mu) {
    const SphereMeasure odd = odd_even_split(mu).odd;
    const int n = odd.ambient();
    std::vector<KahanSum> acc(n);
    for (std::size_t i = 0; i < odd.atom_count(); ++i) {
        auto d = odd.atom_dir(i);
        for (int k = 0; k < n; ++k) acc[k].add(odd.atom_weight(i) * d[k]);
    }
    for (std::size_t i = 0; i < odd.node_count(); ++i) {
        auto d = odd.node_dir(i);
        for (int k = 0; k < n; ++k) acc[k].add(odd.node_weight(i) * d[k]);
    }
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k) out[k] = 0.5 * acc[k].value();
    return out;
}

SphereMeasure homogeneous_reduce(const SphereMeasure& mu) {
    const int d = mu.dim();

    auto reduce = [&](std::size_t count, auto weight_at, auto dir_at,
                      std::vector<double>& ws, std::vector<double>& ds) {
        for (std::size_t i = 0; i < count; ++i) {
            auto dir = dir_at(i);
            const double wn = norm2(dir.first(d));
            if (wn == 0.0) continue;  // pure-bias atoms scale to zero
            ws.push_back(weight_at(i) * wn);
            for (int k = 0; k < d; ++k) ds.push_back(dir[k] / wn);
            ds.push_back(0.0);
        }
    };

    std::vector<double> aw, ad, nw, nd;
    reduce(
        mu.atom_count(), [&](std::size_t i) { return mu.atom_weight(i); },
        [&](std::size_t i) { return mu.atom_dir(i); }, aw, ad);
    reduce(
        mu.node_count(), [&](std::size_t i) { return mu.node_weight(i); },
        [&](std::size_t i) { return mu.node_dir(i); }, nw, nd);
    return SphereMeasure::create(d, std::move(aw), std::move(ad), std::move(nw),
                                 std::move(nd));
}

SphereMeasure as_atomic(const SphereMeasure& mu) {
    const int n = mu.ambient();
    std::vector<double> w(mu.atom_weights().begin(), mu.atom_weights().end());
    std::vector<double> d;
    d.reserve((mu.atom_count() + mu.node_count()) * n);
    for (std::size_t i = 0; i < mu.atom_count(); ++i) {
        auto dir = mu.atom_dir(i);
        d.insert(d.end(), dir.begin(), dir.end());
    }
    for (std::size_t i = 0; i < mu.node_count(); ++i) {
        w.push_back(mu.node_weight(i));
        auto dir = mu.node_dir(i);
        d.insert(d.end(), dir.begin(), dir.end());
    }
    return SphereMeasure::create(mu.dim(), std::move(w), std::move(d));
}

std::vector<Neuron> to_neurons(const SphereMeasure& mu) {
    const int d = mu.dim();
    std::vector<Neuron> out;
    out.reserve(mu.atom_count() + mu.node_count());
    auto emit = [&](double w, std::span<const double> dir) {
        Neuron nr;
        nr.a = w;
        nr.w.assign(dir.begin(), dir.begin() + d);
        nr.b = dir[d];
        out.push_back(std::move(nr));
    };
    for (std::size_t i = 0; i < mu.atom_count(); ++i) emit(mu.atom_weight(i), mu.atom_dir(i));
    for (std::size_t i = 0; i < mu.node_count(); ++i) emit(mu.node_weight(i), mu.node_dir(i));
    return out;
}

} // namespace barron
