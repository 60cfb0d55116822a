#include "barron/train.hpp"

#include <cmath>
#include <stdexcept>

namespace barron {

RiskSpec::RiskSpec(int dim, std::vector<double> points, std::vector<double> labels,
                   std::vector<double> weights)
    : dim_(dim), points_(std::move(points)), labels_(std::move(labels)),
      weights_(std::move(weights)) {
    if (dim_ < 1) throw std::invalid_argument("RiskSpec: dim must be >= 1");
    if (labels_.empty()) throw std::invalid_argument("RiskSpec: empty targets");
    if (points_.size() != labels_.size() * dim_)
        throw std::invalid_argument("RiskSpec: point/label size mismatch");
    if (weights_.empty()) weights_.assign(labels_.size(), 1.0 / labels_.size());
    if (weights_.size() != labels_.size())
        throw std::invalid_argument("RiskSpec: weight count mismatch");
    KahanSum total;
    for (double w : weights_) {
        if (w < 0.0) throw std::invalid_argument("RiskSpec: negative weight");
        total.add(w);
    }
    if (total.value() <= 0.0) throw std::invalid_argument("RiskSpec: zero weight sum");
    for (double& w : weights_) w /= total.value();
}

double FlowState::operator()(std::span<const double> x) const {
    KahanSum acc;
    for (const Neuron& p : particles) {
        double z = p.b;
        for (std::size_t k = 0; k < p.w.size(); ++k) z += p.w[k] * x[k];
        if (z > 0.0) acc.add(p.a * z);
    }
    return particles.empty() ? 0.0 : acc.value() / static_cast<double>(particles.size());
}

double FlowState::path_norm() const {
    KahanSum acc;
    for (const Neuron& p : particles) {
        double r2 = p.b * p.b;
        for (double v : p.w) r2 += v * v;
        acc.add(std::abs(p.a) * std::sqrt(r2));
    }
    return particles.empty() ? 0.0 : acc.value() / static_cast<double>(particles.size());
}

double FlowState::second_moment() const {
    KahanSum acc;
    for (const Neuron& p : particles) {
        double s = p.a * p.a + p.b * p.b;
        for (double v : p.w) s += v * v;
        acc.add(s);
    }
    return particles.empty() ? 0.0 : acc.value() / static_cast<double>(particles.size());
}

double risk(const FlowState& state, const RiskSpec& spec) {
    if (state.dim() != spec.dim())
        throw std::invalid_argument("risk: state/target dimension mismatch");
    KahanSum acc;
    for (std::size_t j = 0; j < spec.count(); ++j) {
        const double r = state(spec.point(j)) - spec.label(j);
        acc.add(spec.weight(j) * r * r);
    }
    return acc.value();
}

std::vector<Neuron> grad(const FlowState& state, const RiskSpec& spec) {
    if (state.dim() != spec.dim())
        throw std::invalid_argument("grad: state/target dimension mismatch");
    const std::size_t m = state.particles.size();
    const int d = spec.dim();

    std::vector<Neuron> g(m);
    for (std::size_t i = 0; i < m; ++i) {
        g[i].a = 0.0;
        g[i].w.assign(d, 0.0);
        g[i].b = 0.0;
    }

    // residual-weighted accumulation over data points, canonical data order
    for (std::size_t j = 0; j < spec.count(); ++j) {
        auto x = spec.point(j);
        const double coef = 2.0 * spec.weight(j) * (state(x) - spec.label(j)) /
                            static_cast<double>(m);
        for (std::size_t i = 0; i < m; ++i) {
            const Neuron& p = state.particles[i];
            double z = p.b;
            for (int k = 0; k < d; ++k) z += p.w[k] * x[k];
            if (z > 0.0) {
                g[i].a += coef * z;
                for (int k = 0; k < d; ++k) g[i].w[k] += coef * p.a * x[k];
                g[i].b += coef * p.a;
            }
        }
    }
    return g;
}

namespace {

void axpy(std::vector<Neuron>& dst, double c, const std::vector<Neuron>& src) {
    for (std::size_t i = 0; i < dst.size(); ++i) {
        dst[i].a += c * src[i].a;
        for (std::size_t k = 0; k < dst[i].w.size(); ++k) dst[i].w[k] += c * src[i].w[k];
        dst[i].b += c * src[i].b;
    }
}

std::vector<Neuron> rk4_step(const FlowState& state, const RiskSpec& spec, double dt,
                             double speed) {
    auto field = [&](const std::vector<Neuron>& pts) {
        FlowState tmp;
        tmp.particles = pts;
        std::vector<Neuron> g = grad(tmp, spec);
        for (Neuron& n : g) {
            n.a *= -speed;
            for (double& v : n.w) v *= -speed;
            n.b *= -speed;
        }
        return g;
    };

    const std::vector<Neuron>& y = state.particles;
    std::vector<Neuron> k1 = field(y);
    std::vector<Neuron> s = y;
    axpy(s, 0.5 * dt, k1);
    std::vector<Neuron> k2 = field(s);
    s = y;
    axpy(s, 0.5 * dt, k2);
    std::vector<Neuron> k3 = field(s);
    s = y;
    axpy(s, dt, k3);
    std::vector<Neuron> k4 = field(s);

    std::vector<Neuron> out = y;
    axpy(out, dt / 6.0, k1);
    axpy(out, dt / 3.0, k2);
    axpy(out, dt / 3.0, k3);
    axpy(out, dt / 6.0, k4);
    return out;
}

} // namespace

FlowState flow(FlowState state, const RiskSpec& spec, double dt, int n_steps,
               TimeRescale rescale) {
    if (dt <= 0.0) throw std::invalid_argument("flow: dt must be positive");
    const double speed =
        rescale == TimeRescale::by_m ? static_cast<double>(state.particles.size()) : 1.0;
    const double dt_max = dt;

    double current_risk = risk(state, spec);
    if (state.history.empty())
        state.history.push_back(
            {state.t, current_risk, state.path_norm(), state.second_moment()});

    for (int step = 0; step < n_steps; ++step) {
        for (;;) {
            std::vector<Neuron> next = rk4_step(state, spec, dt, speed);
            FlowState trial;
            trial.particles = std::move(next);
            const double next_risk = risk(trial, spec);
            if (next_risk <= current_risk + 1e-12 * std::max(1.0, current_risk)) {
                state.particles = std::move(trial.particles);
                state.t += dt;
                current_risk = next_risk;
                state.history.push_back(
                    {state.t, current_risk, state.path_norm(), state.second_moment()});
                dt = std::min(dt * 1.5, dt_max);
                break;
            }
            dt *= 0.5;
            if (dt < 1e-12)
                throw std::runtime_error("flow: stalled at t = " + std::to_string(state.t) +
                                         " with risk " + std::to_string(current_risk) +
                                         " (dt underflow)");
        }
    }
    return state;
}

const Neuron& IndexedView::particle_at(double theta) const {
    if (!(theta >= 0.0 && theta < 1.0))
        throw std::invalid_argument("IndexedView: theta outside [0, 1)");
    const std::size_t m = particles_.size();
    std::size_t k = static_cast<std::size_t>(theta * static_cast<double>(m));
    if (k >= m) k = m - 1;
    return particles_[k];
}

double IndexedView::integrate(std::span<const double> x) const {
    KahanSum acc;
    for (const Neuron& p : particles_) {
        double z = p.b;
        for (std::size_t k = 0; k < p.w.size(); ++k) z += p.w[k] * x[k];
        if (z > 0.0) acc.add(p.a * z);
    }
    return particles_.empty() ? 0.0 : acc.value() / static_cast<double>(particles_.size());
}

IndexedView indexed_view(const FlowState& state) { return IndexedView(state); }

FlowState init_symmetric(int m, int dim, double scale, std::uint64_t seed) {
    if (m < 2 || m % 2 != 0)
        throw std::invalid_argument("init_symmetric: m must be even and >= 2");
    std::mt19937_64 rng(seed);
    FlowState s;
    s.particles.reserve(m);
    for (int i = 0; i < m / 2; ++i) {
        Neuron n;
        n.a = scale * (2.0 * uniform01(rng) - 1.0);
        n.w.resize(dim);
        for (double& v : n.w) v = scale * (2.0 * uniform01(rng) - 1.0);
        n.b = scale * (2.0 * uniform01(rng) - 1.0);
        Neuron mirror = n;
        mirror.a = -n.a;
        s.particles.push_back(std::move(n));
        s.particles.push_back(std::move(mirror));
    }
    return s;
}

FlowState init_he(int m, int dim, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("init_he: m must be >= 1");
    std::mt19937_64 rng(seed);
    NormalSampler normal;
    FlowState s;
    s.particles.reserve(m);
    // a ~ N(0, 2/m), w ~ N(0, I/d), b = 0, so E[sum a^2 |w|^2] = 2.
    const double sa = std::sqrt(2.0 / static_cast<double>(m));
    const double sw = std::sqrt(1.0 / static_cast<double>(dim));
    for (int i = 0; i < m; ++i) {
        Neuron n;
        n.a = sa * normal(rng);
        n.w.resize(dim);
        for (double& v : n.w) v = sw * normal(rng);
        n.b = 0.0;
        s.particles.push_back(std::move(n));
    }
    return s;
}

} // namespace barron
