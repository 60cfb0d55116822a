#pragma once

#include <cstdint>
#include <vector>

#include "barron/measure.hpp"

namespace barron {

/// Quadratic-loss regression targets: weighted points with labels,
/// weights normalized to sum 1.
class RiskSpec {
  public:
    RiskSpec(int dim, std::vector<double> points, std::vector<double> labels,
             std::vector<double> weights = {});

    int dim() const { return dim_; }
    std::size_t count() const { return labels_.size(); }
    std::span<const double> point(std::size_t j) const {
        return {points_.data() + j * dim_, static_cast<std::size_t>(dim_)};
    }
    double label(std::size_t j) const { return labels_[j]; }
    double weight(std::size_t j) const { return weights_[j]; }

  private:
    int dim_ = 0;
    std::vector<double> points_;
    std::vector<double> labels_;
    std::vector<double> weights_;
};

struct HistoryEntry {
    double t = 0.0;
    double risk = 0.0;
    double path_norm = 0.0;
    double second_moment = 0.0;
};

/// Particle ensemble for the mean form f(x) = (1/m) sum a_i relu(w_i.x + b_i),
/// plus the recorded training trajectory.
struct FlowState {
    std::vector<Neuron> particles;
    double t = 0.0;
    std::vector<HistoryEntry> history;

    int dim() const { return particles.empty() ? 0 : static_cast<int>(particles[0].w.size()); }
    double operator()(std::span<const double> x) const;

    double path_norm() const;      // (1/m) sum |a_i| |(w_i, b_i)|
    double second_moment() const;  // (1/m) sum (a_i^2 + |w_i|^2 + b_i^2)
};

double risk(const FlowState& state, const RiskSpec& spec);

/// Analytic risk gradient per particle, with the subgradient convention
/// relu'(0) = 0. Layout matches Neuron: (d/da, d/dw..., d/db).
std::vector<Neuron> grad(const FlowState& state, const RiskSpec& spec);

enum class TimeRescale { by_m, none };

/// Explicit RK4 integration of Theta' = -m grad R (rescale by_m) or
/// Theta' = -grad R (none). A step that increases the risk is rejected and
/// retried at dt/2; dt recovers by a factor 1.5 after accepted steps, capped
/// at the initial dt. Throws if dt underflows 1e-12 (flow stalled), carrying
/// the last state in the message. History gains one entry per accepted step.
FlowState flow(FlowState state, const RiskSpec& spec, double dt, int n_steps,
               TimeRescale rescale = TimeRescale::by_m);

/// Step-function view a(theta), w(theta) on [0,1): theta in [(k-1)/m, k/m)
/// maps to particle k. The integral over theta reproduces the mean-form
/// network value with identical arithmetic.
class IndexedView {
  public:
    explicit IndexedView(const FlowState& state) : particles_(state.particles) {}

    const Neuron& particle_at(double theta) const;
    double a(double theta) const { return particle_at(theta).a; }
    std::span<const double> w(double theta) const { return particle_at(theta).w; }
    double b(double theta) const { return particle_at(theta).b; }

    /// int_0^1 a_theta relu(w_theta . x) dtheta
    double integrate(std::span<const double> x) const;

  private:
    std::vector<Neuron> particles_;
};

IndexedView indexed_view(const FlowState& state);

/// m particles with mirrored pairs (a, w, b) and (-a, w, b), entries uniform
/// in [-scale, scale]; the induced function vanishes identically at init.
FlowState init_symmetric(int m, int dim, double scale, std::uint64_t seed);

/// Random init scaled so that E[sum_i |a_i|^2 |w_i|^2] = 2.
FlowState init_he(int m, int dim, std::uint64_t seed);

} // namespace barron
