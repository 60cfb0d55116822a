#include "barron/singular.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "barron/eval.hpp"

namespace barron {

namespace {

/// Incremental orthonormal basis of a direction span.
struct Span {
    Eigen::MatrixXd q;  // (d+1) x rank, orthonormal columns

    // Distance of unit vector u to the span (sine of the principal angle).
    double gap(const Eigen::VectorXd& u) const {
        if (q.cols() == 0) return 1.0;
        Eigen::VectorXd r = u - q * (q.transpose() * u);
        return r.norm();
    }

    void absorb(const Eigen::VectorXd& u, double tol) {
        Eigen::VectorXd r = u;
        if (q.cols() > 0) r -= q * (q.transpose() * u);
        const double n = r.norm();
        if (n <= tol) return;  // already inside
        q.conservativeResize(u.size(), q.cols() + 1);
        q.col(q.cols() - 1) = r / n;
    }
};

} // namespace

std::vector<Stratum> stratify(const SphereMeasure& mu, double group_tol) {
    if (mu.node_count() > 0)
        throw std::invalid_argument(
            "stratify: measure has density nodes; the absolutely continuous part is "
            "C^1-smooth and is not stratified -- check derivatives instead");

    const int d = mu.dim();
    const int n = d + 1;

    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < mu.atom_count(); ++i)
        if (mu.atom_weight(i) != 0.0) order.push_back(i);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(mu.atom_weight(a)) > std::abs(mu.atom_weight(b));
    });

    std::vector<Stratum> strata;
    std::vector<Span> spans;
    for (std::size_t idx : order) {
        Eigen::VectorXd u(n);
        auto dir = mu.atom_dir(idx);
        for (int k = 0; k < n; ++k) u(k) = dir[k];

        bool placed = false;
        for (std::size_t s = 0; s < spans.size(); ++s) {
            if (spans[s].gap(u) < group_tol) {
                spans[s].absorb(u, 1e-14);
                strata[s].atom_indices.push_back(idx);
                placed = true;
                break;
            }
        }
        if (!placed) {
            spans.emplace_back();
            spans.back().absorb(u, 0.0);
            strata.emplace_back();
            strata.back().atom_indices.push_back(idx);
        }
    }

    // Make groups maximal: a stratum whose span lies inside another's is
    // absorbed by it. Greedy insertion can leave such pairs when a span
    // grows after a later stratum was opened.
    auto contained = [&](const Span& inner, const Span& outer) {
        if (inner.q.cols() > outer.q.cols()) return false;
        for (int c = 0; c < inner.q.cols(); ++c)
            if (outer.gap(inner.q.col(c)) >= group_tol) return false;
        return true;
    };
    for (bool merged = true; merged;) {
        merged = false;
        for (std::size_t i = 0; i < strata.size() && !merged; ++i) {
            for (std::size_t j = 0; j < strata.size(); ++j) {
                if (j == i || !contained(spans[j], spans[i])) continue;
                strata[i].atom_indices.insert(strata[i].atom_indices.end(),
                                              strata[j].atom_indices.begin(),
                                              strata[j].atom_indices.end());
                strata.erase(strata.begin() + j);
                spans.erase(spans.begin() + j);
                merged = true;
                break;
            }
        }
    }

    for (std::size_t s = 0; s < strata.size(); ++s) {
        Stratum& st = strata[s];
        std::sort(st.atom_indices.begin(), st.atom_indices.end());
        const int m = static_cast<int>(st.atom_indices.size());

        Eigen::MatrixXd w_rows(m, d);
        Eigen::VectorXd rhs(m);
        for (int i = 0; i < m; ++i) {
            auto dir = mu.atom_dir(st.atom_indices[i]);
            for (int k = 0; k < d; ++k) w_rows(i, k) = dir[k];
            rhs(i) = -dir[d];
        }

        Eigen::JacobiSVD<Eigen::MatrixXd> svd(w_rows,
                                              Eigen::ComputeThinU | Eigen::ComputeThinV);
        const double sv0 = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
        // Rank at the grouping tolerance, so near-duplicate directions
        // admitted into one stratum do not inflate the span; capped so that
        // large chaining tolerances still resolve genuine spread.
        const double rank_tol = std::min(group_tol, 0.1) * std::max(sv0, 1.0);
        int rank = 0;
        for (int i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()(i) > rank_tol) ++rank;
        st.subspace_dim = rank;
        st.singular_dim = d - rank;

        // Minimum-norm least-squares point of the linear system w.x = -b.
        Eigen::VectorXd x = svd.solve(rhs);
        if ((w_rows * x - rhs).lpNorm<Eigen::Infinity>() <= 1e-8)
            st.anchor = std::vector<double>(x.data(), x.data() + d);
    }
    return strata;
}

SingularReport singular_report(const BarronFunction& f, double group_tol) {
    SingularReport report;
    report.dim = f.dim();
    if (f.measure.atom_count() == 0) return report;  // C^1 component only
    report.strata = stratify(f.measure, group_tol);

    const SphereMeasure& mu = f.measure;
    const int d = mu.dim();
    for (Stratum& st : report.strata) {
        if (!st.anchor) {
            st.jump_witness = 0.0;
            st.cancelled = false;
            continue;
        }
        // Dominant direction of the member w-span, from the same SVD geometry.
        Eigen::MatrixXd w_rows(st.atom_indices.size(), d);
        for (std::size_t i = 0; i < st.atom_indices.size(); ++i) {
            auto dir = mu.atom_dir(st.atom_indices[i]);
            for (int k = 0; k < d; ++k) w_rows(i, k) = dir[k];
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(w_rows, Eigen::ComputeThinV);
        Eigen::VectorXd v = svd.matrixV().col(0);

        // Jump of the stratum's own sub-measure at the anchor along v.
        std::vector<double> aw;
        std::vector<double> ad;
        for (std::size_t idx : st.atom_indices) {
            aw.push_back(mu.atom_weight(idx));
            auto dir = mu.atom_dir(idx);
            ad.insert(ad.end(), dir.begin(), dir.end());
        }
        BarronFunction sub(SphereMeasure::create(d, std::move(aw), std::move(ad)));
        st.jump_witness =
            directional_derivative(sub, *st.anchor, {v.data(), static_cast<std::size_t>(d)})
                .jump;
        st.cancelled = std::abs(st.jump_witness) <= 1e-10;
    }
    return report;
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::string SingularReport::to_json() const {
    std::ostringstream os;
    os << "{\"dim\":" << dim << ",\"strata\":[";
    for (std::size_t s = 0; s < strata.size(); ++s) {
        const Stratum& st = strata[s];
        if (s) os << ",";
        os << "{\"atoms\":[";
        for (std::size_t i = 0; i < st.atom_indices.size(); ++i)
            os << (i ? "," : "") << st.atom_indices[i];
        os << "],\"subspace_dim\":" << st.subspace_dim
           << ",\"singular_dim\":" << st.singular_dim << ",\"anchor\":";
        if (st.anchor) {
            os << "[";
            for (std::size_t i = 0; i < st.anchor->size(); ++i)
                os << (i ? "," : "") << fmt((*st.anchor)[i]);
            os << "]";
        } else {
            os << "null";
        }
        os << ",\"jump\":" << fmt(st.jump_witness)
           << ",\"cancelled\":" << (st.cancelled ? "true" : "false") << "}";
    }
    os << "]}";
    return os.str();
}

std::string SingularReport::to_csv() const {
    std::ostringstream os;
    os << "stratum,atoms,subspace_dim,singular_dim,jump,cancelled\n";
    for (std::size_t s = 0; s < strata.size(); ++s) {
        const Stratum& st = strata[s];
        os << s << "," << st.atom_indices.size() << "," << st.subspace_dim << ","
           << st.singular_dim << "," << fmt(st.jump_witness) << ","
           << (st.cancelled ? 1 : 0) << "\n";
    }
    return os.str();
}

} // namespace barron
