// barronkit: command-line front end for the Barron-space toolkit.
// Exit codes: 0 success, 2 validation error (one-line reason on stderr).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include "barron/constructions.hpp"
#include "barron/eval.hpp"
#include "barron/io.hpp"
#include "barron/sampler.hpp"
#include "barron/singular.hpp"
#include "barron/train.hpp"

namespace {

int thread_budget() {
    if (const char* env = std::getenv("BARRON_KIT_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

std::string locate(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

barron::SphereMeasure load_measure(const std::string& path) {
    const std::string text = barron::read_file(path);
    try {
        return barron::measure_from_json(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(path + ": malformed JSON at " + locate(text, e.byte) +
                                 " (" + e.what() + ")");
    }
}

barron::Profile1D load_profile(const std::string& path) {
    const std::string text = barron::read_file(path);
    try {
        return barron::profile_from_json(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(path + ": malformed JSON at " + locate(text, e.byte) +
                                 " (" + e.what() + ")");
    }
}

std::vector<int> parse_widths(const std::string& spec) {
    std::vector<int> out;
    std::istringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const int m = std::atoi(tok.c_str());
        if (m < 1) throw std::runtime_error("bad width list: " + spec);
        out.push_back(m);
    }
    if (out.empty()) throw std::runtime_error("empty width list");
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"barronkit: measures on the parameter sphere for two-layer ReLU networks"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "global RNG seed")->capture_default_str();

    // ---- construct ----------------------------------------------------
    auto* construct = app.add_subcommand("construct", "build a named measure");
    construct->require_subcommand(1);

    int dim = 2, nodes = 1000, kk = 1, basis = 12, radial = 512, sphere = 0, rgauss = 48;
    std::string out_path, kernel_out, back_path;

    auto* c_euclid = construct->add_subcommand("euclidean-norm", "|x| as a spherical average");
    c_euclid->add_option("--dim", dim)->required();
    c_euclid->add_option("--nodes", nodes)->capture_default_str();
    c_euclid->add_option("--out", out_path)->required();

    auto* c_partial = construct->add_subcommand("partial-norm", "sqrt(x_1^2+...+x_k^2)");
    c_partial->add_option("--dim", dim)->required();
    c_partial->add_option("--k", kk)->required();
    c_partial->add_option("--nodes", nodes)->capture_default_str();
    c_partial->add_option("--out", out_path)->required();

    auto* c_square = construct->add_subcommand("square", "x^2 on [0,1]");
    c_square->add_option("--nodes", nodes)->capture_default_str();
    c_square->add_option("--out", out_path)->required();

    auto* c_gauss = construct->add_subcommand("gaussian-decay", "(|x|^2+1)^{-1/2}");
    c_gauss->add_option("--dim", dim)->required();
    c_gauss->add_option("--radial", radial)->capture_default_str();
    c_gauss->add_option("--sphere", sphere)->capture_default_str();
    c_gauss->add_option("--out", out_path)->required();

    auto* c_higher = construct->add_subcommand("higher-decay", "O(r^{-(2k+1)}) tail");
    c_higher->add_option("--dim", dim)->required();
    c_higher->add_option("--k", kk)->capture_default_str();
    c_higher->add_option("--basis", basis)->capture_default_str();
    c_higher->add_option("--sphere", sphere)->capture_default_str();
    c_higher->add_option("--rgauss", rgauss)->capture_default_str();
    c_higher->add_option("--out", out_path)->required();
    c_higher->add_option("--kernel-out", kernel_out, "write the 1D kernel profile JSON");

    // ---- evaluate ------------------------------------------------------
    auto* evaluate_cmd = app.add_subcommand("evaluate", "batch evaluation over a CSV of points");
    std::string measure_path, points_path;
    evaluate_cmd->add_option("--measure", measure_path)->required();
    evaluate_cmd->add_option("--points", points_path)->required();
    evaluate_cmd->add_option("--out", out_path)->required();

    // ---- norm1d ---------------------------------------------------------
    auto* norm_cmd = app.add_subcommand("norm1d", "norm of a 1D profile");
    std::string profile_path, weight_kind = "r";
    norm_cmd->add_option("--profile", profile_path)->required();
    norm_cmd->add_option("--weight", weight_kind, "'r' for sqrt(1+b^2), 'unit' for 1")
        ->capture_default_str();

    // ---- analyze ----------------------------------------------------------
    auto* analyze_cmd = app.add_subcommand("analyze", "singular structure report");
    std::string csv_path;
    double group_tol = 1e-8;
    bool atomic_view = false;
    analyze_cmd->add_option("--measure", measure_path)->required();
    analyze_cmd->add_option("--out", out_path)->required();
    analyze_cmd->add_option("--csv", csv_path, "also write a CSV summary");
    analyze_cmd->add_option("--group-tol", group_tol)->capture_default_str();
    analyze_cmd->add_flag("--atomic-view", atomic_view,
                          "treat quadrature nodes as point masses before stratifying");

    // ---- approx ----------------------------------------------------------
    auto* approx_cmd = app.add_subcommand("approx", "finite-width approximation rates");
    std::string dist_kind = "gaussian", width_spec = "64,256,1024";
    int n_seeds = 20;
    std::size_t n_mc = 4000;
    double ball_radius = 1.0;
    approx_cmd->add_option("--measure", measure_path)->required();
    approx_cmd->add_option("--dist", dist_kind, "gaussian | ball")->capture_default_str();
    approx_cmd->add_option("--radius", ball_radius)->capture_default_str();
    approx_cmd->add_option("--m", width_spec, "comma-separated widths")->capture_default_str();
    approx_cmd->add_option("--seeds", n_seeds)->capture_default_str();
    approx_cmd->add_option("--mc", n_mc, "Monte-Carlo points per error estimate")
        ->capture_default_str();
    approx_cmd->add_option("--out", out_path)->required();

    // ---- train ------------------------------------------------------------
    auto* train_cmd = app.add_subcommand("train", "mean-field gradient-flow training");
    std::string data_path, init_kind = "symmetric", rescale_kind = "m";
    int m_particles = 32, steps = 1000;
    double dt = 0.05, init_scale = 0.1;
    train_cmd->add_option("--data", data_path, "CSV with columns x_1..x_d,y")->required();
    train_cmd->add_option("--m", m_particles)->capture_default_str();
    train_cmd->add_option("--steps", steps)->capture_default_str();
    train_cmd->add_option("--dt", dt)->capture_default_str();
    train_cmd->add_option("--init", init_kind, "symmetric | he")->capture_default_str();
    train_cmd->add_option("--scale", init_scale, "symmetric init amplitude")
        ->capture_default_str();
    train_cmd->add_option("--rescale", rescale_kind, "m | none")->capture_default_str();
    train_cmd->add_option("--out", out_path)->required();

    // ---- profile-roundtrip --------------------------------------------------
    auto* round_cmd = app.add_subcommand("profile-roundtrip",
                                         "profile -> measure -> profile, with deviation");
    round_cmd->add_option("--profile", profile_path)->required();
    round_cmd->add_option("--out", out_path, "measure JSON")->required();
    round_cmd->add_option("--back", back_path, "write the recovered profile JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        std::cout << "seed: " << seed << "\n";

        if (c_euclid->parsed()) {
            auto [f, c_d] = barron::euclidean_norm(dim, nodes, seed);
            barron::write_file(out_path, barron::measure_to_json(f.measure));
            std::cout << "c_d: " << barron::format_double(c_d) << "\n";
        } else if (c_partial->parsed()) {
            auto f = barron::partial_norm(dim, kk, nodes, seed);
            barron::write_file(out_path, barron::measure_to_json(f.measure));
        } else if (c_square->parsed()) {
            auto f = barron::square_fn(nodes);
            barron::write_file(out_path, barron::measure_to_json(f.measure));
        } else if (c_gauss->parsed()) {
            auto f = barron::gaussian_decay(dim, radial, sphere, seed);
            barron::write_file(out_path, barron::measure_to_json(f.measure));
            std::cout << "tv: " << barron::format_double(f.norm_upper_bound) << "\n";
        } else if (c_higher->parsed()) {
            auto recipe = barron::solve_decay_kernel(kk, basis);
            auto hd = barron::higher_decay(recipe, dim,
                                           sphere > 0 ? sphere : 256, rgauss, seed);
            barron::write_file(out_path, barron::measure_to_json(hd.function.measure));
            if (!kernel_out.empty())
                barron::write_file(kernel_out, barron::profile_to_json(recipe.h_profile));
            std::cout << "tv: " << barron::format_double(hd.function.norm_upper_bound)
                      << "\n";
        } else if (evaluate_cmd->parsed()) {
            const barron::BarronFunction f(load_measure(measure_path));
            const auto table = barron::read_points_csv(barron::read_file(points_path));
            if (table.dim != f.dim())
                throw std::runtime_error("points have dimension " +
                                         std::to_string(table.dim) + ", measure has " +
                                         std::to_string(f.dim()));
            const auto vals = barron::evaluate_batch(f, table.points, thread_budget());
            barron::write_file(out_path,
                               barron::write_points_csv(table.dim, table.points, vals, "f"));
        } else if (norm_cmd->parsed()) {
            const auto p = load_profile(profile_path);
            const auto w = weight_kind == "unit" ? barron::Weight1D::unit
                                                 : barron::Weight1D::sqrt_one_plus_b2;
            std::cout << "norm: " << barron::format_double(barron::norm_1d(p, w)) << "\n";
        } else if (analyze_cmd->parsed()) {
            barron::SphereMeasure mu = load_measure(measure_path);
            if (atomic_view) mu = barron::as_atomic(mu);
            const auto report =
                barron::singular_report(barron::BarronFunction(mu), group_tol);
            barron::write_file(out_path, report.to_json() + "\n");
            if (!csv_path.empty()) barron::write_file(csv_path, report.to_csv());
            std::cout << "strata: " << report.strata.size() << "\n";
        } else if (approx_cmd->parsed()) {
            const barron::BarronFunction f(load_measure(measure_path));
            barron::DataDistribution P =
                dist_kind == "ball" ? barron::DataDistribution::ball(f.dim(), ball_radius)
                                    : barron::DataDistribution::gaussian(f.dim());
            const auto widths = parse_widths(width_spec);
            const double tv = f.norm_upper_bound;
            std::ostringstream os;
            os << "m,seed,l2_error,bound,path_norm\n";
            for (int s = 0; s < n_seeds; ++s) {
                for (int m : widths) {
                    const std::uint64_t run_seed = seed + static_cast<std::uint64_t>(s);
                    const auto net = barron::sample_network(f.measure, m, run_seed);
                    const auto err = barron::l2_error(f, net, P, n_mc, run_seed);
                    const double bound = 2.0 * tv *
                                         std::sqrt(P.second_moment_plus_one()) /
                                         std::sqrt(static_cast<double>(m));
                    os << m << "," << run_seed << "," << barron::format_double(err.value)
                       << "," << barron::format_double(bound) << ","
                       << barron::format_double(net.path_norm) << "\n";
                }
            }
            barron::write_file(out_path, os.str());
        } else if (train_cmd->parsed()) {
            const auto table = barron::read_points_csv(barron::read_file(data_path));
            if (table.extra.empty())
                throw std::runtime_error("training data needs a label column");
            barron::RiskSpec spec(table.dim, table.points, table.extra);
            barron::FlowState state =
                init_kind == "he" ? barron::init_he(m_particles, table.dim, seed)
                                  : barron::init_symmetric(m_particles, table.dim,
                                                           init_scale, seed);
            const auto rescale = rescale_kind == "none" ? barron::TimeRescale::none
                                                        : barron::TimeRescale::by_m;
            state = barron::flow(std::move(state), spec, dt, steps, rescale);

            const double n0 = state.history.front().second_moment;
            const double r0 = state.history.front().risk;
            std::ostringstream os;
            os << "t,risk,path_norm,second_moment,bound_rhs\n";
            for (const auto& h : state.history)
                os << barron::format_double(h.t) << "," << barron::format_double(h.risk)
                   << "," << barron::format_double(h.path_norm) << ","
                   << barron::format_double(h.second_moment) << ","
                   << barron::format_double(2.0 * (n0 + r0 * h.t)) << "\n";
            barron::write_file(out_path, os.str());
            std::cout << "final risk: " << barron::format_double(state.history.back().risk)
                      << "\n";
        } else if (round_cmd->parsed()) {
            const auto p = load_profile(profile_path);
            const auto mu = barron::profile_to_measure(p);
            barron::write_file(out_path, barron::measure_to_json(mu));
            const auto back = barron::measure_to_profile(mu);
            if (!back_path.empty())
                barron::write_file(back_path, barron::profile_to_json(back));
            double dev = 0.0;
            for (int i = 0; i <= 1000; ++i) {
                const double x = -5.0 + 10.0 * i / 1000.0;
                dev = std::max(dev, std::abs(p(x) - back(x)));
            }
            std::cout << "max deviation on [-5,5]: " << barron::format_double(dev) << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
