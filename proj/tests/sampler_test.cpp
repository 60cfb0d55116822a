#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "barron/constructions.hpp"
#include "barron/eval.hpp"
#include "barron/sampler.hpp"
#include "test_util.hpp"

using namespace barron;

TEST_CASE("data distributions") {
    SUBCASE("gaussian second moment") {
        CHECK(DataDistribution::gaussian(3).second_moment_plus_one() == 4.0);
        std::mt19937_64 check(1);
        const auto P = DataDistribution::gaussian(3);
        const auto pts = P.sample(200000, 0);
        KahanSum m2;
        for (std::size_t i = 0; i < pts.size() / 3; ++i) {
            double s = 1.0;
            for (int k = 0; k < 3; ++k) s += pts[i * 3 + k] * pts[i * 3 + k];
            m2.add(s);
        }
        CHECK(m2.value() / (pts.size() / 3) == doctest::Approx(4.0).epsilon(2e-2));
    }
    SUBCASE("uniform ball second moment") {
        const auto P = DataDistribution::ball(3, 2.0);
        CHECK(P.second_moment_plus_one() == doctest::Approx(4.0 * 3.0 / 5.0 + 1.0));
        const auto pts = P.sample(200000, 1);
        KahanSum m2;
        double max_norm = 0.0;
        for (std::size_t i = 0; i < pts.size() / 3; ++i) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += pts[i * 3 + k] * pts[i * 3 + k];
            max_norm = std::max(max_norm, std::sqrt(s));
            m2.add(1.0 + s);
        }
        CHECK(max_norm <= 2.0);
        CHECK(m2.value() / (pts.size() / 3) ==
              doctest::Approx(P.second_moment_plus_one()).epsilon(2e-2));
    }
    SUBCASE("empirical moments are exact weighted sums") {
        const std::vector<double> pts = {1.0, 0.0, 0.0, 2.0};
        const auto P = DataDistribution::empirical(2, pts, {1.0, 3.0});
        // weights normalize to 1/4, 3/4
        CHECK(P.second_moment_plus_one() ==
              doctest::Approx(0.25 * 2.0 + 0.75 * 5.0).epsilon(1e-15));
    }
}

TEST_CASE("equalize") {
    SUBCASE("probabilities proportional to mass, constant amplitude") {
        const auto mu = SphereMeasure::create(1, {2.0, 1.0}, {1.0, 0.0, 0.0, 1.0});
        const auto eq = equalize(mu);
        CHECK(eq.total_variation() == 3.0);
        REQUIRE(eq.support_size() == 2);
        // canonical order sorts (0,1) before (1,0)
        CHECK(eq.probability(0) == doctest::Approx(1.0 / 3.0));
        CHECK(eq.probability(1) == doctest::Approx(2.0 / 3.0));
        CHECK(eq.amplitude(0) == 3.0);
        CHECK(eq.amplitude(1) == 3.0);
    }
    SUBCASE("single atom") {
        const auto mu = SphereMeasure::create(1, {0.7}, {1.0, 0.0});
        const auto eq = equalize(mu);
        REQUIRE(eq.support_size() == 1);
        CHECK(eq.probability(0) == 1.0);
        CHECK(eq.amplitude(0) == doctest::Approx(0.7));
    }
    SUBCASE("signed atoms keep their sign through the amplitude") {
        const auto mu = SphereMeasure::create(1, {1.0, -1.0}, {1.0, 0.0, 0.0, 1.0});
        const auto eq = equalize(mu);
        REQUIRE(eq.support_size() == 2);
        CHECK(eq.probability(0) == doctest::Approx(0.5));
        CHECK(std::abs(eq.amplitude(0)) == 2.0);
        CHECK(std::abs(eq.amplitude(1)) == 2.0);
        CHECK(eq.amplitude(0) * eq.amplitude(1) < 0.0);

        // Monte-Carlo expectation of single draws reproduces f
        const BarronFunction f(mu);
        std::mt19937_64 rng(10);
        const int n_draw = 100000;
        std::vector<std::size_t> draws(n_draw);
        for (auto& d : draws) d = eq.draw(rng);
        std::mt19937_64 prng(11);
        for (int p = 0; p < 100; ++p) {
            const auto x = testutil::random_point(prng, 1, 2.0);
            KahanSum mean;
            for (std::size_t d : draws) {
                auto dir = eq.direction(d);
                mean.add(eq.amplitude(d) * relu(dir[0] * x[0] + dir[1]));
            }
            const double scale = std::max(1.0, norm2(x));
            CHECK(std::abs(mean.value() / n_draw - evaluate(f, x)) <=
                  3.0 * eq.total_variation() * scale / std::sqrt(n_draw));
        }
    }
    SUBCASE("zero measure is rejected") {
        const auto mu = SphereMeasure::create(1, {0.0}, {1.0, 0.0});
        CHECK_THROWS_AS(equalize(mu), std::invalid_argument);
    }
}

TEST_CASE("sample_network") {
    SUBCASE("width 1 from a single atom recovers the atom") {
        const auto mu = SphereMeasure::create(2, {1.5}, {0.6, 0.0, 0.8});
        const auto net = sample_network(mu, 1, 42);
        REQUIRE(net.neurons.size() == 1);
        CHECK(net.neurons[0].a == doctest::Approx(1.5));
        CHECK(net.neurons[0].w[0] == doctest::Approx(0.6));
        CHECK(net.neurons[0].b == doctest::Approx(0.8));
        CHECK(net.path_norm == doctest::Approx(1.5));
    }
    SUBCASE("path norm equals the mass for every width and seed") {
        const auto f = gaussian_decay(3, 128, 64);
        const double tv = f.norm_upper_bound;
        for (std::uint64_t seed : {0ull, 7ull, 99ull}) {
            for (int m : {1, 16, 256}) {
                const auto net = sample_network(f.measure, m, seed);
                CHECK(net.path_norm == doctest::Approx(tv).epsilon(1e-9));
            }
        }
    }
    SUBCASE("different seeds give different networks") {
        const auto f = gaussian_decay(2, 128, 64);
        const auto a = sample_network(f.measure, 64, 1);
        const auto b = sample_network(f.measure, 64, 2);
        bool differs = false;
        for (std::size_t i = 0; i < a.neurons.size() && !differs; ++i)
            differs = a.neurons[i].b != b.neurons[i].b;
        CHECK(differs);
        CHECK(a.path_norm == doctest::Approx(b.path_norm).epsilon(1e-12));

        const auto a2 = sample_network(f.measure, 64, 1);
        bool same = true;
        for (std::size_t i = 0; i < a.neurons.size() && same; ++i)
            same = a.neurons[i].a == a2.neurons[i].a && a.neurons[i].b == a2.neurons[i].b;
        CHECK(same);
    }
    SUBCASE("width-1 sample mean approaches f (unbiasedness)") {
        std::mt19937_64 rng(21);
        const auto mu = testutil::random_atomic_measure(rng, 2, 8);
        const BarronFunction f(mu);
        const double tv = total_variation(mu);
        const double x[2] = {0.4, -0.7};
        KahanSum mean;
        const int n = 10000;
        for (int s = 0; s < n; ++s) {
            const auto net = sample_network(mu, 1, 1000 + s);
            mean.add(net(x));
        }
        CHECK(std::abs(mean.value() / n - evaluate(f, x)) <= 4.0 * tv / std::sqrt(n));
    }
}

TEST_CASE("l2_error") {
    SUBCASE("exact representation has zero error") {
        const auto mu = SphereMeasure::create(2, {1.0, -0.5},
                                              {0.6, 0.0, 0.8, 0.0, 1.0, 0.0});
        const BarronFunction f(mu);
        SampledNetwork g;
        g.neurons = to_neurons(mu);
        const auto err = l2_error(f, g, DataDistribution::gaussian(2), 2000, 3);
        CHECK(err.value <= 1e-12);
    }
    SUBCASE("empirical distributions use the exact weighted sum") {
        const auto mu = SphereMeasure::create(1, {1.0}, {1.0, 0.0});
        const BarronFunction f(mu);
        SampledNetwork g;  // empty network: g = 0
        const std::vector<double> pts = {1.0, -1.0};
        const auto P = DataDistribution::empirical(1, pts, {0.5, 0.5});
        const auto err = l2_error(f, g, P, 1, 0);
        // f values are 1 and 0, so the L2 error is sqrt(0.5)
        CHECK(err.value == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
        CHECK(err.std_error == 0.0);
    }
    SUBCASE("error shrinks with width at the theoretical rate") {
        const auto f = gaussian_decay(3, 128, 64);
        const auto P = DataDistribution::gaussian(3);
        const double tv = f.norm_upper_bound;
        std::vector<double> e64, e1024;
        for (std::uint64_t s = 0; s < 8; ++s) {
            e64.push_back(l2_error(f, sample_network(f.measure, 64, s), P, 2000, s).value);
            e1024.push_back(
                l2_error(f, sample_network(f.measure, 1024, s), P, 2000, s).value);
            // the direct-approximation bound with the exact second moment
            CHECK(e64.back() <= 2.0 * tv * 2.0 / 8.0);
        }
        CHECK(testutil::median(e1024) <= 0.6 * testutil::median(e64));
    }
}

TEST_CASE("digit_interleave") {
    SUBCASE("d = 1 is the identity at 12 digits") {
        for (double x : {0.0, 0.123456789012, 0.5, 0.999999999999}) {
            const double xv[1] = {x};
            CHECK(std::abs(digit_interleave(xv) - x) <= 5e-13);
        }
    }
    SUBCASE("d = 2 interleaves decimal digits") {
        const double x[2] = {0.12, 0.34};
        CHECK(digit_interleave(x) == doctest::Approx(0.1324).epsilon(1e-12));
        const auto back = digit_deinterleave(0.1324, 2);
        CHECK(back[0] == doctest::Approx(0.12).epsilon(1e-12));
        CHECK(back[1] == doctest::Approx(0.34).epsilon(1e-12));
    }
    SUBCASE("round trip on random points, d = 2") {
        std::mt19937_64 rng(17);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const std::vector<double> x = {uniform01(rng), uniform01(rng)};
            const auto back = digit_deinterleave(digit_interleave(x), 2);
            for (int k = 0; k < 2; ++k) worst = std::max(worst, std::abs(back[k] - x[k]));
        }
        CHECK(worst <= 1e-6);
    }
    SUBCASE("interleave after deinterleave is the identity on the grid") {
        std::mt19937_64 rng(19);
        for (int d : {2, 3, 4}) {
            for (int i = 0; i < 200; ++i) {
                std::vector<double> x(d);
                for (double& v : x) v = uniform01(rng);
                const double z = digit_interleave(x);
                const double z2 = digit_interleave(digit_deinterleave(z, d));
                CHECK(z == doctest::Approx(z2).epsilon(1e-15));
            }
        }
    }
    SUBCASE("out-of-range coordinates are rejected") {
        const double x[2] = {1.5, 0.0};
        CHECK_THROWS_AS(digit_interleave(x), std::invalid_argument);
    }
}

TEST_CASE("inverse_cdf_sample") {
    SUBCASE("uniform table is the identity") {
        std::vector<std::pair<double, double>> cdf;
        for (int i = 0; i <= 1000; ++i) cdf.emplace_back(i / 1000.0, i / 1000.0);
        for (double u : {0.0, 0.25, 0.5, 0.777, 1.0})
            CHECK(std::abs(inverse_cdf_sample(cdf, u) - u) <= 1e-3);
    }
    SUBCASE("point mass is constant") {
        const std::vector<std::pair<double, double>> cdf = {{0.5, 1.0}};
        for (double u : {0.0, 0.3, 0.99}) CHECK(inverse_cdf_sample(cdf, u) == 0.5);
    }
    SUBCASE("two-atom table") {
        const std::vector<std::pair<double, double>> cdf = {{0.3, 0.25}, {0.7, 1.0}};
        CHECK(inverse_cdf_sample(cdf, 0.2) == 0.3);
        CHECK(inverse_cdf_sample(cdf, 0.5) == 0.7);
    }
    SUBCASE("non-monotone tables are rejected") {
        const std::vector<std::pair<double, double>> bad = {{0.3, 0.5}, {0.7, 0.25}};
        CHECK_THROWS_AS(inverse_cdf_sample(bad, 0.5), std::invalid_argument);
        const std::vector<std::pair<double, double>> bad2 = {{0.7, 0.2}, {0.3, 0.6}};
        CHECK_THROWS_AS(inverse_cdf_sample(bad2, 0.5), std::invalid_argument);
    }
    SUBCASE("pushforward of uniforms matches the table (KS distance)") {
        const std::vector<std::pair<double, double>> cdf = {
            {-1.0, 0.1}, {0.0, 0.35}, {0.5, 0.65}, {2.0, 1.0}};
        std::mt19937_64 rng(23);
        const int n = 10000;
        std::vector<double> samples(n);
        for (auto& s : samples) s = inverse_cdf_sample(cdf, uniform01(rng));
        CHECK(testutil::ks_distance(samples, cdf) <= 2.0 / std::sqrt(n));
    }
}
