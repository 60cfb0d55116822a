#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "barron/eval.hpp"
#include "barron/io.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const fs::path& workdir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "barronkit_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("BARRONKIT_BIN");
    REQUIRE(bin != nullptr);
    const fs::path out = workdir() / "stdout.txt";
    const fs::path err = workdir() / "stderr.txt";
    const std::string cmd =
        std::string(bin) + " " + args + " > " + out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

} // namespace

TEST_CASE("construct euclidean-norm writes a valid measure and prints c_d") {
    const fs::path m = workdir() / "m.json";
    const auto r =
        run_cli("construct euclidean-norm --dim 3 --nodes 400 --out " + m.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("seed: 0") != std::string::npos);
    REQUIRE(r.out.find("c_d: ") != std::string::npos);
    const double c3 = std::atof(r.out.substr(r.out.find("c_d: ") + 5).c_str());
    CHECK(c3 == doctest::Approx(4.0).epsilon(1e-2));

    // output loads back cleanly and evaluates |x|
    const auto mu = barron::measure_from_json(barron::read_file(m.string()));
    const double x[3] = {3.0, 0.0, 4.0};
    CHECK(barron::BarronFunction(mu)(x) == doctest::Approx(5.0).epsilon(1e-2));
}

TEST_CASE("identical invocations produce byte-identical outputs") {
    const fs::path a = workdir() / "a.json";
    const fs::path b = workdir() / "b.json";
    CHECK(run_cli("construct gaussian-decay --dim 2 --radial 64 --sphere 32 --out " +
                  a.string())
              .exit_code == 0);
    CHECK(run_cli("construct gaussian-decay --dim 2 --radial 64 --sphere 32 --out " +
                  b.string())
              .exit_code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());
}

TEST_CASE("evaluate writes a value column") {
    const fs::path m = workdir() / "m1.json";
    REQUIRE(run_cli("construct partial-norm --dim 2 --k 1 --nodes 16 --out " + m.string())
                .exit_code == 0);
    const fs::path pts = workdir() / "pts.csv";
    barron::write_file(pts.string(), "x_1,x_2\n3.0,1.0\n-2.0,5.0\n");
    const fs::path vals = workdir() / "vals.csv";
    const auto r = run_cli("evaluate --measure " + m.string() + " --points " +
                           pts.string() + " --out " + vals.string());
    CHECK(r.exit_code == 0);
    const auto table = barron::read_points_csv(slurp(vals));
    REQUIRE(table.extra.size() == 2);
    CHECK(table.extra[0] == 3.0);  // |x_1| at (3, 1)
    CHECK(table.extra[1] == 2.0);
}

TEST_CASE("norm1d and profile-roundtrip") {
    const fs::path p = workdir() / "hat.json";
    barron::write_file(p.string(),
                       R"({"f0":1.0,"df0":1.0,"d2_atoms":[[-1.0,1.0],[0.0,-2.0],[1.0,1.0]],"d2_nodes":[]})");
    auto r = run_cli("norm1d --profile " + p.string());
    CHECK(r.exit_code == 0);
    REQUIRE(r.out.find("norm: ") != std::string::npos);
    const double n = std::atof(r.out.substr(r.out.find("norm: ") + 6).c_str());
    CHECK(n == doctest::Approx(4.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-12));

    const fs::path m = workdir() / "hat_measure.json";
    const fs::path back = workdir() / "hat_back.json";
    r = run_cli("profile-roundtrip --profile " + p.string() + " --out " + m.string() +
                " --back " + back.string());
    CHECK(r.exit_code == 0);
    REQUIRE(r.out.find("max deviation") != std::string::npos);
    const double dev =
        std::atof(r.out.substr(r.out.find("[-5,5]: ") + 8).c_str());
    CHECK(dev <= 1e-10);
}

TEST_CASE("analyze reports strata") {
    const fs::path m = workdir() / "abs.json";
    barron::write_file(
        m.string(),
        R"({"dim":2,"atoms":[{"weight":1.0,"dir":[1.0,0.0,0.0]},{"weight":1.0,"dir":[-1.0,0.0,0.0]}],"density_nodes":[]})");
    const fs::path rep = workdir() / "report.json";
    const fs::path csv = workdir() / "report.csv";
    const auto r = run_cli("analyze --measure " + m.string() + " --out " + rep.string() +
                           " --csv " + csv.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("strata: 1") != std::string::npos);
    CHECK(slurp(rep).find("\"singular_dim\":1") != std::string::npos);
    CHECK(slurp(csv).find("stratum,") != std::string::npos);
}

TEST_CASE("approx emits the rate table") {
    const fs::path m = workdir() / "gd.json";
    REQUIRE(run_cli("construct gaussian-decay --dim 2 --radial 64 --sphere 32 --out " +
                    m.string())
                .exit_code == 0);
    const fs::path rate = workdir() / "rate.csv";
    const auto r = run_cli("approx --measure " + m.string() +
                           " --dist gaussian --m 8,32 --seeds 2 --mc 256 --out " +
                           rate.string());
    CHECK(r.exit_code == 0);
    const std::string text = slurp(rate);
    CHECK(text.rfind("m,seed,l2_error,bound,path_norm\n", 0) == 0);
    int lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    CHECK(lines == 1 + 2 * 2);
}

TEST_CASE("train writes a history with the bound column") {
    const fs::path data = workdir() / "data.csv";
    std::ostringstream os;
    os << "x_1,x_2,y\n";
    for (int i = 0; i < 8; ++i) {
        const double x1 = -1.0 + 2.0 * i / 7.0;
        os << x1 << "," << 0.5 - 0.1 * i << "," << std::max(x1, 0.0) << "\n";
    }
    barron::write_file(data.string(), os.str());
    const fs::path hist = workdir() / "history.csv";
    const auto r = run_cli("train --data " + data.string() +
                           " --m 8 --steps 50 --dt 0.1 --out " + hist.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("final risk: ") != std::string::npos);
    const std::string text = slurp(hist);
    CHECK(text.rfind("t,risk,path_norm,second_moment,bound_rhs\n", 0) == 0);
    int lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    CHECK(lines == 1 + 51);  // header + init + 50 steps
}

TEST_CASE("validation failures exit with code 2") {
    SUBCASE("missing input file") {
        const auto r = run_cli("evaluate --measure /nonexistent.json --points x --out y");
        CHECK(r.exit_code == 2);
        CHECK(r.err.find("error:") != std::string::npos);
    }
    SUBCASE("malformed JSON reports line and column") {
        const fs::path bad = workdir() / "bad.json";
        barron::write_file(bad.string(), "{\"dim\": 2,\n  \"atoms\": [oops]\n}");
        const fs::path rep = workdir() / "r.json";
        const auto r =
            run_cli("analyze --measure " + bad.string() + " --out " + rep.string());
        CHECK(r.exit_code == 2);
        CHECK(r.err.find("line 2") != std::string::npos);
        CHECK(r.err.find("column") != std::string::npos);
    }
    SUBCASE("unknown flags are rejected") {
        const auto r = run_cli("norm1d --profile x.json --bogus 3");
        CHECK(r.exit_code != 0);
    }
}
