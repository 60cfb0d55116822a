#include "barron/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

namespace barron {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

ordered_json entries_json(std::size_t count, auto weight_at, auto dir_at) {
    ordered_json arr = ordered_json::array();
    for (std::size_t i = 0; i < count; ++i) {
        ordered_json e;
        e["weight"] = weight_at(i);
        ordered_json dir = ordered_json::array();
        for (double v : dir_at(i)) dir.push_back(v);
        e["dir"] = std::move(dir);
        arr.push_back(std::move(e));
    }
    return arr;
}

void parse_entries(const ordered_json& arr, int dim, std::vector<double>& weights,
                   std::vector<double>& dirs, const char* what) {
    if (!arr.is_array()) throw std::runtime_error(std::string(what) + " must be an array");
    for (const auto& e : arr) {
        weights.push_back(e.at("weight").get<double>());
        const auto& dir = e.at("dir");
        if (!dir.is_array() || static_cast<int>(dir.size()) != dim + 1)
            throw std::runtime_error(std::string(what) +
                                     ": direction must have dim+1 entries");
        double nrm2 = 0.0;
        for (const auto& v : dir) {
            const double x = v.get<double>();
            dirs.push_back(x);
            nrm2 += x * x;
        }
        if (std::abs(std::sqrt(nrm2) - 1.0) > 1e-9)
            throw std::runtime_error(std::string(what) + ": direction " +
                                     std::to_string(weights.size() - 1) +
                                     " is not unit length (|dir| = " +
                                     format_double(std::sqrt(nrm2)) + ")");
    }
}

} // namespace

std::string measure_to_json(const SphereMeasure& mu) {
    ordered_json j;
    j["dim"] = mu.dim();
    j["atoms"] = entries_json(
        mu.atom_count(), [&](std::size_t i) { return mu.atom_weight(i); },
        [&](std::size_t i) { return mu.atom_dir(i); });
    j["density_nodes"] = entries_json(
        mu.node_count(), [&](std::size_t i) { return mu.node_weight(i); },
        [&](std::size_t i) { return mu.node_dir(i); });
    return j.dump(2) + "\n";
}

SphereMeasure measure_from_json(const std::string& text) {
    const ordered_json j = ordered_json::parse(text);
    const int dim = j.at("dim").get<int>();
    if (dim < 1) throw std::runtime_error("measure: dim must be >= 1");
    std::vector<double> aw, ad, nw, nd;
    parse_entries(j.at("atoms"), dim, aw, ad, "atoms");
    if (j.contains("density_nodes"))
        parse_entries(j.at("density_nodes"), dim, nw, nd, "density_nodes");
    return SphereMeasure::create(dim, std::move(aw), std::move(ad), std::move(nw),
                                 std::move(nd));
}

std::string profile_to_json(const Profile1D& p) {
    ordered_json j;
    j["f0"] = p.f0;
    j["df0"] = p.df0;
    auto pairs = [](const std::vector<std::pair<double, double>>& src) {
        ordered_json arr = ordered_json::array();
        for (const auto& [loc, mass] : src) arr.push_back(ordered_json::array({loc, mass}));
        return arr;
    };
    j["d2_atoms"] = pairs(p.d2_atoms);
    j["d2_nodes"] = pairs(p.d2_nodes);
    return j.dump(2) + "\n";
}

Profile1D profile_from_json(const std::string& text) {
    const ordered_json j = ordered_json::parse(text);
    Profile1D p;
    p.f0 = j.at("f0").get<double>();
    p.df0 = j.at("df0").get<double>();
    auto pairs = [](const ordered_json& arr, std::vector<std::pair<double, double>>& dst) {
        for (const auto& e : arr) {
            if (!e.is_array() || e.size() != 2)
                throw std::runtime_error("profile: curvature entries must be [loc, mass]");
            dst.emplace_back(e[0].get<double>(), e[1].get<double>());
        }
    };
    if (j.contains("d2_atoms")) pairs(j.at("d2_atoms"), p.d2_atoms);
    if (j.contains("d2_nodes")) pairs(j.at("d2_nodes"), p.d2_nodes);
    return p;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

PointTable read_points_csv(const std::string& text) {
    PointTable table;
    std::istringstream in(text);
    std::string line;
    bool header_checked = false;
    bool has_extra = false;
    int cols = -1;
    std::size_t lineno = 0;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);

        if (!header_checked) {
            header_checked = true;
            char* end = nullptr;
            std::strtod(cells[0].c_str(), &end);
            const bool is_header = (end == cells[0].c_str());
            cols = static_cast<int>(cells.size());
            if (is_header) {
                // a final non-"x_*" column (e.g. f or y) is data, not a coordinate
                has_extra = cells.back().rfind("x_", 0) != 0;
                table.dim = has_extra ? cols - 1 : cols;
                continue;
            }
            table.dim = cols;  // headerless: all columns are coordinates
        }

        if (static_cast<int>(cells.size()) != cols)
            throw std::runtime_error("CSV line " + std::to_string(lineno) +
                                     ": expected " + std::to_string(cols) + " columns");
        for (int k = 0; k < cols; ++k) {
            char* end = nullptr;
            const double v = std::strtod(cells[k].c_str(), &end);
            if (end == cells[k].c_str())
                throw std::runtime_error("CSV line " + std::to_string(lineno) +
                                         ": not a number: '" + cells[k] + "'");
            if (has_extra && k == cols - 1)
                table.extra.push_back(v);
            else
                table.points.push_back(v);
        }
    }
    if (table.dim == 0 || table.points.empty())
        throw std::runtime_error("CSV: no data rows");
    return table;
}

std::string write_points_csv(int dim, std::span<const double> points,
                             std::span<const double> values,
                             const std::string& value_name) {
    std::ostringstream os;
    for (int k = 0; k < dim; ++k) os << "x_" << (k + 1) << ",";
    os << value_name << "\n";
    const std::size_t count = values.size();
    for (std::size_t i = 0; i < count; ++i) {
        for (int k = 0; k < dim; ++k) os << format_double(points[i * dim + k]) << ",";
        os << format_double(values[i]) << "\n";
    }
    return os.str();
}

} // namespace barron
