#pragma once

#include <string>
#include <vector>

#include "barron/measure.hpp"
#include "barron/profile1d.hpp"

namespace barron {

/// Measure JSON: {"dim": d, "atoms": [{"weight": r, "dir": [d+1 reals]}],
/// "density_nodes": [...]}. Loading rejects directions whose norm deviates
/// from 1 by more than 1e-9.
std::string measure_to_json(const SphereMeasure& mu);
SphereMeasure measure_from_json(const std::string& text);

/// Profile JSON: {"f0": r, "df0": r, "d2_atoms": [[loc, mass], ...],
/// "d2_nodes": [[loc, w], ...]}.
std::string profile_to_json(const Profile1D& p);
Profile1D profile_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Points CSV with header "x_1,...,x_d"; an optional trailing column is
/// returned through `extra` when present (labels or values).
struct PointTable {
    int dim = 0;
    std::vector<double> points;  // row-major
    std::vector<double> extra;   // empty when absent
};
PointTable read_points_csv(const std::string& text);
std::string write_points_csv(int dim, std::span<const double> points,
                             std::span<const double> values, const std::string& value_name);

std::string format_double(double v);

} // namespace barron
