#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "siqrb/integrator.hpp"

namespace siqrb {

/// Shortest decimal representation that parses back to exactly the same double.
std::string format_double(double value);

/// Writes one CSV row per grid point with columns t,S,I,Q,R,B, plus u when a
/// control is given and lambda1..lambda5 when an adjoint trajectory is given.
/// Numbers use the shortest round-trip representation, so reading the file
/// back reproduces every value bit-exactly.
///
/// Throws GridMismatch if an optional series lives on a different grid and
/// IoError on write failure.
void write_trajectory(const Trajectory& traj, const ControlSignal* control,
                      const AdjointTrajectory* adjoint, const std::filesystem::path& path);

/// A parsed CSV: header names, raw cells, and the numeric value of every
/// cell (NaN where a cell is not a number).
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::vector<std::string>> cells;

    std::size_t column_index(const std::string& name) const;
    std::vector<double> column(const std::string& name) const;
};

/// Reads a CSV with a header line; # comment lines are skipped.
CsvTable read_csv(const std::filesystem::path& path);

} // namespace siqrb
