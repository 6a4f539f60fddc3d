#include "siqrb/trajectory_io.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include "siqrb/errors.hpp"

namespace siqrb {

std::string format_double(double value)
{
    char buffer[32];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

void write_trajectory(const Trajectory& traj, const ControlSignal* control,
                      const AdjointTrajectory* adjoint, const std::filesystem::path& path)
{
    if (control != nullptr && !(control->grid == traj.grid)) {
        throw GridMismatch("write_trajectory: control grid differs from trajectory grid");
    }
    if (adjoint != nullptr && !(adjoint->grid == traj.grid)) {
        throw GridMismatch("write_trajectory: adjoint grid differs from trajectory grid");
    }

    std::ostringstream out;
    out << "t,S,I,Q,R,B";
    if (control != nullptr) {
        out << ",u";
    }
    if (adjoint != nullptr) {
        out << ",lambda1,lambda2,lambda3,lambda4,lambda5";
    }
    out << '\n';

    for (int i = 0; i < traj.grid.n_points(); ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        const State& x = traj.states[k];
        out << format_double(traj.grid.time(i)) << ',' << format_double(x.S) << ','
            << format_double(x.I) << ',' << format_double(x.Q) << ',' << format_double(x.R) << ','
            << format_double(x.B);
        if (control != nullptr) {
            out << ',' << format_double(control->values[k]);
        }
        if (adjoint != nullptr) {
            const AdjointState& l = adjoint->states[k];
            out << ',' << format_double(l.lambda1) << ',' << format_double(l.lambda2) << ','
                << format_double(l.lambda3) << ',' << format_double(l.lambda4) << ','
                << format_double(l.lambda5);
        }
        out << '\n';
    }

    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot open for writing: " + path.string());
    }
    file << out.str();
    if (!file) {
        throw IoError("write failed: " + path.string());
    }
}

std::size_t CsvTable::column_index(const std::string& name) const
{
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) {
            return i;
        }
    }
    throw ParseError("no such column: " + name);
}

std::vector<double> CsvTable::column(const std::string& name) const
{
    const std::size_t index = column_index(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        out.push_back(row[index]);
    }
    return out;
}

CsvTable read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open: " + path.string());
    }
    CsvTable table;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            cells.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) {
                break;
            }
            start = comma + 1;
        }
        if (table.columns.empty()) {
            table.columns = cells;
            continue;
        }
        if (cells.size() != table.columns.size()) {
            throw ParseError(path.filename().string() + ":" + std::to_string(line_no) +
                             ": expected " + std::to_string(table.columns.size()) + " cells");
        }
        std::vector<double> row(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const char* begin = cells[i].data();
            const char* end = begin + cells[i].size();
            const auto [ptr, ec] = std::from_chars(begin, end, row[i]);
            if (ec != std::errc{} || ptr != end) {
                row[i] = std::numeric_limits<double>::quiet_NaN();
            }
        }
        table.rows.push_back(std::move(row));
        table.cells.push_back(std::move(cells));
    }
    if (table.columns.empty()) {
        throw ParseError(path.filename().string() + ": empty file");
    }
    return table;
}

} // namespace siqrb
