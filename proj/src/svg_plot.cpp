#include "siqrb/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "siqrb/errors.hpp"

namespace siqrb {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 72.0;
constexpr double kRight = 700.0;
constexpr double kTop = 44.0;
constexpr double kBottom = 428.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

struct Range {
    double lo = 0.0;
    double hi = 1.0;
};

Range padded_range(double lo, double hi)
{
    if (lo == hi) {
        const double pad = (lo == 0.0) ? 1.0 : 0.1 * std::abs(lo);
        return {lo - pad, hi + pad};
    }
    return {lo, hi};
}

/// Round a span to 1, 2 or 5 times a power of ten, the usual tick heuristic.
double nice_step(double span, int target_ticks)
{
    const double raw = span / target_ticks;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    double step;
    if (norm < 1.5) {
        step = 1.0;
    } else if (norm < 3.5) {
        step = 2.0;
    } else if (norm < 7.5) {
        step = 5.0;
    } else {
        step = 10.0;
    }
    return step * mag;
}

std::string format_tick(double v)
{
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

std::string format_coord(double v)
{
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.2f", v);
    return buffer;
}

std::string escape_xml(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

void render_plot(const PlotSpec& spec, const std::filesystem::path& path)
{
    if (spec.series.empty()) {
        throw DomainError("render_plot: no series");
    }
    double x_lo = std::numeric_limits<double>::infinity();
    double x_hi = -x_lo;
    double y_lo = x_lo;
    double y_hi = -x_lo;
    for (const auto& s : spec.series) {
        if (s.x.empty() || s.x.size() != s.y.size()) {
            throw DomainError("render_plot: series '" + s.label + "' is empty or ragged");
        }
        for (double v : s.x) {
            x_lo = std::min(x_lo, v);
            x_hi = std::max(x_hi, v);
        }
        for (double v : s.y) {
            y_lo = std::min(y_lo, v);
            y_hi = std::max(y_hi, v);
        }
    }
    const Range xr = padded_range(x_lo, x_hi);
    const Range yr = padded_range(y_lo, y_hi);

    const auto to_px = [&](double x) {
        return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * (kRight - kLeft);
    };
    const auto to_py = [&](double y) {
        return kBottom - (y - yr.lo) / (yr.hi - yr.lo) * (kBottom - kTop);
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    if (!spec.title.empty()) {
        svg << "<text x=\"" << 0.5 * (kLeft + kRight)
            << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
            << escape_xml(spec.title) << "</text>\n";
    }

    // grid lines and tick labels
    svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n";
    const double x_step = nice_step(xr.hi - xr.lo, 6);
    for (double v = std::ceil(xr.lo / x_step) * x_step; v <= xr.hi + 1e-9 * x_step; v += x_step) {
        const double px = to_px(v);
        svg << "<line x1=\"" << format_coord(px) << "\" y1=\"" << kTop << "\" x2=\""
            << format_coord(px) << "\" y2=\"" << kBottom << "\" stroke=\"#dddddd\"/>\n";
        svg << "<text x=\"" << format_coord(px) << "\" y=\"" << kBottom + 16.0
            << "\" text-anchor=\"middle\">" << format_tick(v) << "</text>\n";
    }
    const double y_step = nice_step(yr.hi - yr.lo, 6);
    for (double v = std::ceil(yr.lo / y_step) * y_step; v <= yr.hi + 1e-9 * y_step; v += y_step) {
        const double py = to_py(v);
        svg << "<line x1=\"" << kLeft << "\" y1=\"" << format_coord(py) << "\" x2=\"" << kRight
            << "\" y2=\"" << format_coord(py) << "\" stroke=\"#dddddd\"/>\n";
        svg << "<text x=\"" << kLeft - 6.0 << "\" y=\"" << format_coord(py + 4.0)
            << "\" text-anchor=\"end\">" << format_tick(v) << "</text>\n";
    }
    svg << "</g>\n";

    // axes
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\"" << kRight << "\" y2=\""
        << kBottom << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
        << kBottom << "\" stroke=\"black\"/>\n";
    if (!spec.x_label.empty()) {
        svg << "<text x=\"" << 0.5 * (kLeft + kRight) << "\" y=\"" << kHeight - 12.0
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
            << escape_xml(spec.x_label) << "</text>\n";
    }
    if (!spec.y_label.empty()) {
        svg << "<text x=\"18\" y=\"" << 0.5 * (kTop + kBottom)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\""
            << " transform=\"rotate(-90 18 " << 0.5 * (kTop + kBottom) << ")\">"
            << escape_xml(spec.y_label) << "</text>\n";
    }

    // series
    for (std::size_t s = 0; s < spec.series.size(); ++s) {
        const PlotSeries& series = spec.series[s];
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < series.x.size(); ++i) {
            if (i != 0) {
                svg << ' ';
            }
            svg << format_coord(to_px(series.x[i])) << ',' << format_coord(to_py(series.y[i]));
        }
        svg << "\"/>\n";
        if (series.markers) {
            for (std::size_t i = 0; i < series.x.size(); ++i) {
                svg << "<circle cx=\"" << format_coord(to_px(series.x[i])) << "\" cy=\""
                    << format_coord(to_py(series.y[i])) << "\" r=\"3\" fill=\"" << color
                    << "\"/>\n";
            }
        }
    }

    // legend
    svg << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (std::size_t s = 0; s < spec.series.size(); ++s) {
        const double ly = kTop + 16.0 + 18.0 * static_cast<double>(s);
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        svg << "<line x1=\"" << kRight - 150.0 << "\" y1=\"" << ly - 4.0 << "\" x2=\""
            << kRight - 122.0 << "\" y2=\"" << ly - 4.0 << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << kRight - 116.0 << "\" y=\"" << ly << "\">"
            << escape_xml(spec.series[s].label) << "</text>\n";
    }
    svg << "</g>\n</svg>\n";

    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot open for writing: " + path.string());
    }
    file << svg.str();
    if (!file) {
        throw IoError("write failed: " + path.string());
    }
}

} // namespace siqrb
