#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace siqrb {

/// One named curve; drawn as a polyline, plus circle markers when requested.
struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool markers = false;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<PlotSeries> series;
};

/// Writes the series as a self-contained SVG 1.1 file with linear axes,
/// tick labels and a legend. Throws DomainError when no series or points
/// are given and IoError on write failure.
void render_plot(const PlotSpec& spec, const std::filesystem::path& path);

} // namespace siqrb
