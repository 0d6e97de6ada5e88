#ifndef GABORLAB_SVG_HPP
#define GABORLAB_SVG_HPP

// Static SVG plots: line curves and grid heatmaps.

#include <gaborlab/types.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace gaborlab {

struct Series {
    std::string name;
    std::vector<Real> x;
    std::vector<Real> y;
};

/// Polyline chart; nonpositive values are dropped when `log_y` is set.
void write_curve_svg(std::ostream &out, const std::string &title, const std::vector<Series> &series,
                     bool log_y);

/// One rect per grid cell, grayscale; `log_scale` maps log10 of the value.
void write_heatmap_svg(std::ostream &out, const std::string &title, const RMatrix &values,
                       bool log_scale);

} // namespace gaborlab

#endif
