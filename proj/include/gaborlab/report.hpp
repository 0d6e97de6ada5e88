#ifndef GABORLAB_REPORT_HPP
#define GABORLAB_REPORT_HPP

// Summary of one frame experiment and its CSV/JSON forms.

#include <gaborlab/gabor.hpp>

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>

namespace gaborlab {

struct FrameReport {
    Index L = 0;
    std::string window;
    std::string lattice;
    Index n_points = 0;
    Real A = 0;
    Real B = 0;
    /// Box density extremes at side N over all grid positions.
    Real D_minus = 0;
    Real D_plus = 0;
    /// Measure extremes and reciprocity residual r1; absent when not a frame.
    std::optional<Real> measure_minus;
    std::optional<Real> measure_plus;
    std::optional<Real> reciprocity_residual;
};

/// Frame bounds, densities, measures and r1 at box side N (N = L by
/// default), with measure centers on `lat`.
FrameReport frame_report(const GaborSystem &sys, const std::string &window_name,
                         const RefLattice &lat, Index N = 0,
                         BoundsMethod method = BoundsMethod::dense);

nlohmann::json to_json(const FrameReport &r);
/// Two lines: header with the JSON keys, then the values.
void write_csv(std::ostream &out, const FrameReport &r);

} // namespace gaborlab

#endif
