#ifndef GABORLAB_MEASURE_HPP
#define GABORLAB_MEASURE_HPP

// Box averages of <f_i, dual_i> and their reciprocity with box densities.

#include <gaborlab/gabor.hpp>
#include <gaborlab/localization.hpp>
#include <gaborlab/pointset.hpp>

#include <iosfwd>
#include <vector>

namespace gaborlab {

struct CenterAverage {
    TfPoint center;
    Index count = 0;
    /// (1/count) sum Re <f_i, dual_i> over the box.
    Real avg = 0;
    /// (L / N^2) count.
    Real density = 0;
};

struct MeasureLevel {
    Index N = 0;
    Real M_minus = 0;
    Real M_plus = 0;
    /// Extremes of the box density over the same centers (empty boxes included).
    Real D_minus = 0;
    Real D_plus = 0;
    std::vector<CenterAverage> centers;
    /// Centers whose box held no point.
    std::vector<TfPoint> skipped;
};

struct MeasureProfile {
    std::vector<MeasureLevel> levels;
    /// Largest |Im <f_i, dual_i>|; exact arithmetic gives 0.
    Real max_imag_residue = 0;
    bool solver_warning() const { return max_imag_residue > 1e-9; }
};

/// `diagonal[i]` = <f_i, dual_i> for the element sitting at points[i].
/// Throws InvalidArgument if some level has no nonempty box.
MeasureProfile measure_profile(const PointSet &points, const CVector &diagonal,
                               const std::vector<Index> &N_values,
                               const std::vector<TfPoint> &centers);
MeasureProfile measure_profile(const GaborSystem &sys, const FrameData &fd,
                               const std::vector<Index> &N_values,
                               const std::vector<TfPoint> &centers);

struct Reciprocity {
    Index N = 0;
    /// max over nonempty boxes of |avg D - 1|.
    Real r1 = 0;
    /// max over all boxes of |(L / N^2) sum <f_i, dual_i> - 1|.
    Real r2 = 0;
};

/// Throws NotAFrame when the system is not a frame.
Reciprocity reciprocity_check(const GaborSystem &sys, const FrameData &fd, Index N,
                              const std::vector<TfPoint> &centers);

struct DensityMeasureCheck {
    std::vector<Index> N_values;
    /// M_minus(N) D_plus(N) and M_plus(N) D_minus(N).
    std::vector<Real> lower_product;
    std::vector<Real> upper_product;
    /// max(|lower - 1|, |upper - 1|).
    std::vector<Real> tau;
    bool tight = false;
    /// D_plus - D_minus at the largest N.
    Real density_spread = 0;
};

DensityMeasureCheck measure_density_bounds_check(const MeasureProfile &profile, const FrameData &fd);

/// Box density of an index map over Z (or Z_P): (1/N^d) |{i : a(i) in box}|,
/// with d the number of axes used.
struct IndexDensity {
    Real minus = 0;
    Real plus = 0;
};
IndexDensity index_density(const IndexGeometry &g, Index N, const std::vector<Offset> &centers,
                           int axes = 1);

/// Box averages of Re <P f_i, dual_i> over boxes in the index group, P an
/// orthogonal projection given as a matrix.
struct RelativeMeasure {
    Real minus = 0;
    Real plus = 0;
};
RelativeMeasure relative_measure(const CMatrix &F, const CMatrix &duals, const CMatrix &P,
                                 const IndexGeometry &g, Index N, const std::vector<Offset> &centers);

/// CSV with header "N,center_x,center_w,avg".
void write_measure_csv(std::ostream &out, const MeasureProfile &profile);

} // namespace gaborlab

#endif
