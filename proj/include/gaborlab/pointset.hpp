#ifndef GABORLAB_POINTSET_HPP
#define GABORLAB_POINTSET_HPP

// Time-frequency point sets on the L x L torus, the rounding map onto a
// reference lattice, and finite-box density statistics.

#include <gaborlab/types.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace gaborlab {

/// Side length of the discrete torus; both axes carry L grid points.
class TorusParams {
  public:
    explicit TorusParams(Index L);
    Index L() const { return L_; }
    bool operator==(const TorusParams &) const = default;

  private:
    Index L_;
};

struct TfPoint {
    Real x = 0;
    Real omega = 0;
    bool operator==(const TfPoint &) const = default;
};

/// Integer grid point on the torus.
struct GridPoint {
    Index x = 0;
    Index omega = 0;
    bool operator==(const GridPoint &) const = default;
};

/// Reduce a real coordinate into [0, L).
Real reduce_mod(Real v, Index L);

/// Reduce a real offset into [-L/2, L/2).
Real centered_offset(Real d, Index L);

/// Half-open box [-N/2, N/2) membership of a (centered) offset.
inline bool in_half_open_box(Real d, Real N) { return -N / 2 <= d && d < N / 2; }

/// Finite multiset of time-frequency points; coordinates are kept reduced
/// modulo L and repeated points are kept as repeats.
class PointSet {
  public:
    explicit PointSet(TorusParams torus, std::vector<TfPoint> points = {});

    const TorusParams &torus() const { return torus_; }
    Index L() const { return torus_.L(); }
    Index size() const { return static_cast<Index>(points_.size()); }
    bool empty() const { return points_.empty(); }

    const TfPoint &operator[](Index i) const { return points_[static_cast<std::size_t>(i)]; }
    const std::vector<TfPoint> &points() const { return points_; }
    auto begin() const { return points_.begin(); }
    auto end() const { return points_.end(); }

    /// Multiset union.
    PointSet merged(const PointSet &other) const;
    /// Every point moved by (dx, domega).
    PointSet translated(Real dx, Real domega) const;
    /// The sub-multiset with the given indices (in that order).
    PointSet subset(const std::vector<Index> &indices) const;

  private:
    TorusParams torus_;
    std::vector<TfPoint> points_;
};

/// Reference lattice a_step Z x b_step Z on the torus.
struct RefLattice {
    Index a_step = 1;
    Index b_step = 1;

    /// Throws InvalidLattice unless both steps divide L.
    void validate(const TorusParams &torus) const;
    Index time_count(const TorusParams &t) const { return t.L() / a_step; }
    Index freq_count(const TorusParams &t) const { return t.L() / b_step; }
    Index size(const TorusParams &t) const { return time_count(t) * freq_count(t); }
};

/// Parse "AxB" into a lattice; throws InvalidArgument on malformed input.
RefLattice parse_lattice(const std::string &text);

/// {(j a, k b)}, time index major.
PointSet lattice_points(const RefLattice &lat, const TorusParams &torus);

/// Independent uniform offsets in [-delta, delta]^2 per point, drawn from a
/// std::mt19937_64 seeded with `seed` (x offset first, then omega).
PointSet jitter(const PointSet &ps, Real delta, std::uint64_t seed);

/// a(x, w) = (a floor(x / a), b floor(w / b)) on the torus, one entry per point.
std::vector<GridPoint> round_map(const PointSet &ps, const RefLattice &lat);

struct BoxStats {
    Index N = 0;
    std::vector<TfPoint> centers;
    std::vector<Index> counts;
    /// (L / N^2) * count; equals 1 for a set at critical density.
    std::vector<Real> normalized;
};

/// Counts |Lambda cap Q_N(c)| with periodic half-open boxes [c - N/2, c + N/2)^2.
BoxStats box_stats(const PointSet &ps, Index N, const std::vector<TfPoint> &centers);

struct DensityBounds {
    Real lower = 0;
    Real upper = 0;
};

/// Min / max of the normalized box count over all L^2 integer centers.
DensityBounds density_bounds(const PointSet &ps, Index N);

/// Count of points in every box of side N with integer lower-left corner;
/// entry (u, v) covers [u, u + N) x [v, v + N) modulo L.
Eigen::Matrix<Index, Eigen::Dynamic, Eigen::Dynamic> box_count_grid(const PointSet &ps, Index N);

std::vector<TfPoint> grid_centers(const TorusParams &torus);
std::vector<TfPoint> lattice_centers(const RefLattice &lat, const TorusParams &torus);

// CSV header "x,omega"; JSON {"L": int, "points": [[x, w], ...]}.
void write_csv(std::ostream &out, const PointSet &ps);
PointSet read_csv(std::istream &in, const TorusParams &torus);
std::string to_json(const PointSet &ps);
PointSet pointset_from_json(const std::string &text);

} // namespace gaborlab

#endif
