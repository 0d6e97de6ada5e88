#ifndef GABORLAB_GABOR_HPP
#define GABORLAB_GABOR_HPP

#include <gaborlab/linalg.hpp>
#include <gaborlab/pointset.hpp>
#include <gaborlab/signal.hpp>

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace gaborlab {

/// G(g, Lambda) = {M_w T_x g}. Point coordinates may be real; the shift
/// applied to the window is the nearest grid position.
class GaborSystem {
  public:
    GaborSystem(Signal window, PointSet points);

    const Signal &window() const { return window_; }
    const PointSet &points() const { return points_; }
    Index L() const { return window_.size(); }
    Index size() const { return points_.size(); }

    /// L x |Lambda| matrix, column i = g_{lambda_i}.
    const CMatrix &elements() const { return elements_; }
    Signal element(Index i) const { return Signal(elements_.col(i)); }
    /// Grid positions actually used for each element.
    const std::vector<GridPoint> &shifts() const { return shifts_; }

  private:
    Signal window_;
    PointSet points_;
    std::vector<GridPoint> shifts_;
    CMatrix elements_;
};

/// Lattice system G(window, a Z x b Z), time index major.
GaborSystem lattice_system(const Signal &window, const RefLattice &lat);

/// analysis_i = <f, g_i>.
CVector analysis(const GaborSystem &sys, const Signal &f);
/// sum_i c_i g_i.
Signal synthesis(const GaborSystem &sys, const CVector &c);
/// Dense L x L matrix of S f = sum <f, g_i> g_i.
CMatrix frame_operator(const GaborSystem &sys);
Signal apply_frame_operator(const GaborSystem &sys, const Signal &f);

/// "Is a frame" threshold: A > kFrameThreshold * B.
inline constexpr Real kFrameThreshold = 1e-10;

struct FrameBounds {
    Real A = 0;
    Real B = 0;
    bool is_frame() const { return B > 0 && A > kFrameThreshold * B; }
    Real condition() const;
};

enum class BoundsMethod { dense, iterative };

struct IterativeOptions {
    Real tolerance = 1e-8;
    Index max_iterations = 200000;
    std::uint64_t seed = 12345;
};

/// Largest dense problem accepted by BoundsMethod::dense.
inline constexpr Index kMaxDenseL = 512;

/// Dense: extreme eigenvalues of S. Iterative: power iteration on S and on
/// B Id - S, stopped once the Ritz residual drops below tolerance * B.
FrameBounds frame_bounds(const GaborSystem &sys, BoundsMethod method = BoundsMethod::dense,
                         const IterativeOptions &opts = {});

/// Frame bounds of an arbitrary family stored column-wise.
FrameBounds frame_bounds(const CMatrix &family);

enum class DualMethod { automatic, factorize, conjugate_gradient };

struct FrameData {
    Real A = 0;
    Real B = 0;
    CMatrix S;
    /// Column i = S^{-1} g_i.
    CMatrix duals;
    /// Column i = S^{-1/2} g_i, when requested.
    std::optional<CMatrix> parseval;

    /// <g_i, S^{-1} g_i> for every i.
    CVector diagonal_products(const CMatrix &family) const;
};

/// Canonical dual of the columns of `family` (which must span the space).
/// Throws NotAFrame when A <= kFrameThreshold * B. Residuals
/// ||S d_i - f_i|| stay below 1e-9 ||f_i||.
FrameData canonical_dual(const CMatrix &family, DualMethod method = DualMethod::automatic);
FrameData canonical_dual(const GaborSystem &sys, DualMethod method = DualMethod::automatic);

/// S^{-1/2} applied to every element, via a dense eigendecomposition.
CMatrix parseval(const CMatrix &family);
CMatrix parseval(const GaborSystem &sys);

struct RandomThinning {
    Real fraction = 0.5;
    std::uint64_t seed = 0;
};

/// One point removed from every superlattice cell made of round(1/fraction)
/// consecutive reference cells along the time axis (frequency axis if the
/// time count does not divide). The removed point in each supercell is
/// chosen with a seeded generator among the points the rounding map sends
/// there.
struct PerCellRemoval {
    Real fraction = 0.5;
    RefLattice lattice;
    std::uint64_t seed = 0;
};

struct ExplicitRemoval {
    std::vector<Index> indices;
};

using RemovalStrategy = std::variant<RandomThinning, PerCellRemoval, ExplicitRemoval>;

struct RemovalResult {
    GaborSystem survivor;
    PointSet removed;
    std::vector<Index> removed_indices;
};

RemovalResult remove_subset(const GaborSystem &sys, const RemovalStrategy &strategy);

} // namespace gaborlab

#endif
