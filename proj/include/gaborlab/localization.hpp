#ifndef GABORLAB_LOCALIZATION_HPP
#define GABORLAB_LOCALIZATION_HPP

// Localization of a family F = {f_i} against a reference E = {e_j} along an
// index map a: envelopes, column/row decay profiles, HAP errors and Gabor
// molecule envelopes. Families are stored column-wise.

#include <gaborlab/gabor.hpp>
#include <gaborlab/types.hpp>

#include <array>
#include <iosfwd>
#include <map>
#include <vector>

namespace gaborlab {

/// Integer position in the index group (one or two axes).
using Offset = std::array<Index, 2>;

/// Where the reference elements sit and where a sends each f_i. Axes with
/// period 0 are not periodic; offsets along periodic axes are reduced to
/// [-P/2, P/2).
struct IndexGeometry {
    Offset period{0, 0};
    std::vector<Offset> reference;
    std::vector<Offset> image;

    Offset difference(const Offset &from, const Offset &to) const;
    /// Offset a(i) - position(e_j).
    Offset offset(Index i, Index j) const { return difference(image[i], reference[j]); }
    /// Largest number of indices sharing one image point.
    Index max_multiplicity() const;
};

/// Half-open box [-N/2, N/2) on every axis.
bool in_box(const Offset &d, Index N);

/// Geometry of one-axis examples over Z: e_j at j + origin, a(i) given.
IndexGeometry line_geometry(Index n_reference, Index origin, std::vector<Index> image);

/// Lattice reference at (j a, k b), time index major, with a given by the
/// rounding map onto that lattice.
IndexGeometry gabor_geometry(const PointSet &points, const RefLattice &lat);

/// F, E and the geometry linking them.
struct Pairing {
    CMatrix F;
    CMatrix E;
    IndexGeometry geometry;
};

/// F = G(sys), E = G(reference window, lat).
Pairing gabor_pairing(const GaborSystem &sys, const Signal &reference_window, const RefLattice &lat);

class Envelope {
  public:
    std::map<Offset, Real> values;

    Real at(const Offset &k) const;
    /// (sum r^p)^{1/p}; p = infinity gives the max.
    Real p_norm(Real p) const;
    /// sum over offsets outside the box of side N of r^p.
    Real tail(Real p, Index N) const;
    /// Number of offsets with value above `threshold`.
    std::size_t support_size(Real threshold = 0) const;
};

/// values[k] = max |<f_i, e_j>| over pairs with a(i) - pos(e_j) = k.
Envelope localization_envelope(const CMatrix &F, const CMatrix &E, const IndexGeometry &g);
/// Largest amount by which some |<f_i, e_j>| exceeds its envelope entry.
Real envelope_violation(const Envelope &env, const CMatrix &F, const CMatrix &E,
                        const IndexGeometry &g);

/// values[k] = max |<f_i, f_j>| over a(i) - a(j) = k.
Envelope self_localization_envelope(const CMatrix &F, const IndexGeometry &g);
/// values[k] = max |<f_i, dual_j>| over a(i) - a(j) = k.
Envelope dual_localization_envelope(const CMatrix &F, const CMatrix &duals, const IndexGeometry &g);

struct DecayProfile {
    std::vector<Index> N_values;
    std::vector<Real> eps;
};

/// eps(N) = max_j sum_{i not in I_N(j)} |<f_i, e_j>|^p, with
/// I_N(j) = {i : a(i) - pos(e_j) in the box of side N}.
DecayProfile column_decay_profile(const CMatrix &F, const CMatrix &E, const IndexGeometry &g,
                                  Real p, const std::vector<Index> &N_values);
/// eps(N) = max_i sum_{j not in S_N(a(i))} |<f_i, e_j>|^p.
DecayProfile row_decay_profile(const CMatrix &F, const CMatrix &E, const IndexGeometry &g, Real p,
                               const std::vector<Index> &N_values);

/// max_j || e_j - sum_{i in I_N(j)} <e_j, f_i> dual_i ||.
Real strong_hap_error(const CMatrix &F, const CMatrix &F_duals, const CMatrix &E,
                      const IndexGeometry &g, Index N);
/// max_j dist(e_j, span{dual_i : i in I_N(j)}).
Real weak_hap_error(const CMatrix &F_duals, const CMatrix &E, const IndexGeometry &g, Index N);
/// max_i || f_i - sum_{j in S_N(a(i))} <f_i, e_j> edual_j ||.
Real strong_dual_hap_error(const CMatrix &F, const CMatrix &E, const CMatrix &E_duals,
                           const IndexGeometry &g, Index N);
/// max_i dist(f_i, span{edual_j : j in S_N(a(i))}).
Real weak_dual_hap_error(const CMatrix &F, const CMatrix &E_duals, const IndexGeometry &g, Index N);

/// Distance from v to the span of the columns of D. Rank is decided by a
/// pivoted QR with relative threshold 1e-12.
Real span_distance(const CMatrix &D, const CVector &v);

/// Operational "tends to zero": the last value is at most `ratio` times the
/// first, or below `floor`.
bool decays(const std::vector<Real> &values, Real ratio = 0.25, Real floor = 1e-12);

struct MoleculeEnvelope {
    /// gamma(x, w) with (x, w) read as centered torus offsets.
    RMatrix gamma;
    Real amalgam_l1 = 0;
    Real amalgam_l2 = 0;
    /// Largest |V f_l(z)| - gamma(z - l) over all l, z (0 by construction).
    Real max_violation = 0;
    /// Largest distance of a point from its grid rounding (per axis).
    Real rounding_offset = 0;
    /// Largest change of gamma between neighbouring grid points.
    Real grid_modulus = 0;
};

/// Gamma(z) = max_l |V_gamma f_l(z + l)| with l rounded to the grid. The
/// amalgam surrogates use `cells` as the tiling.
MoleculeEnvelope molecule_envelope(const CMatrix &F, const PointSet &points, const Signal &window,
                                   const RefLattice &cells);
/// Share of the amalgam l1 surrogate carried by points with centered
/// l-infinity radius above `radius`.
Real molecule_tail_fraction(const MoleculeEnvelope &env, Real radius, const RefLattice &cells);

/// CSV with header "N,eps".
void write_profile_csv(std::ostream &out, const DecayProfile &profile);
/// CSV with header "dx,domega,value".
void write_envelope_csv(std::ostream &out, const Envelope &env);

} // namespace gaborlab

#endif
