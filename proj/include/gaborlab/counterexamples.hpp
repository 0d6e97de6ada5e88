#ifndef GABORLAB_COUNTEREXAMPLES_HPP
#define GABORLAB_COUNTEREXAMPLES_HPP

// Finite truncations of abstract frame constructions in direct sums of small
// blocks, plus a driver that evaluates the localization bridge inequalities
// on any pair.

#include <gaborlab/localization.hpp>
#include <gaborlab/types.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace gaborlab {

/// Concatenation of blocks of the given dimensions, block-major.
struct BlockSpace {
    std::vector<Index> blocks;

    Index dimension() const;
    /// Position of the first coordinate of block b.
    Index start(std::size_t b) const;
};

struct HarmonicBlock {
    /// Identity, columns e_0..e_{n-1}.
    CMatrix E;
    /// f_k = n^{-1/2} sum_j w^{jk} e_j with w = exp(2 pi i / n).
    CMatrix F;
};

HarmonicBlock harmonic_block(Index n);
/// sum over 0-based k > N of |<f_k, e_0>|^2 in block n; equals (n - N - 1)/n.
Real harmonic_tail(Index n, Index N);

/// Harmonic bases of blocks 1..n_max against the standard basis, a = identity.
Pairing no_hap_pair(Index n_max);

/// Blocks 1..n_max; block n holds f_i / sqrt 2 and e_i / sqrt 2 for
/// i = 1..n, both sent by a to the position of e_i.
Pairing weak_not_strong_pair(Index n_max);

/// f_j = e_j + (4 + |j|)^{-1/2} e_{-j} for j in [-M, M]; e_j sits at j.
Pairing perturbed_basis(Index M);

struct ColumnNotRowBlock {
    /// f_1 = e_1, f_i = e_1 / (2 sqrt n) + e_i.
    CMatrix F;
    /// Biorthogonal partner of F.
    CMatrix dual;
};
ColumnNotRowBlock column_not_row_block(Index n);
/// sum_{i >= 2} |<f_i, e_1>|^2 = (n - 1)/(4n).
Real column_not_row_column_tail(Index n);
/// sum_{j != i} |<f_i, e_j>|^2 = 1/(4n) for i >= 2.
Real column_not_row_row_tail(Index n);
/// Blocks 1..n_max against the standard basis, a = identity.
Pairing column_not_row_pair(Index n_max);

struct DoubleIndexExample {
    /// Orthonormal basis f_0..f_{2M-1} (the identity).
    CMatrix F;
    /// a(2n) = a(2n+1) = n, periodic with period M.
    IndexGeometry geometry;
    /// Even-indexed subfamily, with positions n.
    CMatrix E;
    /// Orthogonal projection onto span E.
    CMatrix P_E;
};
DoubleIndexExample double_index_example(Index M);

struct DualLocalizedExample {
    /// Column i + M holds f_i for i in [-M, M].
    CMatrix F;
    IndexGeometry geometry;
    /// c_i, index i + M.
    RVector c;
};
/// f_0 = sum c_i e_i, f_i = e_i otherwise. Off-center weights default to
/// 1 / (|i| log(2 + |i|)); `weights`, when given, holds w_1..w_M and is
/// mirrored. The off-center part is scaled so that sum c_i^2 = 1.
DualLocalizedExample dual_localized_not_self(Index M, Real c0, const std::vector<Real> &weights = {});

/// E = e_0..e_M at positions 0..M; F = 2^n e_0 for n = -M..-1 (all sent to
/// 0) followed by e_1..e_M.
Pairing infinite_density_bessel(Index M);

/// Random frame pair in C^d with m >= d elements per family, elements
/// concentrated near their index position.
Pairing random_pair(Index d, std::uint64_t seed);

struct BridgeCheck {
    std::string name;
    Index N = 0;
    Real lhs = 0;
    Real rhs = 0;
    bool passed = true;
};

struct RelationsReport {
    std::vector<Index> N_values;
    DecayProfile column;
    DecayProfile row;
    std::vector<Real> strong_hap;
    std::vector<Real> weak_hap;
    std::vector<Real> strong_dual_hap;
    std::vector<Real> weak_dual_hap;
    /// Envelope tails sum_{k outside S_N(0)} r^2 at each N.
    std::vector<Real> envelope_tail;
    bool F_is_frame = false;
    bool E_is_frame = false;

    /// Operational flags (see `decays`).
    bool column_decay = false;
    bool row_decay = false;
    bool strong_hap_holds = false;
    bool weak_hap_holds = false;
    bool strong_dual_hap_holds = false;
    bool l2_localized = false;

    std::vector<BridgeCheck> checks;
    std::size_t violations() const;
};

/// lhs > rhs (1 + 1e-9) + 1e-12 counts as a violation.
bool bridge_holds(Real lhs, Real rhs);

/// Evaluates the bridge inequalities at every N:
///   strong^2 <= column / A_F, column <= C_F strong (C_F = max_j |S_F e_j|),
///   the same two with F and E exchanged (dual HAP, row decay),
///   weak <= strong for both HAPs, strong^2 <= (B'/A') weak^2 when F (or E)
///   is a Riesz basis with dual bounds A', B',
///   column <= K tail and row <= K_E tail of the l2 envelope.
/// Inequalities needing a frame are skipped when F or E does not span.
RelationsReport relations_suite(const Pairing &pair, const std::vector<Index> &N_values);

struct ConstantCheck {
    enum class Kind { equal, at_least, at_most };
    std::string name;
    Real value = 0;
    Real expected = 0;
    Real tolerance = 0;
    Kind kind = Kind::equal;
    bool passed = false;
};

/// Names accepted by `constant_checks`.
const std::vector<std::string> &counterexample_names();

/// The published constants of one construction at truncation size `size`,
/// each compared with its computed value. Throws InvalidArgument for an
/// unknown name.
std::vector<ConstantCheck> constant_checks(const std::string &name, Index size);

} // namespace gaborlab

#endif
