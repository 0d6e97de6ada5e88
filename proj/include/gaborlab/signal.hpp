#ifndef GABORLAB_SIGNAL_HPP
#define GABORLAB_SIGNAL_HPP

// Periodic signals on Z_L: time-frequency shifts, the window zoo, the STFT,
// and grid surrogates of modulation and Wiener amalgam norms.
//
// DFT convention: fhat(k) = sum_n f(n) exp(-2 pi i k n / L), unnormalized.

#include <gaborlab/pointset.hpp>
#include <gaborlab/types.hpp>

#include <iosfwd>
#include <limits>
#include <string>

namespace gaborlab {

class Signal {
  public:
    explicit Signal(CVector samples);
    static Signal zeros(const TorusParams &torus);
    /// Indicator of sample k (mod L).
    static Signal impulse(const TorusParams &torus, Index k);

    Index size() const { return samples_.size(); }
    TorusParams torus() const { return TorusParams(samples_.size()); }
    const CVector &samples() const { return samples_; }
    Complex operator[](Index n) const { return samples_(n); }
    Real norm() const { return samples_.norm(); }

  private:
    CVector samples_;
};

Complex inner(const Signal &f, const Signal &g);

/// Nearest grid position modulo L (ties round up).
Index quantize(Real v, Index L);

/// (T_x f)(n) = f(n - round(x)).
Signal translate(const Signal &f, Real x);
/// (M_w f)(n) = exp(2 pi i round(w) n / L) f(n).
Signal modulate(const Signal &f, Real omega);
/// M_w T_x f.
Signal tf_shift(const Signal &f, Real x, Real omega);

/// Column vector of M_w T_x f for integer shifts; used to fill system matrices.
CVector tf_shifted(const CVector &f, Index x, Index omega);

/// Periodized 2^{1/4} exp(-pi t^2) sampled at t = n / sqrt(L) (8 wraps each
/// side), renormalized to unit norm. Its DFT is sqrt(L) times itself.
Signal gaussian_window(const TorusParams &torus);
/// Unit-norm indicator of [-width/2, width/2) modulo L; width must divide L.
Signal box_window(const TorusParams &torus, Index width);
/// Unit-norm discretization of ((e^{2 pi i t} + 1) / 2) on [-1/2, 1/2] with
/// support L/2 samples; |.|^2 forms a partition of unity under shifts by L/4.
Signal cosine_bump_window(const TorusParams &torus);

enum class WindowKind { gaussian, box, cosine_bump };
WindowKind parse_window_kind(const std::string &name);
std::string to_string(WindowKind kind);
/// `box_width` only applies to the box window.
Signal make_window(WindowKind kind, const TorusParams &torus, Index box_width);

struct StftGrid {
    /// values(x, w) = V_phi f(x, w) = <f, M_w T_x phi>.
    CMatrix values;
    Real window_norm = 0;

    Index L() const { return values.rows(); }
    RMatrix magnitude() const { return values.cwiseAbs(); }
};

/// Row by row FFT over frequency.
StftGrid stft(const Signal &f, const Signal &window);

/// (sum |V_gamma f|^p)^{1/p} on the L x L grid with the unit Gaussian;
/// p = infinity gives the max. Only meaningful comparatively.
Real mp_norm(const Signal &f, Real p);

/// (sum over a x b cells of (sup_cell F)^p)^{1/p}; the cells tile the torus
/// starting at the origin.
Real amalgam_norm(const RMatrix &F, Real p, const RefLattice &lat);

inline constexpr Real kInfinity = std::numeric_limits<Real>::infinity();

/// CSV with header "x,omega,re,im".
void write_stft_csv(std::ostream &out, const StftGrid &grid);

} // namespace gaborlab

#endif
