#include <gaborlab/signal.hpp>

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <iomanip>
#include <ostream>

namespace gaborlab {

Signal::Signal(CVector samples) : samples_(std::move(samples))
{
    if (samples_.size() < 8)
        throw InvalidArgument("signals need at least 8 samples");
}

Signal Signal::zeros(const TorusParams &torus) { return Signal(CVector::Zero(torus.L())); }

Signal Signal::impulse(const TorusParams &torus, Index k)
{
    CVector v = CVector::Zero(torus.L());
    v(((k % torus.L()) + torus.L()) % torus.L()) = 1;
    return Signal(std::move(v));
}

Complex inner(const Signal &f, const Signal &g)
{
    if (f.size() != g.size())
        throw SizeMismatch("inner product of signals with different lengths");
    return g.samples().dot(f.samples());
}

Index quantize(Real v, Index L)
{
    const auto q = static_cast<Index>(std::floor(v + 0.5));
    return ((q % L) + L) % L;
}

CVector tf_shifted(const CVector &f, Index x, Index omega)
{
    const Index L = f.size();
    x = ((x % L) + L) % L;
    omega = ((omega % L) + L) % L;
    CVector out(L);
    for (Index n = 0; n < L; ++n) {
        // Phase index reduced mod L keeps the argument small.
        const Index k = (omega * n) % L;
        const Real ph = 2 * kPi * static_cast<Real>(k) / static_cast<Real>(L);
        out(n) = std::polar(Real(1), ph) * f((n - x + L) % L);
    }
    return out;
}

Signal translate(const Signal &f, Real x) { return Signal(tf_shifted(f.samples(), quantize(x, f.size()), 0)); }

Signal modulate(const Signal &f, Real omega)
{
    return Signal(tf_shifted(f.samples(), 0, quantize(omega, f.size())));
}

Signal tf_shift(const Signal &f, Real x, Real omega)
{
    return Signal(tf_shifted(f.samples(), quantize(x, f.size()), quantize(omega, f.size())));
}

Signal gaussian_window(const TorusParams &torus)
{
    const Index L = torus.L();
    const Real Lr = static_cast<Real>(L);
    CVector g(L);
    for (Index n = 0; n < L; ++n) {
        // Centered representative so the even symmetry about 0 is exact.
        const Real m = static_cast<Real>(n <= L / 2 ? n : n - L);
        Real s = 0;
        for (int k = -8; k <= 8; ++k) {
            const Real t = m + static_cast<Real>(k) * Lr;
            s += std::exp(-kPi * t * t / Lr);
        }
        g(n) = s;
    }
    g /= g.norm();
    return Signal(std::move(g));
}

Signal box_window(const TorusParams &torus, Index width)
{
    const Index L = torus.L();
    if (width <= 0 || L % width != 0)
        throw InvalidArgument("box width " + std::to_string(width) + " must divide L=" +
                              std::to_string(L));
    CVector g = CVector::Zero(L);
    const Real h = 1 / std::sqrt(static_cast<Real>(width));
    for (Index m = -width / 2; m < width - width / 2; ++m)
        g(((m % L) + L) % L) = h;
    return Signal(std::move(g));
}

Signal cosine_bump_window(const TorusParams &torus)
{
    const Index L = torus.L();
    if (L % 4 != 0)
        throw InvalidArgument("cosine bump window needs L divisible by 4");
    const Index half = L / 4;
    CVector g = CVector::Zero(L);
    for (Index m = -half; m <= half; ++m) {
        const Real t = static_cast<Real>(m) / static_cast<Real>(L / 2);
        g(((m % L) + L) % L) = (std::polar(Real(1), 2 * kPi * t) + Real(1)) / Real(2);
    }
    g /= g.norm();
    return Signal(std::move(g));
}

WindowKind parse_window_kind(const std::string &name)
{
    if (name == "gaussian")
        return WindowKind::gaussian;
    if (name == "box")
        return WindowKind::box;
    if (name == "cosine_bump" || name == "cosine-bump")
        return WindowKind::cosine_bump;
    throw InvalidArgument("unknown window '" + name + "' (expected gaussian, box, cosine_bump)");
}

std::string to_string(WindowKind kind)
{
    switch (kind) {
    case WindowKind::gaussian:
        return "gaussian";
    case WindowKind::box:
        return "box";
    case WindowKind::cosine_bump:
        return "cosine_bump";
    }
    return "unknown";
}

Signal make_window(WindowKind kind, const TorusParams &torus, Index box_width)
{
    switch (kind) {
    case WindowKind::gaussian:
        return gaussian_window(torus);
    case WindowKind::box:
        return box_window(torus, box_width);
    case WindowKind::cosine_bump:
        return cosine_bump_window(torus);
    }
    throw InvalidArgument("unknown window kind");
}

StftGrid stft(const Signal &f, const Signal &window)
{
    if (f.size() != window.size())
        throw SizeMismatch("stft: signal and window lengths differ");
    const Index L = f.size();
    StftGrid grid;
    grid.values.resize(L, L);
    grid.window_norm = window.norm();

    // A local FFT object per call keeps concurrent calls independent.
    Eigen::FFT<Real> fft;
    std::vector<Complex> buf(static_cast<std::size_t>(L));
    std::vector<Complex> spec;
    const CVector &fs = f.samples();
    const CVector &ws = window.samples();
    for (Index x = 0; x < L; ++x) {
        for (Index n = 0; n < L; ++n)
            buf[static_cast<std::size_t>(n)] = fs(n) * std::conj(ws((n - x + L) % L));
        fft.fwd(spec, buf);
        for (Index w = 0; w < L; ++w)
            grid.values(x, w) = spec[static_cast<std::size_t>(w)];
    }
    return grid;
}

Real mp_norm(const Signal &f, Real p)
{
    if (!(p >= 1))
        throw InvalidArgument("modulation norm needs p >= 1");
    const RMatrix mag = stft(f, gaussian_window(f.torus())).magnitude();
    if (std::isinf(p))
        return mag.maxCoeff();
    return std::pow(mag.array().pow(p).sum(), 1 / p);
}

Real amalgam_norm(const RMatrix &F, Real p, const RefLattice &lat)
{
    if (!(p >= 1))
        throw InvalidArgument("amalgam norm needs p >= 1");
    if (F.rows() != F.cols())
        throw SizeMismatch("amalgam norm expects an L x L grid");
    const Index L = F.rows();
    if (lat.a_step <= 0 || lat.b_step <= 0 || L % lat.a_step != 0 || L % lat.b_step != 0)
        throw InvalidLattice("amalgam cells " + std::to_string(lat.a_step) + "x" +
                             std::to_string(lat.b_step) + " must tile L=" + std::to_string(L));
    Real acc = 0;
    for (Index u = 0; u < L; u += lat.a_step) {
        for (Index v = 0; v < L; v += lat.b_step) {
            const Real s = F.block(u, v, lat.a_step, lat.b_step).maxCoeff();
            acc = std::isinf(p) ? std::max(acc, s) : acc + std::pow(s, p);
        }
    }
    return std::isinf(p) ? acc : std::pow(acc, 1 / p);
}

void write_stft_csv(std::ostream &out, const StftGrid &grid)
{
    out << "x,omega,re,im\n" << std::setprecision(17);
    for (Index x = 0; x < grid.L(); ++x)
        for (Index w = 0; w < grid.L(); ++w)
            out << x << ',' << w << ',' << grid.values(x, w).real() << ','
                << grid.values(x, w).imag() << '\n';
}

} // namespace gaborlab
