#include <gaborlab/gabor.hpp>

#include <Eigen/IterativeLinearSolvers>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

namespace gaborlab {

GaborSystem::GaborSystem(Signal window, PointSet points)
    : window_(std::move(window)), points_(std::move(points))
{
    if (points_.L() != window_.size())
        throw SizeMismatch("window length " + std::to_string(window_.size()) +
                           " differs from torus side " + std::to_string(points_.L()));
    const Index L = window_.size();
    shifts_.reserve(static_cast<std::size_t>(points_.size()));
    elements_.resize(L, points_.size());
    for (Index i = 0; i < points_.size(); ++i) {
        const GridPoint q{quantize(points_[i].x, L), quantize(points_[i].omega, L)};
        shifts_.push_back(q);
        elements_.col(i) = tf_shifted(window_.samples(), q.x, q.omega);
    }
}

GaborSystem lattice_system(const Signal &window, const RefLattice &lat)
{
    return GaborSystem(window, lattice_points(lat, window.torus()));
}

CVector analysis(const GaborSystem &sys, const Signal &f)
{
    if (f.size() != sys.L())
        throw SizeMismatch("analysis: signal length differs from system");
    return sys.elements().adjoint() * f.samples();
}

Signal synthesis(const GaborSystem &sys, const CVector &c)
{
    if (c.size() != sys.size())
        throw SizeMismatch("synthesis: coefficient count differs from system size");
    return Signal(sys.elements() * c);
}

CMatrix frame_operator(const GaborSystem &sys) { return frame_operator_of(sys.elements()); }

Signal apply_frame_operator(const GaborSystem &sys, const Signal &f)
{
    return synthesis(sys, analysis(sys, f));
}

Real FrameBounds::condition() const
{
    if (!is_frame())
        return std::numeric_limits<Real>::infinity();
    return B / A;
}

namespace {

struct RitzPair {
    Real value = 0;
    Real residual = 0;
};

// Power iteration for the top eigenpair of a Hermitian PSD operator.
template <typename Apply>
RitzPair power_iteration(Apply &&apply, Index n, const IterativeOptions &opts, Real scale,
                         std::vector<Real> &history)
{
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<Real> nd;
    CVector v(n);
    for (Index i = 0; i < n; ++i)
        v(i) = Complex(nd(rng), nd(rng));
    v.normalize();
    RitzPair rp;
    for (Index it = 0; it < opts.max_iterations; ++it) {
        CVector w = apply(v);
        rp.value = v.dot(w).real();
        rp.residual = (w - rp.value * v).norm();
        history.push_back(rp.value);
        if (history.size() > 8)
            history.erase(history.begin());
        const Real target = opts.tolerance * std::max(scale, std::abs(rp.value));
        if (rp.residual <= target)
            return rp;
        const Real wn = w.norm();
        if (wn == 0)
            return rp;
        v = w / wn;
    }
    throw ConvergenceError("power iteration did not reach residual " +
                               std::to_string(opts.tolerance) + " after " +
                               std::to_string(opts.max_iterations) + " iterations",
                           history);
}

} // namespace

FrameBounds frame_bounds(const GaborSystem &sys, BoundsMethod method, const IterativeOptions &opts)
{
    if (sys.size() == 0)
        return {};
    if (method == BoundsMethod::dense) {
        if (sys.L() > kMaxDenseL)
            throw InvalidArgument("dense frame bounds need L <= " + std::to_string(kMaxDenseL) +
                                  "; use the iterative method");
        return frame_bounds(sys.elements());
    }

    const CMatrix &G = sys.elements();
    std::vector<Real> history;
    auto applyS = [&](const CVector &v) -> CVector { return G * (G.adjoint() * v); };
    const RitzPair top = power_iteration(applyS, sys.L(), opts, 0, history);
    const Real B = top.value;
    history.clear();
    auto applyShift = [&](const CVector &v) -> CVector { return B * v - applyS(v); };
    const RitzPair low = power_iteration(applyShift, sys.L(), opts, B, history);
    return {std::max<Real>(B - low.value, 0), B};
}

FrameBounds frame_bounds(const CMatrix &family)
{
    const auto b = frame_bounds_of(family);
    return {b.lower, b.upper};
}

CVector FrameData::diagonal_products(const CMatrix &family) const
{
    CVector out(family.cols());
    for (Index i = 0; i < family.cols(); ++i)
        out(i) = duals.col(i).dot(family.col(i));
    return out;
}

FrameData canonical_dual(const CMatrix &family, DualMethod method)
{
    FrameData fd;
    fd.S = frame_operator_of(family);
    const auto b = frame_bounds(family);
    fd.A = b.A;
    fd.B = b.B;
    if (!b.is_frame())
        throw NotAFrame("family is not a frame: lower bound " + std::to_string(b.A) +
                            ", upper bound " + std::to_string(b.B),
                        b.A, b.B);

    const Index d = family.rows();
    if (method == DualMethod::automatic)
        method = family.cols() < d / 4 ? DualMethod::conjugate_gradient : DualMethod::factorize;

    if (method == DualMethod::factorize) {
        Eigen::LLT<CMatrix> llt(fd.S);
        fd.duals = llt.solve(family);
        // One refinement sweep tightens the residual for badly conditioned S.
        fd.duals += llt.solve(family - fd.S * fd.duals);
    } else {
        Eigen::ConjugateGradient<CMatrix, Eigen::Lower | Eigen::Upper, Eigen::IdentityPreconditioner>
            cg;
        cg.setTolerance(1e-13);
        cg.setMaxIterations(std::max<Index>(10 * d, 100));
        cg.compute(fd.S);
        fd.duals.resize(d, family.cols());
        for (Index i = 0; i < family.cols(); ++i)
            fd.duals.col(i) = cg.solve(family.col(i));
    }

    for (Index i = 0; i < family.cols(); ++i) {
        const Real res = (fd.S * fd.duals.col(i) - family.col(i)).norm();
        if (res > 1e-9 * std::max<Real>(family.col(i).norm(), 1e-300))
            throw ConvergenceError("dual residual " + std::to_string(res) + " too large for element " +
                                       std::to_string(i),
                                   {fd.A, fd.B});
    }
    return fd;
}

FrameData canonical_dual(const GaborSystem &sys, DualMethod method)
{
    return canonical_dual(sys.elements(), method);
}

CMatrix parseval(const CMatrix &family)
{
    const CMatrix S = frame_operator_of(family);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(S);
    const RVector &ev = es.eigenvalues();
    const Real A = std::max<Real>(ev(0), 0);
    const Real B = ev(ev.size() - 1);
    if (!(B > 0 && A > kFrameThreshold * B))
        throw NotAFrame("family is not a frame", A, B);
    const CMatrix &V = es.eigenvectors();
    const RVector inv_sqrt = ev.cwiseSqrt().cwiseInverse();
    const CMatrix S_inv_half = V * inv_sqrt.asDiagonal() * V.adjoint();
    return S_inv_half * family;
}

CMatrix parseval(const GaborSystem &sys) { return parseval(sys.elements()); }

namespace {

void check_fraction(Real fraction)
{
    if (!(fraction > 0 && fraction < 1))
        throw InvalidArgument("removal fraction must lie in (0, 1)");
}

std::vector<Index> removal_indices(const GaborSystem &sys, const RandomThinning &s)
{
    check_fraction(s.fraction);
    std::mt19937_64 rng(s.seed);
    std::bernoulli_distribution coin(s.fraction);
    std::vector<Index> out;
    for (Index i = 0; i < sys.size(); ++i)
        if (coin(rng))
            out.push_back(i);
    return out;
}

std::vector<Index> removal_indices(const GaborSystem &sys, const PerCellRemoval &s)
{
    check_fraction(s.fraction);
    const TorusParams &torus = sys.points().torus();
    s.lattice.validate(torus);
    const auto m = static_cast<Index>(std::llround(1 / s.fraction));
    const Index nt = s.lattice.time_count(torus);
    const Index nf = s.lattice.freq_count(torus);
    const bool along_time = nt % m == 0;
    if (!along_time && nf % m != 0)
        throw InvalidArgument("supercells of " + std::to_string(m) +
                              " reference cells do not tile the lattice");

    const auto image = round_map(sys.points(), s.lattice);
    std::map<std::pair<Index, Index>, std::vector<Index>> members;
    for (Index i = 0; i < sys.size(); ++i) {
        Index jt = image[static_cast<std::size_t>(i)].x / s.lattice.a_step;
        Index jf = image[static_cast<std::size_t>(i)].omega / s.lattice.b_step;
        if (along_time)
            jt /= m;
        else
            jf /= m;
        members[{jt, jf}].push_back(i);
    }
    std::mt19937_64 rng(s.seed);
    std::vector<Index> out;
    for (const auto &[cell, idx] : members) {
        std::uniform_int_distribution<std::size_t> pick(0, idx.size() - 1);
        out.push_back(idx[pick(rng)]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Index> removal_indices(const GaborSystem &sys, const ExplicitRemoval &s)
{
    std::set<Index> seen;
    for (Index i : s.indices) {
        if (i < 0 || i >= sys.size())
            throw InvalidArgument("explicit removal index out of range");
        if (!seen.insert(i).second)
            throw InvalidArgument("explicit removal index listed twice");
    }
    return {seen.begin(), seen.end()};
}

} // namespace

RemovalResult remove_subset(const GaborSystem &sys, const RemovalStrategy &strategy)
{
    const std::vector<Index> removed =
        std::visit([&](const auto &s) { return removal_indices(sys, s); }, strategy);
    std::vector<char> drop(static_cast<std::size_t>(sys.size()), 0);
    for (Index i : removed)
        drop[static_cast<std::size_t>(i)] = 1;
    std::vector<Index> kept;
    for (Index i = 0; i < sys.size(); ++i)
        if (!drop[static_cast<std::size_t>(i)])
            kept.push_back(i);
    return {GaborSystem(sys.window(), sys.points().subset(kept)), sys.points().subset(removed),
            removed};
}

} // namespace gaborlab
