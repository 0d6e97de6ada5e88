#include <gaborlab/counterexamples.hpp>

#include <gaborlab/gabor.hpp>
#include <gaborlab/measure.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

namespace gaborlab {

Index BlockSpace::dimension() const { return std::accumulate(blocks.begin(), blocks.end(), Index(0)); }

Index BlockSpace::start(std::size_t b) const
{
    return std::accumulate(blocks.begin(), blocks.begin() + static_cast<std::ptrdiff_t>(b), Index(0));
}

namespace {

void check_size(Index n, Index min, const char *what)
{
    if (n < min)
        throw InvalidArgument(std::string(what) + " must be at least " + std::to_string(min));
}

BlockSpace consecutive_blocks(Index n_max)
{
    BlockSpace s;
    for (Index n = 1; n <= n_max; ++n)
        s.blocks.push_back(n);
    return s;
}

std::vector<Index> iota_index(Index n, Index start = 0)
{
    std::vector<Index> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), start);
    return v;
}

} // namespace

HarmonicBlock harmonic_block(Index n)
{
    check_size(n, 1, "block size");
    HarmonicBlock hb;
    hb.E = CMatrix::Identity(n, n);
    hb.F.resize(n, n);
    const Real s = 1 / std::sqrt(static_cast<Real>(n));
    for (Index k = 0; k < n; ++k)
        for (Index j = 0; j < n; ++j)
            hb.F(j, k) = s * std::polar(Real(1), 2 * kPi * static_cast<Real>((j * k) % n) /
                                                     static_cast<Real>(n));
    return hb;
}

Real harmonic_tail(Index n, Index N)
{
    const HarmonicBlock hb = harmonic_block(n);
    Real s = 0;
    for (Index k = N + 1; k < n; ++k)
        s += std::norm(hb.E.col(0).dot(hb.F.col(k)));
    return s;
}

Pairing no_hap_pair(Index n_max)
{
    check_size(n_max, 1, "n_max");
    const BlockSpace space = consecutive_blocks(n_max);
    const Index d = space.dimension();
    Pairing p;
    p.E = CMatrix::Identity(d, d);
    p.F = CMatrix::Zero(d, d);
    for (std::size_t b = 0; b < space.blocks.size(); ++b) {
        const Index n = space.blocks[b];
        const Index s = space.start(b);
        p.F.block(s, s, n, n) = harmonic_block(n).F;
    }
    p.geometry = line_geometry(d, 0, iota_index(d));
    return p;
}

Pairing weak_not_strong_pair(Index n_max)
{
    check_size(n_max, 1, "n_max");
    const BlockSpace space = consecutive_blocks(n_max);
    const Index d = space.dimension();
    Pairing p;
    p.E = CMatrix::Identity(d, d);
    p.F = CMatrix::Zero(d, 2 * d);
    std::vector<Index> image;
    const Real h = 1 / std::sqrt(Real(2));
    for (std::size_t b = 0; b < space.blocks.size(); ++b) {
        const Index n = space.blocks[b];
        const Index s = space.start(b);
        const CMatrix Fn = harmonic_block(n).F;
        for (Index i = 0; i < n; ++i) {
            p.F.block(s, 2 * (s + i), n, 1) = h * Fn.col(i);
            p.F(s + i, 2 * (s + i) + 1) = h;
            image.push_back(s + i);
            image.push_back(s + i);
        }
    }
    p.geometry = line_geometry(d, 0, image);
    return p;
}

Pairing perturbed_basis(Index M)
{
    check_size(M, 1, "M");
    const Index d = 2 * M + 1;
    Pairing p;
    p.E = CMatrix::Identity(d, d);
    p.F = CMatrix::Identity(d, d);
    for (Index j = -M; j <= M; ++j)
        p.F(-j + M, j + M) += 1 / std::sqrt(4 + static_cast<Real>(std::abs(j)));
    p.geometry = line_geometry(d, -M, iota_index(d, -M));
    return p;
}

ColumnNotRowBlock column_not_row_block(Index n)
{
    check_size(n, 1, "block size");
    ColumnNotRowBlock b;
    const Real c = 1 / (2 * std::sqrt(static_cast<Real>(n)));
    b.F = CMatrix::Identity(n, n);
    b.dual = CMatrix::Identity(n, n);
    for (Index i = 1; i < n; ++i) {
        b.F(0, i) = c;
        b.dual(i, 0) = -c;
    }
    return b;
}

Real column_not_row_column_tail(Index n)
{
    const ColumnNotRowBlock b = column_not_row_block(n);
    Real s = 0;
    for (Index i = 1; i < n; ++i)
        s += std::norm(b.F(0, i));
    return s;
}

Real column_not_row_row_tail(Index n)
{
    const ColumnNotRowBlock b = column_not_row_block(n);
    if (n < 2)
        return 0;
    Real s = 0;
    for (Index j = 0; j < n; ++j)
        if (j != 1)
            s += std::norm(b.F(j, 1));
    return s;
}

Pairing column_not_row_pair(Index n_max)
{
    check_size(n_max, 1, "n_max");
    const BlockSpace space = consecutive_blocks(n_max);
    const Index d = space.dimension();
    Pairing p;
    p.E = CMatrix::Identity(d, d);
    p.F = CMatrix::Zero(d, d);
    for (std::size_t b = 0; b < space.blocks.size(); ++b) {
        const Index n = space.blocks[b];
        const Index s = space.start(b);
        p.F.block(s, s, n, n) = column_not_row_block(n).F;
    }
    p.geometry = line_geometry(d, 0, iota_index(d));
    return p;
}

DoubleIndexExample double_index_example(Index M)
{
    check_size(M, 1, "M");
    DoubleIndexExample ex;
    ex.F = CMatrix::Identity(2 * M, 2 * M);
    ex.geometry.period = {M, 0};
    ex.E.resize(2 * M, M);
    ex.P_E = CMatrix::Zero(2 * M, 2 * M);
    for (Index n = 0; n < M; ++n) {
        ex.geometry.image.push_back({n, 0});
        ex.geometry.image.push_back({n, 0});
        ex.geometry.reference.push_back({n, 0});
        ex.E.col(n) = ex.F.col(2 * n);
        ex.P_E(2 * n, 2 * n) = 1;
    }
    return ex;
}

DualLocalizedExample dual_localized_not_self(Index M, Real c0, const std::vector<Real> &weights)
{
    check_size(M, 1, "M");
    if (!(c0 > 0.5 && c0 < 1))
        throw InvalidArgument("c0 must lie in (1/2, 1)");
    if (!weights.empty() && static_cast<Index>(weights.size()) != M)
        throw SizeMismatch("weights must list w_1..w_M");
    const Index d = 2 * M + 1;
    DualLocalizedExample ex;
    ex.c = RVector::Zero(d);
    for (Index i = 1; i <= M; ++i) {
        const Real w = weights.empty()
                           ? 1 / (static_cast<Real>(i) * std::log(2 + static_cast<Real>(i)))
                           : weights[static_cast<std::size_t>(i - 1)];
        if (!(w > 0))
            throw InvalidArgument("weights must be positive");
        ex.c(M + i) = w;
        ex.c(M - i) = w;
    }
    ex.c *= std::sqrt((1 - c0 * c0) / ex.c.squaredNorm());
    ex.c(M) = c0;
    ex.F = CMatrix::Identity(d, d);
    ex.F.col(M) = ex.c.cast<Complex>();
    ex.geometry = line_geometry(d, -M, iota_index(d, -M));
    return ex;
}

Pairing infinite_density_bessel(Index M)
{
    check_size(M, 1, "M");
    Pairing p;
    p.E = CMatrix::Identity(M + 1, M + 1);
    p.F = CMatrix::Zero(M + 1, 2 * M);
    std::vector<Index> image;
    for (Index n = -M; n <= -1; ++n) {
        p.F(0, n + M) = std::ldexp(Real(1), static_cast<int>(n));
        image.push_back(0);
    }
    for (Index k = 1; k <= M; ++k) {
        p.F(k, M + k - 1) = 1;
        image.push_back(k);
    }
    p.geometry = line_geometry(M + 1, 0, image);
    return p;
}

Pairing random_pair(Index d, std::uint64_t seed)
{
    check_size(d, 2, "dimension");
    std::mt19937_64 rng(seed);
    std::normal_distribution<Real> nd;
    std::uniform_int_distribution<Index> extra(0, d);
    std::uniform_real_distribution<Real> width(0.5, 4);
    std::uniform_int_distribution<int> nudge(-1, 1);

    auto family = [&](Index m, Real ell, std::vector<Index> &centers) {
        CMatrix X(d, m);
        for (Index i = 0; i < m; ++i) {
            const Index c = (i * d) / m;
            centers.push_back(c);
            for (Index k = 0; k < d; ++k) {
                const Real decay = std::exp(-std::abs(static_cast<Real>(k - c)) / ell);
                X(k, i) = decay * Complex(nd(rng), nd(rng));
            }
        }
        return X;
    };

    Pairing p;
    const Index mE = d + extra(rng) / 2;
    const Index mF = d + extra(rng);
    std::vector<Index> cE;
    std::vector<Index> cF;
    p.E = family(mE, width(rng), cE);
    p.F = family(mF, width(rng), cF);
    // Reference positions are distinct: e_j sits at j, scaled to C^d coordinates.
    std::vector<Index> image;
    for (Index i = 0; i < mF; ++i) {
        const Index pos = (cF[static_cast<std::size_t>(i)] * mE) / d + nudge(rng);
        image.push_back(std::clamp<Index>(pos, 0, mE - 1));
    }
    p.geometry = line_geometry(mE, 0, image);
    return p;
}

std::size_t RelationsReport::violations() const
{
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const BridgeCheck &c) { return !c.passed; }));
}

bool bridge_holds(Real lhs, Real rhs) { return !(lhs > rhs * (1 + 1e-9) + 1e-12); }

namespace {

struct FrameSide {
    bool frame = false;
    bool riesz = false;
    Real A = 0;
    CMatrix duals;
    /// Bounds of the dual family.
    Real dual_A = 0;
    Real dual_B = 0;
    const CMatrix *family = nullptr;
};

FrameSide analyse(const CMatrix &X)
{
    FrameSide s;
    s.family = &X;
    const FrameBounds b = frame_bounds(X);
    s.frame = b.is_frame();
    if (!s.frame)
        return s;
    const FrameData fd = canonical_dual(X, DualMethod::factorize);
    s.A = fd.A;
    s.duals = fd.duals;
    s.riesz = X.cols() == X.rows();
    const FrameBounds db = frame_bounds(fd.duals);
    s.dual_A = db.A;
    s.dual_B = db.B;
    return s;
}

Real max_image_norm(const CMatrix &S, const CMatrix &X)
{
    return (S * X).colwise().norm().maxCoeff();
}

Index multiplicity(const std::vector<Offset> &pos)
{
    std::map<Offset, Index> count;
    Index best = 0;
    for (const auto &p : pos)
        best = std::max(best, ++count[p]);
    return best;
}

} // namespace

RelationsReport relations_suite(const Pairing &pair, const std::vector<Index> &N_values)
{
    const CMatrix &F = pair.F;
    const CMatrix &E = pair.E;
    const IndexGeometry &g = pair.geometry;
    RelationsReport rep;
    rep.N_values = N_values;
    rep.column = column_decay_profile(F, E, g, 2, N_values);
    rep.row = row_decay_profile(F, E, g, 2, N_values);
    const Envelope env = localization_envelope(F, E, g);
    const Index K = g.max_multiplicity();
    const Index K_E = multiplicity(g.reference);

    const FrameSide fs = analyse(F);
    const FrameSide es = analyse(E);
    rep.F_is_frame = fs.frame;
    rep.E_is_frame = es.frame;
    const Real C_F = fs.frame ? max_image_norm(frame_operator_of(F), E) : 0;
    const Real C_E = es.frame ? max_image_norm(frame_operator_of(E), F) : 0;

    auto add = [&](const std::string &name, Index N, Real lhs, Real rhs) {
        rep.checks.push_back({name, N, lhs, rhs, bridge_holds(lhs, rhs)});
    };

    for (std::size_t k = 0; k < N_values.size(); ++k) {
        const Index N = N_values[k];
        const Real col = rep.column.eps[k];
        const Real row = rep.row.eps[k];
        const Real tail = env.tail(2, N);
        rep.envelope_tail.push_back(tail);
        add("column <= K * envelope tail", N, col, static_cast<Real>(K) * tail);
        add("row <= K_E * envelope tail", N, row, static_cast<Real>(K_E) * tail);
        add("column_p1 <= K * envelope tail_p1", N,
            column_decay_profile(F, E, g, 1, {N}).eps[0], static_cast<Real>(K) * env.tail(1, N));

        if (fs.frame) {
            const Real strong = strong_hap_error(F, fs.duals, E, g, N);
            const Real weak = weak_hap_error(fs.duals, E, g, N);
            rep.strong_hap.push_back(strong);
            rep.weak_hap.push_back(weak);
            add("strong^2 <= column / A_F", N, strong * strong, col / fs.A);
            add("column <= C_F * strong", N, col, C_F * strong);
            add("weak <= strong", N, weak, strong);
            if (fs.riesz)
                add("strong^2 <= (B'/A') weak^2", N, strong * strong,
                    fs.dual_B / fs.dual_A * weak * weak);
        }
        if (es.frame) {
            const Real strong = strong_dual_hap_error(F, E, es.duals, g, N);
            const Real weak = weak_dual_hap_error(F, es.duals, g, N);
            rep.strong_dual_hap.push_back(strong);
            rep.weak_dual_hap.push_back(weak);
            add("dual strong^2 <= row / A_E", N, strong * strong, row / es.A);
            add("row <= C_E * dual strong", N, row, C_E * strong);
            add("dual weak <= dual strong", N, weak, strong);
            if (es.riesz)
                add("dual strong^2 <= (B'/A') dual weak^2", N, strong * strong,
                    es.dual_B / es.dual_A * weak * weak);
        }
    }

    rep.column_decay = decays(rep.column.eps);
    rep.row_decay = decays(rep.row.eps);
    rep.strong_hap_holds = fs.frame && decays(rep.strong_hap);
    rep.weak_hap_holds = fs.frame && decays(rep.weak_hap);
    rep.strong_dual_hap_holds = es.frame && decays(rep.strong_dual_hap);
    rep.l2_localized = decays(rep.envelope_tail);
    return rep;
}

} // namespace gaborlab

namespace gaborlab {

namespace {

ConstantCheck make_check(std::string name, Real value, Real expected, Real tol,
                         ConstantCheck::Kind kind = ConstantCheck::Kind::equal)
{
    ConstantCheck c{std::move(name), value, expected, tol, kind, false};
    switch (kind) {
    case ConstantCheck::Kind::equal:
        c.passed = std::abs(value - expected) <= tol;
        break;
    case ConstantCheck::Kind::at_least:
        c.passed = value >= expected - tol;
        break;
    case ConstantCheck::Kind::at_most:
        c.passed = value <= expected + tol;
        break;
    }
    return c;
}

std::string idx(const std::string &label, Index v) { return label + "=" + std::to_string(v); }

} // namespace

const std::vector<std::string> &counterexample_names()
{
    static const std::vector<std::string> names = {
        "harmonic",        "no_hap",       "weak_not_strong",         "perturbed_basis",
        "column_not_row",  "double_index", "dual_localized_not_self", "infinite_density_bessel"};
    return names;
}

std::vector<ConstantCheck> constant_checks(const std::string &name, Index size)
{
    using K = ConstantCheck::Kind;
    std::vector<ConstantCheck> out;
    if (name == "harmonic") {
        const Index n = size;
        for (Index N = 0; N < n; ++N)
            out.push_back(make_check("tail " + idx("n", n) + " " + idx("N", N), harmonic_tail(n, N),
                                     static_cast<Real>(n - N - 1) / static_cast<Real>(n), 1e-12));
        const HarmonicBlock hb = harmonic_block(n);
        out.push_back(make_check("gram deviation from identity",
                                 (hb.F.adjoint() * hb.F - hb.E).cwiseAbs().maxCoeff(), 0, 1e-12));
    } else if (name == "no_hap") {
        const Pairing p = no_hap_pair(size);
        std::vector<Index> Ns;
        for (Index N = 2; N < size; N *= 2)
            Ns.push_back(N);
        const DecayProfile col = column_decay_profile(p.F, p.E, p.geometry, 2, Ns);
        for (std::size_t k = 0; k < Ns.size(); ++k)
            out.push_back(make_check("column eps " + idx("N", Ns[k]), col.eps[k],
                                     static_cast<Real>(size - Ns[k] - 1) / static_cast<Real>(size),
                                     1e-12, K::at_least));
        out.push_back(make_check("harmonic tail " + idx("n", size) + " N=1", harmonic_tail(size, 1),
                                 static_cast<Real>(size - 2) / static_cast<Real>(size), 1e-12));
    } else if (name == "weak_not_strong") {
        const Pairing p = weak_not_strong_pair(size);
        const FrameBounds b = frame_bounds(p.F);
        out.push_back(make_check("lower frame bound", b.A, 1, 1e-10));
        out.push_back(make_check("upper frame bound", b.B, 1, 1e-10));
        out.push_back(make_check("weak HAP error N=2", weak_hap_error(p.F, p.E, p.geometry, 2), 0, 1e-12));
        for (Index N = 2; N <= size / 2; N *= 2)
            out.push_back(make_check("strong HAP error " + idx("N", N),
                                     strong_hap_error(p.F, p.F, p.E, p.geometry, N), 0.4, 0,
                                     K::at_least));
    } else if (name == "perturbed_basis") {
        const Pairing p = perturbed_basis(size);
        const FrameBounds b = frame_bounds(p.F);
        out.push_back(make_check("lower frame bound", b.A, 0.25, 1e-12, K::at_least));
        out.push_back(make_check("upper frame bound", b.B, 2.25, 1e-12, K::at_most));
        const Envelope env = localization_envelope(p.F, p.E, p.geometry);
        for (Index j = 1; j <= std::min<Index>(size, 8); ++j)
            out.push_back(make_check("envelope at offset 2j " + idx("j", j), env.at({2 * j, 0}),
                                     1 / std::sqrt(4 + static_cast<Real>(j)), 1e-12));
        // Column tails follow the case split 0 for -N/4 < j <= N/4, else 1/(4+|j|).
        const Index N = 8;
        const RMatrix G = cross_gram(p.F, p.E).cwiseAbs2();
        for (Index j = -std::min<Index>(size, 4); j <= std::min<Index>(size, 4); ++j) {
            Real tail = 0;
            for (Index i = 0; i < p.F.cols(); ++i)
                if (!in_box(p.geometry.offset(i, j + size), N))
                    tail += G(i, j + size);
            const bool inside = 4 * j > -N && 4 * j <= N;
            out.push_back(make_check("column tail N=8 " + idx("j", j), tail,
                                     inside ? 0 : 1 / (4 + static_cast<Real>(std::abs(j))), 1e-12));
        }
    } else if (name == "column_not_row") {
        const Index n = size;
        const auto sv = singular_extremes(column_not_row_block(n).F);
        out.push_back(make_check("lower Riesz bound", sv.lower, 0.5, 1e-10, K::at_least));
        out.push_back(make_check("upper Riesz bound", sv.upper, 1.5, 1e-10, K::at_most));
        out.push_back(make_check("column tail at e_1", column_not_row_column_tail(n),
                                 static_cast<Real>(n - 1) / (4.0 * static_cast<Real>(n)), 1e-12));
        out.push_back(make_check("row tail at f_2", column_not_row_row_tail(n),
                                 n >= 2 ? 1 / (4.0 * static_cast<Real>(n)) : 0, 1e-12));
        const ColumnNotRowBlock b = column_not_row_block(n);
        out.push_back(make_check("biorthogonality deviation",
                                 (b.dual.adjoint() * b.F - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff(),
                                 0, 1e-12));
    } else if (name == "double_index") {
        const DoubleIndexExample ex = double_index_example(size);
        const Index N = std::min<Index>(size, 8);
        const IndexDensity d = index_density(ex.geometry, N, ex.geometry.reference);
        const RelativeMeasure m = relative_measure(ex.F, ex.F, ex.P_E, ex.geometry, N, ex.geometry.reference);
        out.push_back(make_check("lower density", d.minus, 2, 1e-12));
        out.push_back(make_check("upper density", d.plus, 2, 1e-12));
        out.push_back(make_check("lower relative measure", m.minus, 0.5, 1e-12));
        out.push_back(make_check("upper relative measure", m.plus, 0.5, 1e-12));
        out.push_back(make_check("density times measure", d.plus * m.minus, 1, 1e-12));
        const Envelope self = self_localization_envelope(ex.F, ex.geometry);
        out.push_back(make_check("self envelope off zero", self.p_norm(1) - self.at({0, 0}), 0, 1e-12));
    } else if (name == "dual_localized_not_self") {
        const Real c0 = 0.75;
        const DualLocalizedExample ex = dual_localized_not_self(size, c0);
        const Index d = ex.F.rows();
        const Real smax = singular_extremes(CMatrix(CMatrix::Identity(d, d) - ex.F)).upper;
        out.push_back(make_check("squared norm of 1 - T", smax * smax, 2 - 2 * c0, 1e-10));
        out.push_back(make_check("norm of 1 - T", smax, 1, 0, K::at_most));
        const FrameData fd = canonical_dual(ex.F, DualMethod::factorize);
        out.push_back(make_check("biorthogonality deviation",
                                 (fd.duals.adjoint() * ex.F - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff(),
                                 0, 1e-9));
        const Envelope self = self_localization_envelope(ex.F, ex.geometry);
        out.push_back(make_check("self envelope l1 mass", self.p_norm(1), ex.c.sum(), 1e-12, K::at_least));
    } else if (name == "infinite_density_bessel") {
        const Pairing p = infinite_density_bessel(size);
        const Envelope env = localization_envelope(p.F, p.E, p.geometry);
        out.push_back(make_check("envelope at 0", env.at({0, 0}), 1, 1e-12));
        out.push_back(make_check("envelope off 0", env.p_norm(1) - env.at({0, 0}), 0, 1e-12));
        out.push_back(make_check("multiplicity at 0", static_cast<Real>(p.geometry.max_multiplicity()),
                                 static_cast<Real>(size), 0));
        out.push_back(make_check("minimum norm", p.F.colwise().norm().minCoeff(),
                                 std::ldexp(Real(1), -static_cast<int>(size)), 0));
    } else {
        throw InvalidArgument("unknown counterexample '" + name + "'");
    }
    return out;
}

} // namespace gaborlab
