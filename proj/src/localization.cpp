#include <gaborlab/localization.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>

namespace gaborlab {

namespace {

Index reduce_axis(Index d, Index period)
{
    if (period == 0)
        return d;
    Index r = ((d % period) + period) % period;
    if (2 * r >= period)
        r -= period;
    return r;
}

Real power(Real v, Real p) { return p == 2 ? v * v : std::pow(v, p); }

void check_p(Real p)
{
    if (!(p >= 1))
        throw InvalidArgument("p must be at least 1");
}

void check_pair(const CMatrix &F, const CMatrix &E, const IndexGeometry &g)
{
    if (F.rows() != E.rows())
        throw SizeMismatch("family and reference live in different spaces");
    if (static_cast<Index>(g.image.size()) != F.cols())
        throw SizeMismatch("index map size differs from family size");
    if (static_cast<Index>(g.reference.size()) != E.cols())
        throw SizeMismatch("reference positions differ from reference size");
}

template <typename Value>
Envelope envelope_from(Index rows, Index cols, const std::function<Offset(Index, Index)> &offset,
                       Value &&value)
{
    Envelope env;
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            const Real v = value(i, j);
            auto [it, fresh] = env.values.try_emplace(offset(i, j), v);
            if (!fresh)
                it->second = std::max(it->second, v);
        }
    }
    return env;
}

} // namespace

Offset IndexGeometry::difference(const Offset &from, const Offset &to) const
{
    return {reduce_axis(from[0] - to[0], period[0]), reduce_axis(from[1] - to[1], period[1])};
}

Index IndexGeometry::max_multiplicity() const
{
    std::map<Offset, Index> count;
    Index best = 0;
    for (const auto &p : image)
        best = std::max(best, ++count[difference(p, {0, 0})]);
    return best;
}

bool in_box(const Offset &d, Index N)
{
    for (Index c : d)
        if (2 * c < -N || 2 * c >= N)
            return false;
    return true;
}

IndexGeometry line_geometry(Index n_reference, Index origin, std::vector<Index> image)
{
    IndexGeometry g;
    g.reference.reserve(static_cast<std::size_t>(n_reference));
    for (Index j = 0; j < n_reference; ++j)
        g.reference.push_back({j + origin, 0});
    for (Index a : image)
        g.image.push_back({a, 0});
    return g;
}

IndexGeometry gabor_geometry(const PointSet &points, const RefLattice &lat)
{
    const TorusParams torus = points.torus();
    IndexGeometry g;
    g.period = {torus.L(), torus.L()};
    for (const auto &p : lattice_points(lat, torus))
        g.reference.push_back({static_cast<Index>(p.x), static_cast<Index>(p.omega)});
    for (const auto &q : round_map(points, lat))
        g.image.push_back({q.x, q.omega});
    return g;
}

Pairing gabor_pairing(const GaborSystem &sys, const Signal &reference_window, const RefLattice &lat)
{
    return {sys.elements(), lattice_system(reference_window, lat).elements(),
            gabor_geometry(sys.points(), lat)};
}

Real Envelope::at(const Offset &k) const
{
    const auto it = values.find(k);
    return it == values.end() ? 0 : it->second;
}

Real Envelope::p_norm(Real p) const
{
    if (std::isinf(p)) {
        Real m = 0;
        for (const auto &[k, v] : values)
            m = std::max(m, v);
        return m;
    }
    check_p(p);
    Real s = 0;
    for (const auto &[k, v] : values)
        s += power(v, p);
    return std::pow(s, 1 / p);
}

Real Envelope::tail(Real p, Index N) const
{
    check_p(p);
    Real s = 0;
    for (const auto &[k, v] : values)
        if (!in_box(k, N))
            s += power(v, p);
    return s;
}

std::size_t Envelope::support_size(Real threshold) const
{
    return static_cast<std::size_t>(
        std::count_if(values.begin(), values.end(), [&](const auto &kv) { return kv.second > threshold; }));
}

Envelope localization_envelope(const CMatrix &F, const CMatrix &E, const IndexGeometry &g)
{
    check_pair(F, E, g);
    const RMatrix G = cross_gram(F, E).cwiseAbs();
    return envelope_from(
        F.cols(), E.cols(), [&](Index i, Index j) { return g.offset(i, j); },
        [&](Index i, Index j) { return G(i, j); });
}

Real envelope_violation(const Envelope &env, const CMatrix &F, const CMatrix &E,
                        const IndexGeometry &g)
{
    check_pair(F, E, g);
    const RMatrix G = cross_gram(F, E).cwiseAbs();
    Real worst = 0;
    for (Index i = 0; i < F.cols(); ++i)
        for (Index j = 0; j < E.cols(); ++j)
            worst = std::max(worst, G(i, j) - env.at(g.offset(i, j)));
    return worst;
}

Envelope self_localization_envelope(const CMatrix &F, const IndexGeometry &g)
{
    return dual_localization_envelope(F, F, g);
}

Envelope dual_localization_envelope(const CMatrix &F, const CMatrix &duals, const IndexGeometry &g)
{
    if (F.rows() != duals.rows() || F.cols() != duals.cols())
        throw SizeMismatch("family and duals differ in shape");
    if (static_cast<Index>(g.image.size()) != F.cols())
        throw SizeMismatch("index map size differs from family size");
    const RMatrix G = cross_gram(F, duals).cwiseAbs();
    return envelope_from(
        F.cols(), F.cols(), [&](Index i, Index j) { return g.difference(g.image[i], g.image[j]); },
        [&](Index i, Index j) { return G(i, j); });
}

DecayProfile column_decay_profile(const CMatrix &F, const CMatrix &E, const IndexGeometry &g,
                                  Real p, const std::vector<Index> &N_values)
{
    check_pair(F, E, g);
    check_p(p);
    const RMatrix G = cross_gram(F, E).cwiseAbs();
    DecayProfile prof{N_values, {}};
    for (Index N : N_values) {
        Real worst = 0;
        for (Index j = 0; j < E.cols(); ++j) {
            Real s = 0;
            for (Index i = 0; i < F.cols(); ++i)
                if (!in_box(g.offset(i, j), N))
                    s += power(G(i, j), p);
            worst = std::max(worst, s);
        }
        prof.eps.push_back(worst);
    }
    return prof;
}

DecayProfile row_decay_profile(const CMatrix &F, const CMatrix &E, const IndexGeometry &g, Real p,
                               const std::vector<Index> &N_values)
{
    check_pair(F, E, g);
    check_p(p);
    const RMatrix G = cross_gram(F, E).cwiseAbs();
    DecayProfile prof{N_values, {}};
    for (Index N : N_values) {
        Real worst = 0;
        for (Index i = 0; i < F.cols(); ++i) {
            Real s = 0;
            for (Index j = 0; j < E.cols(); ++j)
                if (!in_box(g.offset(i, j), N))
                    s += power(G(i, j), p);
            worst = std::max(worst, s);
        }
        prof.eps.push_back(worst);
    }
    return prof;
}

Real span_distance(const CMatrix &D, const CVector &v)
{
    if (D.cols() == 0)
        return v.norm();
    Eigen::ColPivHouseholderQR<CMatrix> qr(D.rows(), D.cols());
    qr.setThreshold(1e-12);
    qr.compute(D);
    const CVector coeffs = qr.householderQ().adjoint() * v;
    return coeffs.tail(D.rows() - qr.rank()).norm();
}

Real strong_hap_error(const CMatrix &F, const CMatrix &F_duals, const CMatrix &E,
                      const IndexGeometry &g, Index N)
{
    check_pair(F, E, g);
    if (F_duals.rows() != F.rows() || F_duals.cols() != F.cols())
        throw SizeMismatch("family and duals differ in shape");
    const CMatrix C = F.adjoint() * E; // C(i, j) = <e_j, f_i>
    Real worst = 0;
    CVector c(F.cols());
    for (Index j = 0; j < E.cols(); ++j) {
        for (Index i = 0; i < F.cols(); ++i)
            c(i) = in_box(g.offset(i, j), N) ? C(i, j) : Complex(0);
        worst = std::max(worst, (E.col(j) - F_duals * c).norm());
    }
    return worst;
}

Real weak_hap_error(const CMatrix &F_duals, const CMatrix &E, const IndexGeometry &g, Index N)
{
    check_pair(F_duals, E, g);
    Real worst = 0;
    for (Index j = 0; j < E.cols(); ++j) {
        std::vector<Index> keep;
        for (Index i = 0; i < F_duals.cols(); ++i)
            if (in_box(g.offset(i, j), N))
                keep.push_back(i);
        worst = std::max(worst, span_distance(F_duals(Eigen::all, keep), E.col(j)));
    }
    return worst;
}

Real strong_dual_hap_error(const CMatrix &F, const CMatrix &E, const CMatrix &E_duals,
                           const IndexGeometry &g, Index N)
{
    check_pair(F, E, g);
    if (E_duals.rows() != E.rows() || E_duals.cols() != E.cols())
        throw SizeMismatch("reference and duals differ in shape");
    const CMatrix C = E.adjoint() * F; // C(j, i) = <f_i, e_j>
    Real worst = 0;
    CVector c(E.cols());
    for (Index i = 0; i < F.cols(); ++i) {
        for (Index j = 0; j < E.cols(); ++j)
            c(j) = in_box(g.offset(i, j), N) ? C(j, i) : Complex(0);
        worst = std::max(worst, (F.col(i) - E_duals * c).norm());
    }
    return worst;
}

Real weak_dual_hap_error(const CMatrix &F, const CMatrix &E_duals, const IndexGeometry &g, Index N)
{
    check_pair(F, E_duals, g);
    Real worst = 0;
    for (Index i = 0; i < F.cols(); ++i) {
        std::vector<Index> keep;
        for (Index j = 0; j < E_duals.cols(); ++j)
            if (in_box(g.offset(i, j), N))
                keep.push_back(j);
        worst = std::max(worst, span_distance(E_duals(Eigen::all, keep), F.col(i)));
    }
    return worst;
}

bool decays(const std::vector<Real> &values, Real ratio, Real floor)
{
    if (values.empty())
        return true;
    return values.back() <= floor || values.back() <= ratio * values.front();
}

MoleculeEnvelope molecule_envelope(const CMatrix &F, const PointSet &points, const Signal &window,
                                   const RefLattice &cells)
{
    if (F.cols() != points.size())
        throw SizeMismatch("molecule envelope needs one point per element");
    const Index L = window.size();
    if (F.rows() != L || points.L() != L)
        throw SizeMismatch("molecule envelope: elements, points and window disagree on L");

    MoleculeEnvelope out;
    out.gamma = RMatrix::Zero(L, L);
    std::vector<RMatrix> mags;
    std::vector<GridPoint> shifts;
    mags.reserve(static_cast<std::size_t>(F.cols()));
    for (Index i = 0; i < F.cols(); ++i) {
        const TfPoint &p = points[i];
        const GridPoint q{quantize(p.x, L), quantize(p.omega, L)};
        out.rounding_offset = std::max(
            {out.rounding_offset, std::abs(centered_offset(p.x - static_cast<Real>(q.x), L)),
             std::abs(centered_offset(p.omega - static_cast<Real>(q.omega), L))});
        shifts.push_back(q);
        mags.push_back(stft(Signal(F.col(i)), window).magnitude());
        const RMatrix &M = mags.back();
        for (Index u = 0; u < L; ++u)
            for (Index v = 0; v < L; ++v) {
                Real &gv = out.gamma(u, v);
                gv = std::max(gv, M((u + q.x) % L, (v + q.omega) % L));
            }
    }
    for (std::size_t i = 0; i < mags.size(); ++i) {
        const GridPoint q = shifts[i];
        for (Index u = 0; u < L; ++u)
            for (Index v = 0; v < L; ++v)
                out.max_violation =
                    std::max(out.max_violation,
                             mags[i](u, v) - out.gamma((u - q.x + L) % L, (v - q.omega + L) % L));
    }
    for (Index u = 0; u < L; ++u)
        for (Index v = 0; v < L; ++v)
            out.grid_modulus = std::max({out.grid_modulus,
                                         std::abs(out.gamma((u + 1) % L, v) - out.gamma(u, v)),
                                         std::abs(out.gamma(u, (v + 1) % L) - out.gamma(u, v))});
    out.amalgam_l1 = amalgam_norm(out.gamma, 1, cells);
    out.amalgam_l2 = amalgam_norm(out.gamma, 2, cells);
    return out;
}

Real molecule_tail_fraction(const MoleculeEnvelope &env, Real radius, const RefLattice &cells)
{
    const Index L = env.gamma.rows();
    RMatrix outside = env.gamma;
    for (Index u = 0; u < L; ++u)
        for (Index v = 0; v < L; ++v) {
            const Real r = std::max(std::abs(centered_offset(static_cast<Real>(u), L)),
                                    std::abs(centered_offset(static_cast<Real>(v), L)));
            if (r <= radius)
                outside(u, v) = 0;
        }
    const Real total = amalgam_norm(env.gamma, 1, cells);
    return total > 0 ? amalgam_norm(outside, 1, cells) / total : 0;
}

void write_profile_csv(std::ostream &out, const DecayProfile &profile)
{
    out << "N,eps\n" << std::setprecision(17);
    for (std::size_t k = 0; k < profile.N_values.size(); ++k)
        out << profile.N_values[k] << ',' << profile.eps[k] << '\n';
}

void write_envelope_csv(std::ostream &out, const Envelope &env)
{
    out << "dx,domega,value\n" << std::setprecision(17);
    for (const auto &[k, v] : env.values)
        out << k[0] << ',' << k[1] << ',' << v << '\n';
}

} // namespace gaborlab
