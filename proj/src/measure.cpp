#include <gaborlab/measure.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

namespace gaborlab {

namespace {

bool point_in_box(const TfPoint &p, const TfPoint &c, Index N, Index L)
{
    const Real Nr = static_cast<Real>(N);
    return in_half_open_box(centered_offset(p.x - c.x, L), Nr) &&
           in_half_open_box(centered_offset(p.omega - c.omega, L), Nr);
}

} // namespace

MeasureProfile measure_profile(const PointSet &points, const CVector &diagonal,
                               const std::vector<Index> &N_values,
                               const std::vector<TfPoint> &centers)
{
    if (diagonal.size() != points.size())
        throw SizeMismatch("one diagonal product per point is required");
    const Index L = points.L();
    MeasureProfile prof;
    for (Index i = 0; i < diagonal.size(); ++i)
        prof.max_imag_residue = std::max(prof.max_imag_residue, std::abs(diagonal(i).imag()));

    for (Index N : N_values) {
        if (N <= 0)
            throw InvalidArgument("box side must be positive");
        if (N > L)
            throw BoxTooLarge("box side " + std::to_string(N) + " exceeds torus side " +
                              std::to_string(L));
        const Real scale = static_cast<Real>(L) / static_cast<Real>(N * N);
        MeasureLevel lev;
        lev.N = N;
        lev.M_minus = std::numeric_limits<Real>::infinity();
        lev.M_plus = -lev.M_minus;
        lev.D_minus = lev.M_minus;
        lev.D_plus = -lev.M_minus;
        for (const auto &c : centers) {
            Index count = 0;
            Real sum = 0;
            for (Index i = 0; i < points.size(); ++i) {
                if (point_in_box(points[i], c, N, L)) {
                    ++count;
                    sum += diagonal(i).real();
                }
            }
            const Real density = scale * static_cast<Real>(count);
            lev.D_minus = std::min(lev.D_minus, density);
            lev.D_plus = std::max(lev.D_plus, density);
            if (count == 0) {
                lev.skipped.push_back(c);
                continue;
            }
            const Real avg = sum / static_cast<Real>(count);
            lev.M_minus = std::min(lev.M_minus, avg);
            lev.M_plus = std::max(lev.M_plus, avg);
            lev.centers.push_back({c, count, avg, density});
        }
        if (lev.centers.empty())
            throw InvalidArgument("no nonempty box of side " + std::to_string(N));
        prof.levels.push_back(std::move(lev));
    }
    return prof;
}

MeasureProfile measure_profile(const GaborSystem &sys, const FrameData &fd,
                               const std::vector<Index> &N_values,
                               const std::vector<TfPoint> &centers)
{
    return measure_profile(sys.points(), fd.diagonal_products(sys.elements()), N_values, centers);
}

Reciprocity reciprocity_check(const GaborSystem &sys, const FrameData &fd, Index N,
                              const std::vector<TfPoint> &centers)
{
    const FrameBounds b{fd.A, fd.B};
    if (!b.is_frame())
        throw NotAFrame("reciprocity needs a frame", fd.A, fd.B);
    const CVector diag = fd.diagonal_products(sys.elements());
    const Index L = sys.L();
    if (N <= 0 || N > L)
        throw BoxTooLarge("box side must lie in [1, L]");
    const Real scale = static_cast<Real>(L) / static_cast<Real>(N * N);
    Reciprocity r;
    r.N = N;
    for (const auto &c : centers) {
        Index count = 0;
        Real sum = 0;
        for (Index i = 0; i < sys.size(); ++i) {
            if (point_in_box(sys.points()[i], c, N, L)) {
                ++count;
                sum += diag(i).real();
            }
        }
        r.r2 = std::max(r.r2, std::abs(scale * sum - 1));
        if (count > 0) {
            const Real avg = sum / static_cast<Real>(count);
            r.r1 = std::max(r.r1, std::abs(avg * scale * static_cast<Real>(count) - 1));
        }
    }
    return r;
}

DensityMeasureCheck measure_density_bounds_check(const MeasureProfile &profile, const FrameData &fd)
{
    DensityMeasureCheck out;
    for (const auto &lev : profile.levels) {
        out.N_values.push_back(lev.N);
        const Real lo = lev.M_minus * lev.D_plus;
        const Real hi = lev.M_plus * lev.D_minus;
        out.lower_product.push_back(lo);
        out.upper_product.push_back(hi);
        out.tau.push_back(std::max(std::abs(lo - 1), std::abs(hi - 1)));
    }
    out.tight = fd.B > 0 && std::abs(fd.A - fd.B) / fd.B < 1e-8;
    if (!profile.levels.empty())
        out.density_spread = profile.levels.back().D_plus - profile.levels.back().D_minus;
    return out;
}

IndexDensity index_density(const IndexGeometry &g, Index N, const std::vector<Offset> &centers,
                           int axes)
{
    if (N <= 0)
        throw InvalidArgument("box side must be positive");
    const Real volume = std::pow(static_cast<Real>(N), axes);
    IndexDensity d{std::numeric_limits<Real>::infinity(), 0};
    for (const auto &c : centers) {
        Index count = 0;
        for (const auto &p : g.image)
            if (in_box(g.difference(p, c), N))
                ++count;
        const Real v = static_cast<Real>(count) / volume;
        d.minus = std::min(d.minus, v);
        d.plus = std::max(d.plus, v);
    }
    if (centers.empty())
        d.minus = 0;
    return d;
}

RelativeMeasure relative_measure(const CMatrix &F, const CMatrix &duals, const CMatrix &P,
                                 const IndexGeometry &g, Index N, const std::vector<Offset> &centers)
{
    if (F.cols() != duals.cols() || F.rows() != duals.rows() || P.rows() != F.rows() ||
        P.cols() != F.rows())
        throw SizeMismatch("relative measure: shapes disagree");
    if (static_cast<Index>(g.image.size()) != F.cols())
        throw SizeMismatch("index map size differs from family size");
    RVector diag(F.cols());
    for (Index i = 0; i < F.cols(); ++i)
        diag(i) = duals.col(i).dot(P * F.col(i)).real();
    RelativeMeasure m{std::numeric_limits<Real>::infinity(), -std::numeric_limits<Real>::infinity()};
    bool any = false;
    for (const auto &c : centers) {
        Index count = 0;
        Real sum = 0;
        for (Index i = 0; i < F.cols(); ++i) {
            if (in_box(g.difference(g.image[static_cast<std::size_t>(i)], c), N)) {
                ++count;
                sum += diag(i);
            }
        }
        if (count == 0)
            continue;
        any = true;
        m.minus = std::min(m.minus, sum / static_cast<Real>(count));
        m.plus = std::max(m.plus, sum / static_cast<Real>(count));
    }
    if (!any)
        throw InvalidArgument("no nonempty box of side " + std::to_string(N));
    return m;
}

void write_measure_csv(std::ostream &out, const MeasureProfile &profile)
{
    out << "N,center_x,center_w,avg\n" << std::setprecision(17);
    for (const auto &lev : profile.levels)
        for (const auto &c : lev.centers)
            out << lev.N << ',' << c.center.x << ',' << c.center.omega << ',' << c.avg << '\n';
}

} // namespace gaborlab
