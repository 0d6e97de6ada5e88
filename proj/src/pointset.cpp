#include <gaborlab/pointset.hpp>

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace gaborlab {

TorusParams::TorusParams(Index L) : L_(L)
{
    if (L < 8)
        throw InvalidArgument("torus side L must be at least 8, got " + std::to_string(L));
}

Real reduce_mod(Real v, Index L)
{
    const Real Lr = static_cast<Real>(L);
    Real r = v - Lr * std::floor(v / Lr);
    if (r >= Lr)
        r -= Lr;
    return r;
}

Real centered_offset(Real d, Index L)
{
    const Real Lr = static_cast<Real>(L);
    Real r = d - Lr * std::floor((d + Lr / 2) / Lr);
    if (r >= Lr / 2)
        r -= Lr;
    return r;
}

PointSet::PointSet(TorusParams torus, std::vector<TfPoint> points)
    : torus_(torus), points_(std::move(points))
{
    for (auto &p : points_) {
        p.x = reduce_mod(p.x, torus_.L());
        p.omega = reduce_mod(p.omega, torus_.L());
    }
}

PointSet PointSet::merged(const PointSet &other) const
{
    if (!(other.torus_ == torus_))
        throw SizeMismatch("cannot merge point sets on different tori");
    std::vector<TfPoint> pts = points_;
    pts.insert(pts.end(), other.points_.begin(), other.points_.end());
    return PointSet(torus_, std::move(pts));
}

PointSet PointSet::translated(Real dx, Real domega) const
{
    std::vector<TfPoint> pts = points_;
    for (auto &p : pts) {
        p.x += dx;
        p.omega += domega;
    }
    return PointSet(torus_, std::move(pts));
}

PointSet PointSet::subset(const std::vector<Index> &indices) const
{
    std::vector<TfPoint> pts;
    pts.reserve(indices.size());
    for (Index i : indices) {
        if (i < 0 || i >= size())
            throw InvalidArgument("subset index out of range");
        pts.push_back(points_[static_cast<std::size_t>(i)]);
    }
    return PointSet(torus_, std::move(pts));
}

void RefLattice::validate(const TorusParams &torus) const
{
    if (a_step <= 0 || b_step <= 0)
        throw InvalidLattice("lattice steps must be positive");
    if (torus.L() % a_step != 0 || torus.L() % b_step != 0) {
        throw InvalidLattice("lattice " + std::to_string(a_step) + "x" + std::to_string(b_step) +
                             " is invalid for L=" + std::to_string(torus.L()) +
                             ": both steps must divide L");
    }
}

RefLattice parse_lattice(const std::string &text)
{
    const auto pos = text.find_first_of("xX");
    if (pos == std::string::npos)
        throw InvalidArgument("lattice must be written AxB, got '" + text + "'");
    RefLattice lat;
    const char *b = text.data();
    const char *e = text.data() + text.size();
    auto r1 = std::from_chars(b, b + pos, lat.a_step);
    auto r2 = std::from_chars(b + pos + 1, e, lat.b_step);
    if (r1.ec != std::errc{} || r1.ptr != b + pos || r2.ec != std::errc{} || r2.ptr != e)
        throw InvalidArgument("lattice must be written AxB, got '" + text + "'");
    if (lat.a_step <= 0 || lat.b_step <= 0)
        throw InvalidLattice("lattice steps must be positive");
    return lat;
}

PointSet lattice_points(const RefLattice &lat, const TorusParams &torus)
{
    lat.validate(torus);
    std::vector<TfPoint> pts;
    pts.reserve(static_cast<std::size_t>(lat.size(torus)));
    for (Index j = 0; j < lat.time_count(torus); ++j)
        for (Index k = 0; k < lat.freq_count(torus); ++k)
            pts.push_back({static_cast<Real>(j * lat.a_step), static_cast<Real>(k * lat.b_step)});
    return PointSet(torus, std::move(pts));
}

PointSet jitter(const PointSet &ps, Real delta, std::uint64_t seed)
{
    if (delta < 0)
        throw InvalidArgument("jitter amplitude must be nonnegative");
    if (delta == 0)
        return ps;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<Real> u(-delta, delta);
    std::vector<TfPoint> pts = ps.points();
    for (auto &p : pts) {
        p.x += u(rng);
        p.omega += u(rng);
    }
    return PointSet(ps.torus(), std::move(pts));
}

std::vector<GridPoint> round_map(const PointSet &ps, const RefLattice &lat)
{
    lat.validate(ps.torus());
    std::vector<GridPoint> out;
    out.reserve(static_cast<std::size_t>(ps.size()));
    const Index L = ps.L();
    for (const auto &p : ps) {
        const auto jx = static_cast<Index>(std::floor(p.x / static_cast<Real>(lat.a_step)));
        const auto jw = static_cast<Index>(std::floor(p.omega / static_cast<Real>(lat.b_step)));
        out.push_back({(jx * lat.a_step) % L, (jw * lat.b_step) % L});
    }
    return out;
}

namespace {

void check_box(const PointSet &ps, Index N)
{
    if (N <= 0)
        throw InvalidArgument("box side must be positive");
    if (N > ps.L())
        throw BoxTooLarge("box side " + std::to_string(N) + " exceeds torus side " +
                          std::to_string(ps.L()));
}

} // namespace

BoxStats box_stats(const PointSet &ps, Index N, const std::vector<TfPoint> &centers)
{
    check_box(ps, N);
    BoxStats st;
    st.N = N;
    st.centers = centers;
    st.counts.reserve(centers.size());
    st.normalized.reserve(centers.size());
    const Real Nr = static_cast<Real>(N);
    const Real scale = static_cast<Real>(ps.L()) / (Nr * Nr);
    for (const auto &c : centers) {
        Index count = 0;
        for (const auto &p : ps) {
            if (in_half_open_box(centered_offset(p.x - c.x, ps.L()), Nr) &&
                in_half_open_box(centered_offset(p.omega - c.omega, ps.L()), Nr))
                ++count;
        }
        st.counts.push_back(count);
        st.normalized.push_back(scale * static_cast<Real>(count));
    }
    return st;
}

Eigen::Matrix<Index, Eigen::Dynamic, Eigen::Dynamic> box_count_grid(const PointSet &ps, Index N)
{
    check_box(ps, N);
    const Index L = ps.L();
    using IMatrix = Eigen::Matrix<Index, Eigen::Dynamic, Eigen::Dynamic>;
    IMatrix bins = IMatrix::Zero(L, L);
    for (const auto &p : ps) {
        const auto u = static_cast<Index>(std::floor(p.x)) % L;
        const auto v = static_cast<Index>(std::floor(p.omega)) % L;
        bins(u, v) += 1;
    }
    // Cyclic sliding windows of length N along each axis.
    IMatrix rows = IMatrix::Zero(L, L);
    for (Index u = 0; u < L; ++u) {
        Index s = 0;
        for (Index k = 0; k < N; ++k)
            s += bins(u, k % L);
        for (Index v = 0; v < L; ++v) {
            rows(u, v) = s;
            s += bins(u, (v + N) % L) - bins(u, v);
        }
    }
    IMatrix out = IMatrix::Zero(L, L);
    for (Index v = 0; v < L; ++v) {
        Index s = 0;
        for (Index k = 0; k < N; ++k)
            s += rows(k % L, v);
        for (Index u = 0; u < L; ++u) {
            out(u, v) = s;
            s += rows((u + N) % L, v) - rows(u, v);
        }
    }
    return out;
}

DensityBounds density_bounds(const PointSet &ps, Index N)
{
    const auto grid = box_count_grid(ps, N);
    const Real Nr = static_cast<Real>(N);
    const Real scale = static_cast<Real>(ps.L()) / (Nr * Nr);
    return {scale * static_cast<Real>(grid.minCoeff()), scale * static_cast<Real>(grid.maxCoeff())};
}

std::vector<TfPoint> grid_centers(const TorusParams &torus)
{
    std::vector<TfPoint> c;
    c.reserve(static_cast<std::size_t>(torus.L() * torus.L()));
    for (Index u = 0; u < torus.L(); ++u)
        for (Index v = 0; v < torus.L(); ++v)
            c.push_back({static_cast<Real>(u), static_cast<Real>(v)});
    return c;
}

std::vector<TfPoint> lattice_centers(const RefLattice &lat, const TorusParams &torus)
{
    return lattice_points(lat, torus).points();
}

void write_csv(std::ostream &out, const PointSet &ps)
{
    out << "x,omega\n";
    out << std::setprecision(17);
    for (const auto &p : ps)
        out << p.x << ',' << p.omega << '\n';
}

PointSet read_csv(std::istream &in, const TorusParams &torus)
{
    std::string line;
    if (!std::getline(in, line) || line.rfind("x,omega", 0) != 0)
        throw IoError("point set CSV must start with header 'x,omega'");
    std::vector<TfPoint> pts;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream row(line);
        TfPoint p;
        char comma = 0;
        if (!(row >> p.x >> comma >> p.omega) || comma != ',')
            throw IoError("malformed point set row: '" + line + "'");
        pts.push_back(p);
    }
    return PointSet(torus, std::move(pts));
}

std::string to_json(const PointSet &ps)
{
    nlohmann::json j;
    j["L"] = ps.L();
    auto &arr = j["points"] = nlohmann::json::array();
    for (const auto &p : ps)
        arr.push_back({p.x, p.omega});
    return j.dump();
}

PointSet pointset_from_json(const std::string &text)
{
    try {
        const auto j = nlohmann::json::parse(text);
        TorusParams torus(j.at("L").get<Index>());
        std::vector<TfPoint> pts;
        for (const auto &row : j.at("points"))
            pts.push_back({row.at(0).get<Real>(), row.at(1).get<Real>()});
        return PointSet(torus, std::move(pts));
    } catch (const nlohmann::json::exception &e) {
        throw IoError(std::string("malformed point set JSON: ") + e.what());
    }
}

} // namespace gaborlab
