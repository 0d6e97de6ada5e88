#include <gaborlab/pointset.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

using namespace gaborlab;

namespace {

PointSet random_points(Index L, Index n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<Real> u(0, static_cast<Real>(L));
    std::vector<TfPoint> pts;
    for (Index i = 0; i < n; ++i)
        pts.push_back({u(rng), u(rng)});
    return PointSet(TorusParams(L), pts);
}

// Counts points with x in [u, u + N) and omega in [v, v + N) modulo L, one point at a time.
Index naive_corner_count(const PointSet &ps, Index u, Index v, Index N)
{
    const Real L = static_cast<Real>(ps.L());
    Index c = 0;
    for (const auto &p : ps) {
        Real dx = std::fmod(p.x - static_cast<Real>(u) + 2 * L, L);
        Real dw = std::fmod(p.omega - static_cast<Real>(v) + 2 * L, L);
        if (dx < static_cast<Real>(N) && dw < static_cast<Real>(N))
            ++c;
    }
    return c;
}

} // namespace

TEST(Torus, ReduceModStaysInRange)
{
    for (Real v : {-300.5, -144.0, -1e-12, 0.0, 3.7, 143.999, 144.0, 1000.25}) {
        const Real r = reduce_mod(v, 144);
        EXPECT_GE(r, 0);
        EXPECT_LT(r, 144);
        EXPECT_NEAR(std::remainder(r - v, 144.0), 0, 1e-9);
    }
}

TEST(Torus, CenteredOffsetIsHalfOpen)
{
    EXPECT_DOUBLE_EQ(centered_offset(8, 16), -8);
    EXPECT_DOUBLE_EQ(centered_offset(-8, 16), -8);
    EXPECT_DOUBLE_EQ(centered_offset(7.5, 16), 7.5);
    EXPECT_DOUBLE_EQ(centered_offset(17, 16), 1);
    EXPECT_TRUE(in_half_open_box(-2, 4));
    EXPECT_FALSE(in_half_open_box(2, 4));
}

TEST(PointSetBasics, CoordinatesAreReducedAndRepeatsKept)
{
    PointSet ps(TorusParams(10), {{-1, 12}, {9, 2}, {9, 2}});
    EXPECT_EQ(ps.size(), 3);
    EXPECT_DOUBLE_EQ(ps[0].x, 9);
    EXPECT_DOUBLE_EQ(ps[0].omega, 2);
    EXPECT_EQ(ps[1], ps[2]);
    const PointSet u = ps.merged(ps);
    EXPECT_EQ(u.size(), 6);
    const PointSet t = ps.translated(2, -3);
    EXPECT_DOUBLE_EQ(t[0].x, 1);
    EXPECT_DOUBLE_EQ(t[0].omega, 9);
    EXPECT_THROW(ps.subset({5}), InvalidArgument);
    EXPECT_THROW(ps.merged(PointSet(TorusParams(12))), SizeMismatch);
}

TEST(Lattice, ParseAndValidate)
{
    const RefLattice lat = parse_lattice("4x6");
    EXPECT_EQ(lat.a_step, 4);
    EXPECT_EQ(lat.b_step, 6);
    EXPECT_NO_THROW(lat.validate(TorusParams(144)));
    EXPECT_THROW(parse_lattice("4x5").validate(TorusParams(144)), InvalidLattice);
    EXPECT_THROW(parse_lattice("4by5"), InvalidArgument);
    EXPECT_THROW(parse_lattice("4x"), InvalidArgument);
    EXPECT_THROW(parse_lattice("0x4"), InvalidLattice);
    try {
        parse_lattice("4x5").validate(TorusParams(144));
    } catch (const InvalidLattice &e) {
        EXPECT_NE(std::string(e.what()).find("divide"), std::string::npos);
    }
}

TEST(Lattice, PointsAreTimeMajor)
{
    const PointSet ps = lattice_points(parse_lattice("4x6"), TorusParams(24));
    ASSERT_EQ(ps.size(), 6 * 4);
    EXPECT_EQ(ps[0], (TfPoint{0, 0}));
    EXPECT_EQ(ps[1], (TfPoint{0, 6}));
    EXPECT_EQ(ps[4], (TfPoint{4, 0}));
}

TEST(Jitter, DeterministicAndBounded)
{
    const PointSet base = lattice_points(parse_lattice("4x4"), TorusParams(32));
    const PointSet a = jitter(base, 0.5, 7);
    const PointSet b = jitter(base, 0.5, 7);
    const PointSet c = jitter(base, 0.5, 8);
    EXPECT_EQ(a.points(), b.points());
    EXPECT_NE(a.points(), c.points());
    for (Index i = 0; i < base.size(); ++i) {
        EXPECT_LE(std::abs(centered_offset(a[i].x - base[i].x, 32)), 0.5);
        EXPECT_LE(std::abs(centered_offset(a[i].omega - base[i].omega, 32)), 0.5);
    }
    EXPECT_EQ(jitter(base, 0, 1).points(), base.points());
    EXPECT_THROW(jitter(base, -1, 1), InvalidArgument);
}

TEST(RoundMap, FloorsOntoLattice)
{
    PointSet ps(TorusParams(24), {{5.9, 11.99}, {0, 0}, {23.5, 17}});
    const auto g = round_map(ps, parse_lattice("4x6"));
    EXPECT_EQ(g[0], (GridPoint{4, 6}));
    EXPECT_EQ(g[1], (GridPoint{0, 0}));
    EXPECT_EQ(g[2], (GridPoint{20, 12}));
}

TEST(BoxCounts, SlidingGridMatchesBruteForce)
{
    const PointSet ps = random_points(20, 57, 3);
    for (Index N : {1, 3, 4, 7, 20}) {
        const auto grid = box_count_grid(ps, N);
        Index lo = 1 << 30, hi = 0;
        for (Index u = 0; u < 20; ++u)
            for (Index v = 0; v < 20; ++v) {
                const Index c = naive_corner_count(ps, u, v, N);
                ASSERT_EQ(grid(u, v), c) << "N=" << N << " u=" << u << " v=" << v;
                lo = std::min(lo, c);
                hi = std::max(hi, c);
            }
        const DensityBounds d = density_bounds(ps, N);
        const Real scale = 20.0 / static_cast<Real>(N * N);
        EXPECT_DOUBLE_EQ(d.lower, scale * static_cast<Real>(lo));
        EXPECT_DOUBLE_EQ(d.upper, scale * static_cast<Real>(hi));
    }
}

TEST(BoxCounts, CenteredStatsMatchBruteForce)
{
    const PointSet ps = random_points(16, 40, 11);
    const auto centers = grid_centers(TorusParams(16));
    for (Index N : {2, 4, 8, 16}) {
        const BoxStats st = box_stats(ps, N, centers);
        for (std::size_t k = 0; k < centers.size(); ++k) {
            const Index u = static_cast<Index>(centers[k].x) - N / 2;
            const Index v = static_cast<Index>(centers[k].omega) - N / 2;
            ASSERT_EQ(st.counts[k], naive_corner_count(ps, (u + 16) % 16, (v + 16) % 16, N));
            EXPECT_DOUBLE_EQ(st.normalized[k], 16.0 / static_cast<Real>(N * N) * static_cast<Real>(st.counts[k]));
        }
    }
}

TEST(BoxCounts, ErrorsOnBadSides)
{
    const PointSet ps = random_points(16, 4, 1);
    EXPECT_THROW(density_bounds(ps, 17), BoxTooLarge);
    EXPECT_THROW(density_bounds(ps, 0), InvalidArgument);
}

// Invariants: D- <= D+, and at N = L every box is the whole torus so D- = D+ = |Lambda| / L.
TEST(BoxCounts, DensityInvariants)
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const PointSet ps = jitter(lattice_points(parse_lattice("4x6"), TorusParams(48)), 1.0, seed);
        for (Index N : {4, 12, 24, 48}) {
            const DensityBounds d = density_bounds(ps, N);
            EXPECT_LE(d.lower, d.upper);
        }
        const DensityBounds full = density_bounds(ps, 48);
        EXPECT_DOUBLE_EQ(full.lower, static_cast<Real>(ps.size()) / 48);
        EXPECT_DOUBLE_EQ(full.upper, full.lower);
    }
}

TEST(BoxCounts, LatticeHasExactDensityOnCommensurateBoxes)
{
    const PointSet ps = lattice_points(parse_lattice("4x6"), TorusParams(144));
    const DensityBounds d = density_bounds(ps, 72);
    EXPECT_DOUBLE_EQ(d.lower, 6);
    EXPECT_DOUBLE_EQ(d.upper, 6);
}

TEST(Serialization, CsvAndJsonRoundTrip)
{
    const PointSet ps = random_points(24, 9, 5);
    std::stringstream ss;
    write_csv(ss, ps);
    EXPECT_EQ(ss.str().substr(0, 8), "x,omega\n");
    const PointSet back = read_csv(ss, TorusParams(24));
    EXPECT_EQ(back.points(), ps.points());
    const PointSet j = pointset_from_json(to_json(ps));
    EXPECT_EQ(j.points(), ps.points());
    EXPECT_EQ(j.L(), 24);
}
