#include <gaborlab/gabor.hpp>
#include <gaborlab/measure.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace gaborlab;

namespace {

GaborSystem make_system(Index L, const std::string &lat, Real delta, std::uint64_t seed)
{
    const TorusParams t(L);
    return GaborSystem(gaussian_window(t), jitter(lattice_points(parse_lattice(lat), t), delta, seed));
}

bool naive_centered(Real p, Real c, Index N, Index L)
{
    Real d = std::fmod(p - c + 2.5 * static_cast<Real>(L), static_cast<Real>(L)) - static_cast<Real>(L) / 2;
    return -static_cast<Real>(N) / 2 <= d && d < static_cast<Real>(N) / 2;
}

} // namespace

TEST(Profile, AveragesMatchBruteForce)
{
    const PointSet ps(TorusParams(12), {{0, 0}, {1, 1}, {5, 5}, {6, 7}, {11, 11}, {3, 9}});
    CVector diag(6);
    diag << 0.1, 0.2, 0.3, 0.4, 0.5, 0.6;
    const auto centers = grid_centers(TorusParams(12));
    const MeasureProfile mp = measure_profile(ps, diag, {4, 6}, centers);
    ASSERT_EQ(mp.levels.size(), 2u);
    for (const auto &lev : mp.levels) {
        Real lo = 1e9, hi = -1e9;
        std::size_t nonempty = 0;
        for (const auto &c : centers) {
            Real s = 0;
            Index n = 0;
            for (Index i = 0; i < 6; ++i)
                if (naive_centered(ps[i].x, c.x, lev.N, 12) && naive_centered(ps[i].omega, c.omega, lev.N, 12)) {
                    s += diag(i).real();
                    ++n;
                }
            if (n == 0)
                continue;
            ++nonempty;
            lo = std::min(lo, s / static_cast<Real>(n));
            hi = std::max(hi, s / static_cast<Real>(n));
        }
        EXPECT_NEAR(lev.M_minus, lo, 1e-15);
        EXPECT_NEAR(lev.M_plus, hi, 1e-15);
        EXPECT_EQ(lev.centers.size(), nonempty);
        EXPECT_EQ(lev.centers.size() + lev.skipped.size(), centers.size());
    }
    EXPECT_THROW(measure_profile(ps, diag, {13}, centers), BoxTooLarge);
    EXPECT_THROW(measure_profile(ps, diag, {1}, {{8.5, 2.5}}), InvalidArgument);
}

TEST(Profile, LatticeMeasureIsConstant)
{
    const GaborSystem sys = make_system(48, "4x6", 0, 1);
    const FrameData fd = canonical_dual(sys);
    const auto centers = lattice_centers(parse_lattice("4x6"), TorusParams(48));
    const MeasureProfile mp = measure_profile(sys, fd, {6, 12, 24, 48}, centers);
    for (const auto &lev : mp.levels) {
        EXPECT_NEAR(lev.M_minus, 24.0 / 48, 1e-10);
        EXPECT_NEAR(lev.M_plus, 24.0 / 48, 1e-10);
    }
    EXPECT_FALSE(mp.solver_warning());
    const DensityMeasureCheck dm = measure_density_bounds_check(mp, fd);
    ASSERT_EQ(dm.tau.size(), 4u);
    EXPECT_LT(dm.tau.back(), 1e-9);
    EXPECT_NEAR(dm.density_spread, 0, 1e-12);
}

// Invariants: 0 <= M- <= M+ <= 1, and at N = L the reciprocity residuals vanish.
TEST(Reciprocity, ExactOnWholeTorusForJitteredFrames)
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const GaborSystem sys = make_system(48, "4x4", 1.0, seed);
        const FrameData fd = canonical_dual(sys);
        const auto centers = lattice_centers(parse_lattice("4x4"), TorusParams(48));
        const MeasureProfile mp = measure_profile(sys, fd, {8, 16, 48}, centers);
        for (const auto &lev : mp.levels) {
            EXPECT_GE(lev.M_minus, -1e-12);
            EXPECT_LE(lev.M_minus, lev.M_plus);
            EXPECT_LE(lev.M_plus, 1 + 1e-9);
        }
        const Reciprocity r = reciprocity_check(sys, fd, 48, centers);
        EXPECT_LT(r.r1, 1e-9);
        EXPECT_LT(r.r2, 1e-9);
        // The average of the diagonal over everything is L / |Lambda|.
        EXPECT_NEAR(mp.levels.back().M_minus, 48.0 / static_cast<Real>(sys.size()), 1e-9);
    }
}

TEST(Reciprocity, RequiresFrame)
{
    const GaborSystem sys = make_system(32, "8x8", 0, 1);
    FrameData fd;
    fd.duals = sys.elements();
    fd.A = 0;
    fd.B = 1;
    EXPECT_THROW(reciprocity_check(sys, fd, 32, grid_centers(TorusParams(32))), NotAFrame);
}

TEST(IndexDensityTest, CountsImagesInBoxes)
{
    const IndexGeometry g = line_geometry(6, 0, {0, 0, 1, 3, 4, 5});
    std::vector<Offset> centers;
    for (Index c = 0; c < 6; ++c)
        centers.push_back({c, 0});
    const IndexDensity d = index_density(g, 2, centers);
    // Boxes [c-1, c+1): counts 2,3,1,1,2,2 over c = 0..5.
    EXPECT_DOUBLE_EQ(d.minus, 0.5);
    EXPECT_DOUBLE_EQ(d.plus, 1.5);
    EXPECT_THROW(index_density(g, 0, centers), InvalidArgument);
}

TEST(RelativeMeasureTest, ProjectionHalvesTheMeasure)
{
    const Index M = 8;
    const CMatrix F = CMatrix::Identity(2 * M, 2 * M);
    IndexGeometry g;
    g.period = {M, 0};
    for (Index n = 0; n < M; ++n)
        g.reference.push_back({n, 0});
    for (Index k = 0; k < 2 * M; ++k)
        g.image.push_back({k / 2, 0});
    CMatrix P = CMatrix::Zero(2 * M, 2 * M);
    for (Index k = 0; k < 2 * M; k += 2)
        P(k, k) = 1;
    const RelativeMeasure full = relative_measure(F, F, CMatrix::Identity(2 * M, 2 * M), g, 2, g.reference);
    const RelativeMeasure half = relative_measure(F, F, P, g, 2, g.reference);
    EXPECT_DOUBLE_EQ(full.minus, 1);
    EXPECT_DOUBLE_EQ(full.plus, 1);
    EXPECT_DOUBLE_EQ(half.minus, 0.5);
    EXPECT_DOUBLE_EQ(half.plus, 0.5);
    EXPECT_THROW(relative_measure(F, F, P.topRows(3), g, 2, g.reference), SizeMismatch);
}

TEST(Output, MeasureCsvHeader)
{
    const PointSet ps(TorusParams(8), {{0, 0}});
    CVector diag(1);
    diag << 0.25;
    std::ostringstream os;
    write_measure_csv(os, measure_profile(ps, diag, {8}, {{0, 0}}));
    EXPECT_EQ(os.str(), "N,center_x,center_w,avg\n8,0,0,0.25\n");
}
