#include <gaborlab/gabor.hpp>
#include <gaborlab/localization.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace gaborlab;

namespace {

struct Fixture {
    GaborSystem sys;
    Pairing pair;
};

Fixture jittered(Index L, const std::string &lat, const std::string &ref, Real delta, std::uint64_t seed)
{
    const TorusParams t(L);
    GaborSystem sys(gaussian_window(t), jitter(lattice_points(parse_lattice(lat), t), delta, seed));
    Pairing pair = gabor_pairing(sys, gaussian_window(t), parse_lattice(ref));
    return {std::move(sys), std::move(pair)};
}

Real naive_abs_inner(const CMatrix &F, Index i, const CMatrix &E, Index j)
{
    Complex s = 0;
    for (Index n = 0; n < F.rows(); ++n)
        s += F(n, i) * std::conj(E(n, j));
    return std::abs(s);
}

bool naive_in_box(Index d0, Index d1, Index N)
{
    auto inside = [N](Index d) { return -N <= 2 * d && 2 * d < N; };
    return inside(d0) && inside(d1);
}

Index naive_reduce(Index d, Index P)
{
    if (P == 0)
        return d;
    while (d < -P / 2 || (P % 2 == 0 && d >= P / 2) || (P % 2 == 1 && d > P / 2))
        d += d < 0 ? P : -P;
    return d;
}

} // namespace

TEST(Geometry, BoxIsHalfOpen)
{
    EXPECT_TRUE(in_box({-2, 1}, 4));
    EXPECT_FALSE(in_box({2, 0}, 4));
    EXPECT_TRUE(in_box({0, 0}, 1));
    EXPECT_FALSE(in_box({-1, 0}, 1));
    for (Index a = -6; a <= 6; ++a)
        for (Index N = 1; N <= 7; ++N)
            EXPECT_EQ(in_box({a, 0}, N), naive_in_box(a, 0, N));
}

TEST(Geometry, PeriodicOffsetsAreCentered)
{
    IndexGeometry g;
    g.period = {10, 0};
    g.reference = {{0, 0}, {9, 0}};
    g.image = {{5, 3}, {1, -4}};
    for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < 2; ++j) {
            const Offset o = g.offset(i, j);
            EXPECT_EQ(o[0], naive_reduce(g.image[i][0] - g.reference[j][0], 10));
            EXPECT_EQ(o[1], g.image[i][1] - g.reference[j][1]);
            EXPECT_GE(o[0], -5);
            EXPECT_LT(o[0], 5);
        }
}

TEST(Geometry, LineGeometryAndMultiplicity)
{
    const IndexGeometry g = line_geometry(5, -2, {0, 0, 1, -2, 0});
    EXPECT_EQ(g.reference.front()[0], -2);
    EXPECT_EQ(g.offset(0, 0)[0], 2);
    EXPECT_EQ(g.max_multiplicity(), 3);
}

TEST(Geometry, GaborGeometryUsesRoundingMap)
{
    const Fixture fx = jittered(24, "4x6", "4x6", 1.0, 2);
    const auto img = round_map(fx.sys.points(), parse_lattice("4x6"));
    ASSERT_EQ(fx.pair.geometry.image.size(), img.size());
    for (std::size_t i = 0; i < img.size(); ++i) {
        EXPECT_EQ(fx.pair.geometry.image[i][0], img[i].x);
        EXPECT_EQ(fx.pair.geometry.image[i][1], img[i].omega);
    }
    EXPECT_EQ(fx.pair.E.cols(), 24);
}

TEST(Envelope, DominatesAndEqualsNaiveMaximum)
{
    const Fixture fx = jittered(24, "3x4", "4x6", 1.0, 3);
    const auto &[F, E, g] = fx.pair;
    const Envelope env = localization_envelope(F, E, g);
    EXPECT_LE(envelope_violation(env, F, E, g), 0);
    std::map<Offset, Real> naive;
    for (Index i = 0; i < F.cols(); ++i)
        for (Index j = 0; j < E.cols(); ++j) {
            Real &v = naive[g.offset(i, j)];
            v = std::max(v, naive_abs_inner(F, i, E, j));
        }
    ASSERT_EQ(naive.size(), env.values.size());
    for (const auto &[k, v] : naive)
        EXPECT_NEAR(env.at(k), v, 1e-13);
    Real l2 = 0;
    for (const auto &[k, v] : naive)
        l2 += v * v;
    EXPECT_NEAR(env.p_norm(2), std::sqrt(l2), 1e-12);
    EXPECT_GE(env.p_norm(1), env.p_norm(2));
    EXPECT_GE(env.p_norm(2), env.p_norm(kInfinity));
    EXPECT_NEAR(env.tail(2, 0), l2, 1e-12);
}

TEST(Envelope, SelfAndDualEnvelopes)
{
    const Fixture fx = jittered(24, "3x4", "3x4", 0, 1);
    const auto &[F, E, g] = fx.pair;
    const Envelope self = self_localization_envelope(F, g);
    EXPECT_NEAR(self.at({0, 0}), 1, 1e-12);
    const FrameData fd = canonical_dual(F);
    const Envelope dual = dual_localization_envelope(F, fd.duals, g);
    // Lattice: <g, dual g> = ab / L on the diagonal.
    EXPECT_GE(dual.at({0, 0}), 12.0 / 24 - 1e-10);
}

TEST(Profiles, MatchNaiveSumsAndAreMonotone)
{
    const Fixture fx = jittered(24, "3x4", "4x6", 1.0, 4);
    const auto &[F, E, g] = fx.pair;
    const std::vector<Index> Ns{1, 2, 4, 8, 12, 24};
    for (Real p : {1.0, 2.0}) {
        const DecayProfile col = column_decay_profile(F, E, g, p, Ns);
        const DecayProfile row = row_decay_profile(F, E, g, p, Ns);
        for (std::size_t k = 0; k < Ns.size(); ++k) {
            Real cworst = 0, rworst = 0;
            for (Index j = 0; j < E.cols(); ++j) {
                Real s = 0;
                for (Index i = 0; i < F.cols(); ++i) {
                    const Offset o = g.offset(i, j);
                    if (!naive_in_box(o[0], o[1], Ns[k]))
                        s += std::pow(naive_abs_inner(F, i, E, j), p);
                }
                cworst = std::max(cworst, s);
            }
            for (Index i = 0; i < F.cols(); ++i) {
                Real s = 0;
                for (Index j = 0; j < E.cols(); ++j) {
                    const Offset o = g.offset(i, j);
                    if (!naive_in_box(o[0], o[1], Ns[k]))
                        s += std::pow(naive_abs_inner(F, i, E, j), p);
                }
                rworst = std::max(rworst, s);
            }
            EXPECT_NEAR(col.eps[k], cworst, 1e-12);
            EXPECT_NEAR(row.eps[k], rworst, 1e-12);
            if (k > 0) {
                EXPECT_LE(col.eps[k], col.eps[k - 1] + 1e-15);
                EXPECT_LE(row.eps[k], row.eps[k - 1] + 1e-15);
            }
        }
        // On the torus the box of side L holds every offset.
        EXPECT_EQ(col.eps.back(), 0);
        EXPECT_EQ(row.eps.back(), 0);
    }
    EXPECT_THROW(column_decay_profile(F, E, g, 0.5, Ns), InvalidArgument);
}

TEST(Hap, StrongMatchesNaiveAndVanishesOnWholeTorus)
{
    const Fixture fx = jittered(24, "3x4", "4x6", 1.0, 5);
    const auto &[F, E, g] = fx.pair;
    const FrameData fd = canonical_dual(F);
    for (Index N : {2, 6, 12}) {
        Real worst = 0;
        for (Index j = 0; j < E.cols(); ++j) {
            CVector r = E.col(j);
            for (Index i = 0; i < F.cols(); ++i) {
                const Offset o = g.offset(i, j);
                if (naive_in_box(o[0], o[1], N))
                    r -= F.col(i).dot(E.col(j)) * fd.duals.col(i);
            }
            worst = std::max(worst, r.norm());
        }
        EXPECT_NEAR(strong_hap_error(F, fd.duals, E, g, N), worst, 1e-11);
    }
    EXPECT_LT(strong_hap_error(F, fd.duals, E, g, 24), 1e-10);
}

// Property: weak <= strong, both HAPs, on random jittered systems.
TEST(Hap, WeakNeverExceedsStrong)
{
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const Fixture fx = jittered(24, "3x4", "4x4", 1.0, seed);
        const auto &[F, E, g] = fx.pair;
        const FrameData fd = canonical_dual(F);
        const FrameData ed = canonical_dual(E);
        for (Index N : {1, 4, 8, 16}) {
            EXPECT_LE(weak_hap_error(fd.duals, E, g, N), strong_hap_error(F, fd.duals, E, g, N) * (1 + 1e-9) + 1e-12);
            EXPECT_LE(weak_dual_hap_error(F, ed.duals, g, N),
                      strong_dual_hap_error(F, E, ed.duals, g, N) * (1 + 1e-9) + 1e-12);
        }
    }
}

TEST(Hap, SpanDistanceMatchesLeastSquares)
{
    std::mt19937_64 rng(3);
    std::normal_distribution<Real> n;
    CMatrix D(10, 4);
    CVector v(10);
    for (Index i = 0; i < 10; ++i) {
        v(i) = Complex(n(rng), n(rng));
        for (Index j = 0; j < 4; ++j)
            D(i, j) = Complex(n(rng), n(rng));
    }
    const CVector x = D.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(v);
    EXPECT_NEAR(span_distance(D, v), (D * x - v).norm(), 1e-12);
    EXPECT_NEAR(span_distance(CMatrix(10, 0), v), v.norm(), 1e-15);
    // Rank-deficient: a repeated column changes nothing.
    CMatrix D2(10, 5);
    D2 << D, D.col(0);
    EXPECT_NEAR(span_distance(D2, v), (D * x - v).norm(), 1e-12);
    EXPECT_NEAR(span_distance(D, D.col(2)), 0, 1e-12);
}

TEST(Hap, DecayFlag)
{
    EXPECT_TRUE(decays({1, 0.5, 0.25}));
    EXPECT_FALSE(decays({1, 0.5, 0.3}));
    EXPECT_TRUE(decays({1e-13, 1e-13}));
    EXPECT_TRUE(decays({}));
}

TEST(Molecules, EnvelopeDominatesEveryElement)
{
    const TorusParams t(48);
    const RefLattice lat = parse_lattice("4x6");
    const GaborSystem sys(gaussian_window(t), jitter(lattice_points(lat, t), 1.0, 1));
    const MoleculeEnvelope env = molecule_envelope(sys.elements(), sys.points(), gaussian_window(t), lat);
    EXPECT_LE(env.max_violation, 1e-12);
    EXPECT_LE(env.rounding_offset, 0.5 + 1e-12);
    EXPECT_GT(env.amalgam_l1, env.amalgam_l2);
    Real prev = 1;
    for (Real r : {0.0, 4.0, 8.0, 16.0, 24.0}) {
        const Real f = molecule_tail_fraction(env, r, lat);
        EXPECT_GE(f, 0);
        EXPECT_LE(f, prev + 1e-15);
        prev = f;
    }
    EXPECT_EQ(molecule_tail_fraction(env, 24, lat), 0);
}

TEST(Output, CsvHeaders)
{
    std::ostringstream a, b;
    write_profile_csv(a, {{2, 4}, {0.5, 0.25}});
    EXPECT_EQ(a.str(), "N,eps\n2,0.5\n4,0.25\n");
    Envelope env;
    env.values[{1, -2}] = 0.5;
    write_envelope_csv(b, env);
    EXPECT_EQ(b.str(), "dx,domega,value\n1,-2,0.5\n");
}

TEST(Output, ShapeErrors)
{
    const Fixture fx = jittered(24, "4x6", "4x6", 0, 1);
    EXPECT_THROW(localization_envelope(fx.pair.F, fx.pair.E.topRows(12), fx.pair.geometry), SizeMismatch);
    EXPECT_THROW(localization_envelope(fx.pair.F.leftCols(3), fx.pair.E, fx.pair.geometry), SizeMismatch);
}
