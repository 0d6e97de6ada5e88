#include <gaborlab/signal.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace gaborlab;

namespace {

Signal random_signal(Index L, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<Real> n;
    CVector v(L);
    for (Index i = 0; i < L; ++i)
        v(i) = Complex(n(rng), n(rng));
    return Signal(v);
}

CVector direct_dft(const CVector &f)
{
    const Index L = f.size();
    CVector out(L);
    for (Index k = 0; k < L; ++k) {
        Complex s = 0;
        for (Index n = 0; n < L; ++n)
            s += f(n) * std::polar(1.0, -2 * kPi * static_cast<Real>(k * n) / static_cast<Real>(L));
        out(k) = s;
    }
    return out;
}

} // namespace

TEST(Shifts, QuantizeRoundsHalfUp)
{
    EXPECT_EQ(quantize(2.5, 10), 3);
    EXPECT_EQ(quantize(2.49, 10), 2);
    EXPECT_EQ(quantize(-0.5, 10), 0);
    EXPECT_EQ(quantize(-0.51, 10), 9);
    EXPECT_EQ(quantize(9.6, 10), 0);
}

TEST(Shifts, TranslateAndModulateByDefinition)
{
    const Signal f = random_signal(12, 1);
    const Signal t = translate(f, 5);
    const Signal m = modulate(f, 3);
    const Signal tm = tf_shift(f, 5, 3);
    for (Index n = 0; n < 12; ++n) {
        EXPECT_EQ(t[n], f[(n - 5 + 12) % 12]);
        const Complex e = std::polar(1.0, 2 * kPi * 3 * static_cast<Real>(n) / 12);
        EXPECT_NEAR(std::abs(m[n] - e * f[n]), 0, 1e-14);
        EXPECT_NEAR(std::abs(tm[n] - e * f[(n - 5 + 12) % 12]), 0, 1e-14);
    }
}

// Commutation M_w T_x = e^{2 pi i w x / L} T_x M_w on the grid.
TEST(Shifts, CommutationRelation)
{
    const Signal f = random_signal(16, 2);
    const Signal a = modulate(translate(f, 3), 5);
    const Signal b = translate(modulate(f, 5), 3);
    const Complex phase = std::polar(1.0, 2 * kPi * 15 / 16.0);
    for (Index n = 0; n < 16; ++n)
        EXPECT_NEAR(std::abs(a[n] - phase * b[n]), 0, 1e-13);
}

TEST(Windows, UnitNormAndShape)
{
    const TorusParams t(64);
    for (const Signal &g : {gaussian_window(t), box_window(t, 8), cosine_bump_window(t)})
        EXPECT_NEAR(g.norm(), 1, 1e-14);
    const Signal b = box_window(t, 8);
    for (Index n = 0; n < 64; ++n) {
        const bool on = n < 4 || n >= 60;
        EXPECT_NEAR(std::abs(b[n]), on ? 1 / std::sqrt(8.0) : 0, 1e-15);
    }
    EXPECT_THROW(box_window(t, 7), InvalidArgument);
    EXPECT_THROW(cosine_bump_window(TorusParams(30)), InvalidArgument);
    EXPECT_THROW(parse_window_kind("triangle"), InvalidArgument);
}

// The periodized Gaussian with variance tied to sqrt(L) is its own DFT up to sqrt(L).
TEST(Windows, GaussianIsFourierInvariant)
{
    for (Index L : {32, 144, 96}) {
        const Signal g = gaussian_window(TorusParams(L));
        const CVector G = direct_dft(g.samples());
        EXPECT_LT((G / std::sqrt(static_cast<Real>(L)) - g.samples()).norm(), 1e-12) << L;
        for (Index n = 1; n < L; ++n)
            EXPECT_NEAR(std::abs(g[n] - g[L - n]), 0, 1e-15);
    }
}

// |cosine bump|^2 shifted by L/4 sums to a constant.
TEST(Windows, CosineBumpPartitionOfUnity)
{
    const Index L = 64;
    const Signal g = cosine_bump_window(TorusParams(L));
    RVector s = RVector::Zero(L);
    for (Index k = 0; k < 4; ++k)
        for (Index n = 0; n < L; ++n)
            s(n) += std::norm(g[(n - k * L / 4 + L) % L]);
    EXPECT_LT((s.array() - s(0)).abs().maxCoeff(), 1e-14);
}

TEST(Stft, MatchesNaiveDoubleLoop)
{
    const Index L = 18;
    const Signal f = random_signal(L, 4);
    const Signal g = random_signal(L, 5);
    const StftGrid grid = stft(f, g);
    for (Index x = 0; x < L; ++x)
        for (Index w = 0; w < L; ++w) {
            const Complex direct = inner(f, tf_shift(g, static_cast<Real>(x), static_cast<Real>(w)));
            ASSERT_NEAR(std::abs(grid.values(x, w) - direct), 0, 1e-12);
        }
    EXPECT_THROW(stft(f, random_signal(L + 1, 1)), SizeMismatch);
}

// Moyal: sum |V_g f|^2 = L ||f||^2 ||g||^2.
TEST(Stft, MoyalIdentity)
{
    const Index L = 40;
    const Signal f = random_signal(L, 6);
    const Signal g = gaussian_window(TorusParams(L));
    const Real lhs = stft(f, g).magnitude().array().square().sum();
    EXPECT_NEAR(lhs, static_cast<Real>(L) * f.norm() * f.norm(), 1e-9 * lhs);
}

TEST(Norms, ModulationNormProperties)
{
    const Index L = 32;
    const Signal f = random_signal(L, 7);
    const Real m1 = mp_norm(f, 1), m2 = mp_norm(f, 2), minf = mp_norm(f, kInfinity);
    EXPECT_GE(m1, m2);
    EXPECT_GE(m2, minf);
    EXPECT_NEAR(m2, std::sqrt(static_cast<Real>(L)) * f.norm(), 1e-9);
    EXPECT_THROW(mp_norm(f, 0.5), InvalidArgument);
}

TEST(Norms, AmalgamNormByBruteForce)
{
    RMatrix F = RMatrix::Random(8, 8).cwiseAbs();
    const RefLattice lat{2, 4};
    Real acc = 0;
    for (Index u = 0; u < 8; u += 2)
        for (Index v = 0; v < 8; v += 4) {
            Real m = 0;
            for (Index a = 0; a < 2; ++a)
                for (Index b = 0; b < 4; ++b)
                    m = std::max(m, F(u + a, v + b));
            acc += m;
        }
    EXPECT_NEAR(amalgam_norm(F, 1, lat), acc, 1e-14);
    EXPECT_GE(amalgam_norm(F, 1, lat), F.sum() / 8);
    EXPECT_THROW(amalgam_norm(F, 1, RefLattice{3, 4}), InvalidLattice);
}

// |V_phi (M_b T_a f)(x, w)| = |V_phi f(x - a, w - b)|.
TEST(Stft, Covariance)
{
    const Index L = 16;
    const Signal f = random_signal(L, 8);
    const Signal phi = gaussian_window(TorusParams(L));
    const RMatrix base = stft(f, phi).magnitude();
    const RMatrix moved = stft(tf_shift(f, 5, 3), phi).magnitude();
    for (Index x = 0; x < L; ++x)
        for (Index w = 0; w < L; ++w)
            ASSERT_NEAR(moved(x, w), base((x - 5 + L) % L, (w - 3 + L) % L), 1e-12);
}
