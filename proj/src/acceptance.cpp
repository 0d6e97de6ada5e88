#include <gaborlab/acceptance.hpp>

#include <gaborlab/counterexamples.hpp>
#include <gaborlab/gabor.hpp>
#include <gaborlab/localization.hpp>
#include <gaborlab/measure.hpp>
#include <gaborlab/pointset.hpp>
#include <gaborlab/signal.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

namespace gaborlab {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(Real v)
{
    std::ostringstream s;
    s << std::setprecision(6) << v;
    return s.str();
}

CriterionResult wexler_raz()
{
    CriterionResult r{1, "lattice measure <g, S^-1 g> = ab/L (L=144, 4x6, gaussian)"};
    const auto t0 = Clock::now();
    const TorusParams torus(144);
    const RefLattice lat{4, 6};
    const GaborSystem sys = lattice_system(gaussian_window(torus), lat);
    const FrameData fd = canonical_dual(sys, DualMethod::factorize);
    const Complex v = fd.duals.col(0).dot(sys.elements().col(0));
    const Real secs = std::chrono::duration<Real>(Clock::now() - t0).count();
    r.measured = std::abs(v - Complex(1.0 / 6.0));
    r.threshold = 1e-9;
    r.passed = r.measured < r.threshold && secs < 10;
    r.detail = "<g, dual g> = " + fmt(v.real()) + ", dense runtime " + fmt(secs) + " s (limit 10 s)";
    return r;
}

CriterionResult reciprocity()
{
    CriterionResult r{2, "density-measure reciprocity r1 at N = L (jittered 4x6, L=144)"};
    const auto t0 = Clock::now();
    const TorusParams torus(144);
    const RefLattice lat{4, 6};
    const Signal g = gaussian_window(torus);
    const PointSet base = lattice_points(lat, torus);
    const auto centers = lattice_centers(lat, torus);
    Real worst = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const GaborSystem sys(g, jitter(base, 0.5, seed));
        const FrameData fd = canonical_dual(sys);
        worst = std::max(worst, reciprocity_check(sys, fd, torus.L(), centers).r1);
    }
    std::string sweep;
    Real at_zero = 0;
    for (Real delta : {0.25, 0.1, 0.0}) {
        const GaborSystem sys(g, jitter(base, delta, 1));
        const FrameData fd = canonical_dual(sys);
        const Real r1 = reciprocity_check(sys, fd, torus.L(), centers).r1;
        sweep += " delta=" + fmt(delta) + ":" + fmt(r1);
        at_zero = r1;
    }
    const Real secs = std::chrono::duration<Real>(Clock::now() - t0).count();
    r.measured = worst;
    r.threshold = 0.05;
    r.passed = worst < 0.05 && at_zero < 1e-9 && secs < 60;
    r.detail = "max r1 over seeds 1..5 at delta=0.5: " + fmt(worst) + ";" + sweep +
               "; runtime " + fmt(secs) + " s";
    return r;
}

CriterionResult sandwich()
{
    CriterionResult r{3, "frame-bound sandwich A <= D ||g||^2 <= B on the test matrix"};
    int cases = 0;
    int failures = 0;
    Real worst = -kInfinity;
    for (Index L : {Index(64), Index(144)}) {
        const TorusParams torus(L);
        const RefLattice lat = L == 64 ? RefLattice{4, 4} : RefLattice{4, 6};
        const RefLattice coarse = L == 64 ? RefLattice{8, 8} : RefLattice{8, 12};
        const PointSet lattice = lattice_points(lat, torus);
        const std::vector<PointSet> sets = {
            lattice, jitter(lattice, 1.0, 1),
            lattice.merged(lattice_points(coarse, torus).translated(2, 3))};
        for (WindowKind kind : {WindowKind::gaussian, WindowKind::box, WindowKind::cosine_bump}) {
            const Signal g = make_window(kind, torus, 8);
            for (const PointSet &ps : sets) {
                const GaborSystem sys(g, ps);
                const FrameBounds b = frame_bounds(sys);
                const DensityBounds d = density_bounds(ps, L);
                const Real n2 = g.norm() * g.norm();
                const Real lo = d.lower * n2;
                const Real hi = d.upper * n2;
                const Real scale = std::max<Real>(b.B, 1);
                // Positive slack means a violation.
                const Real slack = std::max({b.A - lo, lo - hi, hi - b.B}) / scale;
                worst = std::max(worst, slack);
                ++cases;
                if (slack > 1e-12)
                    ++failures;
            }
        }
    }
    r.measured = worst;
    r.threshold = 1e-12;
    r.passed = failures == 0;
    r.detail = std::to_string(cases) + " systems, " + std::to_string(failures) +
               " violations; largest relative slack " + fmt(worst);
    return r;
}

CriterionResult harmonic_tails()
{
    CriterionResult r{4, "harmonic tail sum_{k>N} |<f_k, e_1>|^2 = (n-N-1)/n"};
    Real worst = 0;
    for (Index n : {Index(8), Index(32), Index(64)})
        for (Index N = 0; N < n; ++N)
            worst = std::max(worst, std::abs(harmonic_tail(n, N) -
                                             static_cast<Real>(n - N - 1) / static_cast<Real>(n)));
    r.measured = worst;
    r.threshold = 1e-12;
    r.passed = worst <= 1e-12;
    r.detail = "n in {8, 32, 64}, every N < n (0-based k)";
    return r;
}

CriterionResult perturbed_bounds()
{
    CriterionResult r{5, "perturbed basis bounds in [1/4, 9/4], A within 5% of 1/4 at M=256"};
    bool inside = true;
    Real A256 = 0;
    std::string detail;
    for (Index M : {Index(16), Index(64), Index(256)}) {
        const FrameBounds b = frame_bounds(perturbed_basis(M).F);
        inside = inside && b.A >= 0.25 - 1e-12 && b.B <= 2.25 + 1e-12;
        detail += "M=" + std::to_string(M) + ": A=" + fmt(b.A) + " B=" + fmt(b.B) + "; ";
        if (M == 256)
            A256 = b.A;
    }
    r.measured = std::abs(A256 - 0.25) / 0.25;
    r.threshold = 0.05;
    r.passed = inside && r.measured <= 0.05;
    r.detail = detail + (inside ? "containment holds" : "containment fails") +
               "; A is fixed by the j = +-1 pair at (1 - 5^{-1/2})^2";
    return r;
}

CriterionResult column_not_row()
{
    CriterionResult r{6, "column-not-row blocks: Riesz bounds in [1/2, 3/2], tail (n-1)/(4n)"};
    Real tail_err = 0;
    bool bounds_ok = true;
    std::string detail;
    for (Index n : {Index(4), Index(16), Index(64)}) {
        const auto sv = singular_extremes(column_not_row_block(n).F);
        bounds_ok = bounds_ok && sv.lower >= 0.5 - 1e-10 && sv.upper <= 1.5 + 1e-10;
        tail_err = std::max(tail_err, std::abs(column_not_row_column_tail(n) -
                                               static_cast<Real>(n - 1) / (4.0 * static_cast<Real>(n))));
        detail += "n=" + std::to_string(n) + ": [" + fmt(sv.lower) + ", " + fmt(sv.upper) + "]; ";
    }
    r.measured = tail_err;
    r.threshold = 1e-12;
    r.passed = bounds_ok && tail_err <= 1e-12;
    r.detail = detail + (bounds_ok ? "bounds hold" : "bounds fail");
    return r;
}

CriterionResult bridges()
{
    CriterionResult r{7, "bridge inequalities: 1000 random pairs (dim <= 40) and constructed examples"};
    std::size_t violations = 0;
    std::size_t checks = 0;
    const std::vector<Index> Ns = {2, 8, 32};
    for (std::uint64_t k = 0; k < 1000; ++k) {
        const Index d = 2 + static_cast<Index>((k * 7919) % 39);
        const RelationsReport rep = relations_suite(random_pair(d, 1000 + k), Ns);
        violations += rep.violations();
        checks += rep.checks.size();
    }
    std::vector<Pairing> built = {no_hap_pair(12), weak_not_strong_pair(12), perturbed_basis(32),
                                  column_not_row_pair(12), infinite_density_bessel(8)};
    {
        const auto ex = dual_localized_not_self(24, 0.75);
        built.push_back({ex.F, CMatrix::Identity(ex.F.rows(), ex.F.rows()), ex.geometry});
    }
    {
        const TorusParams torus(32);
        const GaborSystem sys(gaussian_window(torus), jitter(lattice_points({4, 4}, torus), 1.0, 3));
        built.push_back(gabor_pairing(sys, gaussian_window(torus), {4, 4}));
    }
    const std::vector<Index> Nb = {2, 4, 8, 16, 32};
    for (const Pairing &p : built) {
        const RelationsReport rep = relations_suite(p, Nb);
        violations += rep.violations();
        checks += rep.checks.size();
    }
    r.measured = static_cast<Real>(violations);
    r.threshold = 0;
    r.passed = violations == 0;
    r.detail = std::to_string(checks) + " inequality evaluations, " + std::to_string(violations) +
               " violations";
    return r;
}

CriterionResult riesz_measure()
{
    CriterionResult r{8, "Riesz bases have box averages of <f_i, dual_i> equal to 1"};
    Real worst = 0;
    // Orthonormal Gabor basis: box window of width 8 on the 8x8 lattice.
    {
        const TorusParams torus(64);
        const RefLattice lat{8, 8};
        const GaborSystem sys = lattice_system(box_window(torus, 8), lat);
        const FrameData fd = canonical_dual(sys);
        const MeasureProfile mp =
            measure_profile(sys, fd, {8, 16, 32, 64}, lattice_centers(lat, torus));
        for (const auto &lev : mp.levels)
            worst = std::max({worst, std::abs(lev.M_minus - 1), std::abs(lev.M_plus - 1)});
    }
    // Abstract Riesz bases.
    auto abstract = [&](const CMatrix &F, const IndexGeometry &g) {
        const FrameData fd = canonical_dual(F, DualMethod::factorize);
        const CMatrix I = CMatrix::Identity(F.rows(), F.rows());
        for (Index N : {Index(2), Index(6), Index(16)}) {
            const RelativeMeasure m = relative_measure(F, fd.duals, I, g, N, g.reference);
            worst = std::max({worst, std::abs(m.minus - 1), std::abs(m.plus - 1)});
        }
    };
    const Pairing pb = perturbed_basis(16);
    abstract(pb.F, pb.geometry);
    const Pairing cr = column_not_row_pair(8);
    abstract(cr.F, cr.geometry);
    const auto dl = dual_localized_not_self(16, 0.8);
    abstract(dl.F, dl.geometry);
    r.measured = worst;
    r.threshold = 1e-9;
    r.passed = worst < 1e-9;
    r.detail = "orthonormal box-window Gabor basis (L=64, 8x8), perturbed basis, column-not-row, "
               "dual-localized example";
    return r;
}

CriterionResult criticality()
{
    CriterionResult r{9, "Gaussian lattices: critical condition numbers non-decreasing, half-critical < 20"};
    std::vector<Real> critical;
    Real half_max = 0;
    std::string detail;
    const std::vector<std::pair<Index, std::pair<RefLattice, RefLattice>>> cases = {
        {32, {{4, 8}, {4, 4}}}, {64, {{8, 8}, {4, 8}}}, {128, {{8, 16}, {8, 8}}}};
    for (const auto &[L, lats] : cases) {
        const TorusParams torus(L);
        const Signal g = gaussian_window(torus);
        const FrameBounds c = frame_bounds(lattice_system(g, lats.first));
        const FrameBounds h = frame_bounds(lattice_system(g, lats.second));
        critical.push_back(c.condition());
        half_max = std::max(half_max, h.condition());
        detail += "L=" + std::to_string(L) + ": critical A=" + fmt(c.A) + " cond=" +
                  fmt(c.condition()) + ", half cond=" + fmt(h.condition()) + "; ";
    }
    const bool monotone = std::is_sorted(critical.begin(), critical.end());
    r.measured = half_max;
    r.threshold = 20;
    r.passed = monotone && half_max < 20;
    r.detail = detail + (monotone ? "critical trend non-decreasing" : "critical trend not monotone");
    return r;
}

CriterionResult molecules()
{
    CriterionResult r{10, "dual molecule envelope: domination exact, amalgam-l1 tail outside L/4 < 1e-4"};
    const auto t0 = Clock::now();
    const TorusParams torus(96);
    const RefLattice lat{4, 6};
    const Signal g = gaussian_window(torus);
    const GaborSystem sys(g, jitter(lattice_points(lat, torus), 1.0, 1));
    const FrameData fd = canonical_dual(sys);
    const MoleculeEnvelope env = molecule_envelope(fd.duals, sys.points(), g, lat);
    const Real tail = molecule_tail_fraction(env, 96.0 / 4, lat);
    const Real secs = std::chrono::duration<Real>(Clock::now() - t0).count();
    r.measured = tail;
    r.threshold = 1e-4;
    r.passed = env.max_violation <= 1e-12 && std::isfinite(env.amalgam_l1) && tail < 1e-4 &&
               secs < 120;
    r.detail = "max domination violation " + fmt(env.max_violation) + ", amalgam l1 " +
               fmt(env.amalgam_l1) + ", l2 " + fmt(env.amalgam_l2) + ", runtime " + fmt(secs) + " s";
    return r;
}

CriterionResult excess()
{
    CriterionResult r{11, "excess removal: per-cell 1/6 removal keeps A' > 0.1 A (redundancy 6)"};
    const TorusParams torus(144);
    const RefLattice lat{4, 6};
    const GaborSystem sys(gaussian_window(torus), jitter(lattice_points(lat, torus), 1.0, 1));
    const FrameBounds before = frame_bounds(sys);
    const RemovalResult rem = remove_subset(sys, PerCellRemoval{1.0 / 6, lat, 1});
    const FrameBounds after = frame_bounds(rem.survivor);
    r.measured = after.A / before.A;
    r.threshold = 0.1;
    r.passed = r.measured > 0.1;
    r.detail = "removed " + std::to_string(rem.removed.size()) + " of " + std::to_string(sys.size()) +
               "; A=" + fmt(before.A) + " A'=" + fmt(after.A);
    return r;
}

CriterionResult double_index()
{
    CriterionResult r{12, "double-index example: density 2, measure 1/2, product 1"};
    const DoubleIndexExample ex = double_index_example(32);
    Real worst = 0;
    for (Index N : {Index(1), Index(4), Index(8), Index(32)}) {
        const IndexDensity d = index_density(ex.geometry, N, ex.geometry.reference);
        const RelativeMeasure m = relative_measure(ex.F, ex.F, ex.P_E, ex.geometry, N, ex.geometry.reference);
        worst = std::max({worst, std::abs(d.minus - 2), std::abs(d.plus - 2), std::abs(m.minus - 0.5),
                          std::abs(m.plus - 0.5), std::abs(d.minus * m.plus - 1),
                          std::abs(d.plus * m.minus - 1)});
    }
    r.measured = worst;
    r.threshold = 1e-12;
    r.passed = worst <= 1e-12;
    r.detail = "M=32, box sides 1, 4, 8, 32";
    return r;
}

} // namespace

CriterionResult run_criterion(int id)
{
    static const std::function<CriterionResult()> table[] = {
        wexler_raz, reciprocity, sandwich, harmonic_tails, perturbed_bounds, column_not_row,
        bridges,    riesz_measure, criticality, molecules, excess, double_index};
    if (id < 1 || id > kCriterionCount)
        throw InvalidArgument("criterion id must lie in 1.." + std::to_string(kCriterionCount));
    const auto t0 = Clock::now();
    CriterionResult r = table[id - 1]();
    r.seconds = std::chrono::duration<Real>(Clock::now() - t0).count();
    return r;
}

std::vector<CriterionResult> run_acceptance()
{
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id)
        out.push_back(run_criterion(id));
    return out;
}

std::string summary_line(const CriterionResult &r)
{
    std::ostringstream s;
    s << (r.passed ? "PASS" : "FAIL") << "  #" << std::setw(2) << std::left << r.id << ' ' << r.name
      << "  measured=" << std::setprecision(6) << r.measured << " threshold=" << r.threshold << " ("
      << std::fixed << std::setprecision(2) << r.seconds << " s)";
    return s.str();
}

nlohmann::json to_json(const CriterionResult &r)
{
    auto num = [](Real v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
    return {{"id", r.id},           {"name", r.name},       {"passed", r.passed},
            {"measured", num(r.measured)}, {"threshold", num(r.threshold)}, {"detail", r.detail}};
}

} // namespace gaborlab
