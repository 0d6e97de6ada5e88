#include <gaborlab/report.hpp>

#include <gaborlab/measure.hpp>

#include <iomanip>
#include <ostream>

namespace gaborlab {

FrameReport frame_report(const GaborSystem &sys, const std::string &window_name,
                         const RefLattice &lat, Index N, BoundsMethod method)
{
    if (N == 0)
        N = sys.L();
    FrameReport r;
    r.L = sys.L();
    r.window = window_name;
    r.lattice = std::to_string(lat.a_step) + "x" + std::to_string(lat.b_step);
    r.n_points = sys.size();
    const FrameBounds b = frame_bounds(sys, method);
    r.A = b.A;
    r.B = b.B;
    const DensityBounds d = density_bounds(sys.points(), N);
    r.D_minus = d.lower;
    r.D_plus = d.upper;
    if (b.is_frame() && sys.L() <= kMaxDenseL) {
        const FrameData fd = canonical_dual(sys);
        const auto centers = lattice_centers(lat, sys.points().torus());
        const MeasureProfile mp = measure_profile(sys, fd, {N}, centers);
        r.measure_minus = mp.levels.front().M_minus;
        r.measure_plus = mp.levels.front().M_plus;
        r.reciprocity_residual = reciprocity_check(sys, fd, N, centers).r1;
    }
    return r;
}

nlohmann::json to_json(const FrameReport &r)
{
    auto opt = [](const std::optional<Real> &v) -> nlohmann::json {
        return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    return {{"L", r.L},
            {"window", r.window},
            {"lattice", r.lattice},
            {"n_points", r.n_points},
            {"A", r.A},
            {"B", r.B},
            {"D_minus", r.D_minus},
            {"D_plus", r.D_plus},
            {"measure_minus", opt(r.measure_minus)},
            {"measure_plus", opt(r.measure_plus)},
            {"reciprocity_residual", opt(r.reciprocity_residual)}};
}

void write_csv(std::ostream &out, const FrameReport &r)
{
    auto opt = [&](const std::optional<Real> &v) {
        if (v)
            out << *v;
    };
    out << "L,window,lattice,n_points,A,B,D_minus,D_plus,measure_minus,measure_plus,"
           "reciprocity_residual\n"
        << std::setprecision(17);
    out << r.L << ',' << r.window << ',' << r.lattice << ',' << r.n_points << ',' << r.A << ','
        << r.B << ',' << r.D_minus << ',' << r.D_plus << ',';
    opt(r.measure_minus);
    out << ',';
    opt(r.measure_plus);
    out << ',';
    opt(r.reciprocity_residual);
    out << '\n';
}

} // namespace gaborlab
