// gabor-lab: command-line front end for the gaborlab library.
//
// Exit codes: 0 success, 1 usage or input error, 2 a checked identity failed.

#include <gaborlab/acceptance.hpp>
#include <gaborlab/counterexamples.hpp>
#include <gaborlab/gabor.hpp>
#include <gaborlab/localization.hpp>
#include <gaborlab/measure.hpp>
#include <gaborlab/pointset.hpp>
#include <gaborlab/report.hpp>
#include <gaborlab/signal.hpp>
#include <gaborlab/svg.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gaborlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAssertion = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    Index L = 144;
    std::string window = "gaussian";
    Index width = 8;
    std::string lattice = "4x6";
    Real jitter = 0;
    std::uint64_t seed = 1;
    Real p = 2;
    std::vector<Index> N;
    std::string reflattice;
    std::string ref = "gaussian";
    std::string out;
    std::string format = "json";
    bool plot = false;
    bool plot_log = false;
    int threads = 1;
    bool iterative = false;
    Index size = 16;
    Real fraction = 1.0 / 6;
    std::string strategy = "percell";
    std::string report;
    std::string name;
    std::vector<int> only;
    std::string config_file;
};

json to_json(const ExperimentConfig &c)
{
    return {{"L", c.L},
            {"window", c.window},
            {"width", c.width},
            {"lattice", c.lattice},
            {"jitter", c.jitter},
            {"seed", c.seed},
            {"p", c.p},
            {"N", c.N},
            {"reflattice", c.reflattice.empty() ? c.lattice : c.reflattice},
            {"ref", c.ref},
            {"format", c.format},
            {"iterative", c.iterative},
            {"size", c.size},
            {"fraction", c.fraction},
            {"strategy", c.strategy},
            {"name", c.name}};
}

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!cur.empty())
            parts.push_back(cur);
    return parts;
}

template <typename T> T parse_number(const std::string &key, const std::string &v)
{
    std::istringstream in(v);
    T out{};
    if (!(in >> out) || !(in >> std::ws).eof())
        throw UsageError("config key '" + key + "': cannot parse '" + v + "'");
    return out;
}

bool parse_bool(const std::string &key, const std::string &v)
{
    if (v == "true" || v == "1" || v == "yes")
        return true;
    if (v == "false" || v == "0" || v == "no")
        return false;
    throw UsageError("config key '" + key + "': expected true or false, got '" + v + "'");
}

/// key=value lines; '#' starts a comment. Values override command-line flags.
void apply_config_file(ExperimentConfig &c, const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open config file '" + path + "'");
    const std::map<std::string, std::function<void(const std::string &, const std::string &)>> set = {
        {"L", [&](auto &k, auto &v) { c.L = parse_number<Index>(k, v); }},
        {"window", [&](auto &, auto &v) { c.window = v; }},
        {"width", [&](auto &k, auto &v) { c.width = parse_number<Index>(k, v); }},
        {"lattice", [&](auto &, auto &v) { c.lattice = v; }},
        {"jitter", [&](auto &k, auto &v) { c.jitter = parse_number<Real>(k, v); }},
        {"seed", [&](auto &k, auto &v) { c.seed = parse_number<std::uint64_t>(k, v); }},
        {"p", [&](auto &k, auto &v) { c.p = parse_number<Real>(k, v); }},
        {"N",
         [&](auto &k, auto &v) {
             c.N.clear();
             for (const auto &s : split(v, ','))
                 c.N.push_back(parse_number<Index>(k, s));
         }},
        {"reflattice", [&](auto &, auto &v) { c.reflattice = v; }},
        {"ref", [&](auto &, auto &v) { c.ref = v; }},
        {"out", [&](auto &, auto &v) { c.out = v; }},
        {"format", [&](auto &, auto &v) { c.format = v; }},
        {"plot", [&](auto &k, auto &v) { c.plot = parse_bool(k, v); }},
        {"plot_log", [&](auto &k, auto &v) { c.plot_log = parse_bool(k, v); }},
        {"threads", [&](auto &k, auto &v) { c.threads = parse_number<int>(k, v); }},
        {"iterative", [&](auto &k, auto &v) { c.iterative = parse_bool(k, v); }},
        {"size", [&](auto &k, auto &v) { c.size = parse_number<Index>(k, v); }},
        {"fraction", [&](auto &k, auto &v) { c.fraction = parse_number<Real>(k, v); }},
        {"strategy", [&](auto &, auto &v) { c.strategy = v; }},
    };
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = set.find(key);
        if (it == set.end())
            throw UsageError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        it->second(key, value);
    }
}

struct Setup {
    TorusParams torus;
    RefLattice lattice;
    RefLattice reflattice;
    Signal window;
    PointSet points;
};

Setup make_setup(const ExperimentConfig &c)
{
    const TorusParams torus(c.L);
    const RefLattice lat = parse_lattice(c.lattice);
    lat.validate(torus);
    const RefLattice ref = c.reflattice.empty() ? lat : parse_lattice(c.reflattice);
    ref.validate(torus);
    const Signal g = make_window(parse_window_kind(c.window), torus, c.width);
    return {torus, lat, ref, g, jitter(lattice_points(lat, torus), c.jitter, c.seed)};
}

std::vector<Index> box_sides(const ExperimentConfig &c)
{
    if (!c.N.empty())
        return c.N;
    std::vector<Index> out;
    for (Index d : {8, 4, 2, 1})
        if (c.L / d >= 1)
            out.push_back(c.L / d);
    return out;
}

void require_dense(const ExperimentConfig &c)
{
    if (c.L > kMaxDenseL)
        throw InvalidArgument("L=" + std::to_string(c.L) + " exceeds the dense limit " +
                              std::to_string(kMaxDenseL) + " for this command");
}

/// Where a command's outputs go.
class Sink {
  public:
    Sink(const ExperimentConfig &c, std::string command) : cfg_(c), command_(std::move(command))
    {
        if (!cfg_.out.empty())
            fs::create_directories(cfg_.out);
    }

    bool to_files() const { return !cfg_.out.empty(); }
    bool csv() const { return cfg_.format == "csv"; }

    fs::path path(const std::string &file) const
    {
        return fs::path(cfg_.out.empty() ? "." : cfg_.out) / file;
    }

    /// Writes the JSON payload (or the CSV produced by `csv_writer`).
    void payload(const json &result, const std::function<void(std::ostream &)> &csv_writer)
    {
        const json doc = {{"command", command_}, {"config", to_json(cfg_)}, {"result", result}};
        auto emit = [&](std::ostream &os) {
            if (csv())
                csv_writer(os);
            else
                os << doc.dump(2) << '\n';
        };
        if (!to_files()) {
            emit(std::cout);
            return;
        }
        write(command_ + (csv() ? ".csv" : ".json"), emit);
        // Wall-clock data lives apart from the payload so payloads are reproducible.
        const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::ostringstream ts;
        ts << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ");
        write("metadata.json", [&](std::ostream &os) {
            os << json{{"command", command_}, {"timestamp", ts.str()}, {"tool", "gabor-lab"}}.dump(2)
               << '\n';
        });
    }

    void write(const std::string &file, const std::function<void(std::ostream &)> &fn) const
    {
        std::ofstream os(path(file));
        if (!os)
            throw IoError("cannot write " + path(file).string());
        fn(os);
    }

  private:
    const ExperimentConfig &cfg_;
    std::string command_;
};

json profile_json(const DecayProfile &p)
{
    return {{"N", p.N_values}, {"eps", p.eps}};
}

Series to_series(const std::string &name, const std::vector<Index> &x, const std::vector<Real> &y)
{
    Series s{name, {}, y};
    for (Index v : x)
        s.x.push_back(static_cast<Real>(v));
    return s;
}

int cmd_density(const ExperimentConfig &c)
{
    const Setup s = make_setup(c);
    const auto Ns = box_sides(c);
    json levels = json::array();
    std::vector<Real> lo, hi;
    for (Index N : Ns) {
        const DensityBounds d = density_bounds(s.points, N);
        levels.push_back({{"N", N}, {"D_minus", d.lower}, {"D_plus", d.upper}});
        lo.push_back(d.lower);
        hi.push_back(d.upper);
    }
    Sink sink(c, "density");
    sink.payload({{"n_points", s.points.size()}, {"levels", levels}}, [&](std::ostream &os) {
        os << "N,D_minus,D_plus\n" << std::setprecision(17);
        for (std::size_t k = 0; k < Ns.size(); ++k)
            os << Ns[k] << ',' << lo[k] << ',' << hi[k] << '\n';
    });
    if (sink.to_files()) {
        std::ofstream os(sink.path("points.csv"));
        write_csv(os, s.points);
    }
    if (c.plot)
        sink.write("density.svg", [&](std::ostream &os) {
            write_curve_svg(os, "box density vs N", {to_series("D-", Ns, lo), to_series("D+", Ns, hi)},
                            false);
        });
    return kExitOk;
}

int cmd_framebounds(const ExperimentConfig &c)
{
    const Setup s = make_setup(c);
    const GaborSystem sys(s.window, s.points);
    const FrameReport rep =
        frame_report(sys, c.window, s.lattice, 0, c.iterative ? BoundsMethod::iterative : BoundsMethod::dense);
    Sink sink(c, "framebounds");
    sink.payload(to_json(rep), [&](std::ostream &os) { write_csv(os, rep); });
    if (c.plot)
        sink.write("window_stft.svg", [&](std::ostream &os) {
            write_heatmap_svg(os, "|STFT| of the window", stft(s.window, gaussian_window(s.torus)).magnitude(),
                              c.plot_log);
        });
    return kExitOk;
}

int cmd_dual(const ExperimentConfig &c)
{
    require_dense(c);
    const Setup s = make_setup(c);
    const GaborSystem sys(s.window, s.points);
    const FrameData fd = canonical_dual(sys);
    const FrameReport rep = frame_report(sys, c.window, s.lattice);
    const CVector diag = fd.diagonal_products(sys.elements());
    Real mp1 = 0;
    for (Index i = 0; i < fd.duals.cols(); ++i)
        mp1 = std::max(mp1, mp_norm(Signal(fd.duals.col(i)), 1));
    const Real residual =
        (fd.S * fd.duals - sys.elements()).colwise().norm().maxCoeff();
    const json result = {{"report", to_json(rep)},
                         {"diagonal_min", diag.real().minCoeff()},
                         {"diagonal_max", diag.real().maxCoeff()},
                         {"max_residual", residual},
                         {"dual_m1_max", mp1}};
    auto dump = [&](std::ostream &os) {
        os << "index,n,re,im\n" << std::setprecision(17);
        for (Index i = 0; i < fd.duals.cols(); ++i)
            for (Index n = 0; n < fd.duals.rows(); ++n)
                os << i << ',' << n << ',' << fd.duals(n, i).real() << ',' << fd.duals(n, i).imag() << '\n';
    };
    Sink sink(c, "dual");
    sink.payload(result, dump);
    if (sink.to_files() && !sink.csv())
        sink.write("dual_elements.csv", dump);
    if (c.plot)
        sink.write("dual_stft.svg", [&](std::ostream &os) {
            write_heatmap_svg(os, "|STFT| of the first dual element",
                              stft(Signal(fd.duals.col(0)), gaussian_window(s.torus)).magnitude(), c.plot_log);
        });
    return kExitOk;
}

int cmd_localize(const ExperimentConfig &c)
{
    const Setup s = make_setup(c);
    const GaborSystem sys(s.window, s.points);
    const Signal ref = make_window(parse_window_kind(c.ref), s.torus, c.width);
    const Pairing pair = gabor_pairing(sys, ref, s.reflattice);
    const auto Ns = box_sides(c);
    const DecayProfile col = column_decay_profile(pair.F, pair.E, pair.geometry, c.p, Ns);
    const DecayProfile row = row_decay_profile(pair.F, pair.E, pair.geometry, c.p, Ns);
    const Envelope env = localization_envelope(pair.F, pair.E, pair.geometry);
    json result = {{"column", profile_json(col)},
                   {"row", profile_json(row)},
                   {"envelope_p_norm", env.p_norm(c.p)},
                   {"envelope_l1", env.p_norm(1)},
                   {"envelope_l2", env.p_norm(2)},
                   {"column_decay", decays(col.eps)},
                   {"row_decay", decays(row.eps)}};
    if (c.L <= kMaxDenseL) {
        const FrameBounds fb = frame_bounds(pair.F);
        const FrameBounds eb = frame_bounds(pair.E);
        if (fb.is_frame()) {
            const FrameData fd = canonical_dual(pair.F);
            std::vector<Real> strong;
            for (Index N : Ns)
                strong.push_back(strong_hap_error(pair.F, fd.duals, pair.E, pair.geometry, N));
            result["strong_hap"] = strong;
        }
        if (eb.is_frame()) {
            const FrameData ed = canonical_dual(pair.E);
            std::vector<Real> strong;
            for (Index N : Ns)
                strong.push_back(strong_dual_hap_error(pair.F, pair.E, ed.duals, pair.geometry, N));
            result["strong_dual_hap"] = strong;
        }
    }
    Sink sink(c, "localize");
    sink.payload(result, [&](std::ostream &os) {
        os << "N,column_eps,row_eps\n" << std::setprecision(17);
        for (std::size_t k = 0; k < Ns.size(); ++k)
            os << Ns[k] << ',' << col.eps[k] << ',' << row.eps[k] << '\n';
    });
    if (sink.to_files()) {
        sink.write("column_profile.csv", [&](std::ostream &os) { write_profile_csv(os, col); });
        sink.write("row_profile.csv", [&](std::ostream &os) { write_profile_csv(os, row); });
        sink.write("envelope.csv", [&](std::ostream &os) { write_envelope_csv(os, env); });
    }
    if (c.plot)
        sink.write("localize.svg", [&](std::ostream &os) {
            write_curve_svg(os, "decay profiles",
                            {to_series("column", Ns, col.eps), to_series("row", Ns, row.eps)}, true);
        });
    return kExitOk;
}

int cmd_measure(const ExperimentConfig &c)
{
    require_dense(c);
    const Setup s = make_setup(c);
    const GaborSystem sys(s.window, s.points);
    const FrameData fd = canonical_dual(sys);
    auto Ns = box_sides(c);
    if (std::find(Ns.begin(), Ns.end(), c.L) == Ns.end())
        Ns.push_back(c.L);
    const auto centers = lattice_centers(s.reflattice, s.torus);
    const MeasureProfile mp = measure_profile(sys, fd, Ns, centers);
    const DensityMeasureCheck dm = measure_density_bounds_check(mp, fd);

    bool ok = true;
    json levels = json::array();
    json recip = json::array();
    std::vector<Real> mlo, mhi;
    for (const auto &lev : mp.levels) {
        levels.push_back({{"N", lev.N},
                          {"M_minus", lev.M_minus},
                          {"M_plus", lev.M_plus},
                          {"D_minus", lev.D_minus},
                          {"D_plus", lev.D_plus},
                          {"skipped_centers", lev.skipped.size()}});
        mlo.push_back(lev.M_minus);
        mhi.push_back(lev.M_plus);
        ok = ok && lev.M_minus >= -1e-9 && lev.M_plus <= 1 + 1e-9 && lev.M_minus <= lev.M_plus;
        const Reciprocity r = reciprocity_check(sys, fd, lev.N, centers);
        recip.push_back({{"N", r.N}, {"r1", r.r1}, {"r2", r.r2}});
        if (lev.N == c.L)
            ok = ok && r.r1 < 1e-9 && r.r2 < 1e-9;
    }
    const json result = {{"levels", levels},
                         {"reciprocity", recip},
                         {"density_measure", {{"N", dm.N_values},
                                              {"lower_product", dm.lower_product},
                                              {"upper_product", dm.upper_product},
                                              {"tau", dm.tau},
                                              {"tight", dm.tight},
                                              {"density_spread", dm.density_spread}}},
                         {"max_imag_residue", mp.max_imag_residue},
                         {"solver_warning", mp.solver_warning()},
                         {"identities_hold", ok}};
    Sink sink(c, "measure");
    sink.payload(result, [&](std::ostream &os) { write_measure_csv(os, mp); });
    if (sink.to_files() && !sink.csv())
        sink.write("measure_profile.csv", [&](std::ostream &os) { write_measure_csv(os, mp); });
    if (c.plot)
        sink.write("measure.svg", [&](std::ostream &os) {
            write_curve_svg(os, "relative measure vs N",
                            {to_series("M-", Ns, mlo), to_series("M+", Ns, mhi)}, false);
        });
    if (mp.solver_warning())
        std::cerr << "warning: imaginary residue " << mp.max_imag_residue << " in <g, dual g>\n";
    if (!ok)
        std::cerr << "measure identities failed beyond tolerance\n";
    return ok ? kExitOk : kExitAssertion;
}

int cmd_excess(const ExperimentConfig &c)
{
    const Setup s = make_setup(c);
    const GaborSystem sys(s.window, s.points);
    const BoundsMethod method = c.iterative ? BoundsMethod::iterative : BoundsMethod::dense;
    RemovalStrategy strategy;
    if (c.strategy == "percell")
        strategy = PerCellRemoval{c.fraction, s.reflattice, c.seed};
    else if (c.strategy == "random")
        strategy = RandomThinning{c.fraction, c.seed};
    else
        throw UsageError("unknown strategy '" + c.strategy + "' (expected percell or random)");
    const FrameBounds before = frame_bounds(sys, method);
    const RemovalResult rem = remove_subset(sys, strategy);
    const FrameBounds after = frame_bounds(rem.survivor, method);
    const json result = {{"before", {{"A", before.A}, {"B", before.B}}},
                         {"after", {{"A", after.A}, {"B", after.B}}},
                         {"removed", rem.removed.size()},
                         {"survivor_size", rem.survivor.size()},
                         {"lower_bound_ratio", before.A > 0 ? after.A / before.A : 0},
                         {"survivor_is_frame", after.is_frame()},
                         {"removed_density", density_bounds(rem.removed, c.L).lower}};
    Sink sink(c, "excess");
    sink.payload(result, [&](std::ostream &os) {
        os << "A_before,B_before,A_after,B_after,removed\n" << std::setprecision(17);
        os << before.A << ',' << before.B << ',' << after.A << ',' << after.B << ','
           << rem.removed.size() << '\n';
    });
    if (sink.to_files()) {
        std::ofstream os(sink.path("removed_points.csv"));
        write_csv(os, rem.removed);
    }
    return kExitOk;
}

const char *kind_name(ConstantCheck::Kind k)
{
    switch (k) {
    case ConstantCheck::Kind::equal:
        return "equal";
    case ConstantCheck::Kind::at_least:
        return "at_least";
    case ConstantCheck::Kind::at_most:
        return "at_most";
    }
    return "equal";
}

int cmd_counterexample(const ExperimentConfig &c)
{
    const auto checks = constant_checks(c.name, c.size);
    json arr = json::array();
    bool all = true;
    for (const auto &k : checks) {
        arr.push_back({{"name", k.name},
                       {"value", k.value},
                       {"expected", k.expected},
                       {"tolerance", k.tolerance},
                       {"kind", kind_name(k.kind)},
                       {"passed", k.passed}});
        all = all && k.passed;
    }
    const json result = {{"name", c.name}, {"size", c.size}, {"checks", arr}, {"all_passed", all}};
    Sink sink(c, "counterexample");
    sink.payload(result, [&](std::ostream &os) {
        os << "name,value,expected,tolerance,kind,passed\n" << std::setprecision(17);
        for (const auto &k : checks)
            os << '"' << k.name << "\"," << k.value << ',' << k.expected << ',' << k.tolerance << ','
               << kind_name(k.kind) << ',' << (k.passed ? "true" : "false") << '\n';
    });
    if (!c.report.empty()) {
        std::ofstream os(c.report);
        if (!os)
            throw IoError("cannot write " + c.report);
        os << json{{"command", "counterexample"}, {"config", to_json(c)}, {"result", result}}.dump(2) << '\n';
    }
    return all ? kExitOk : kExitAssertion;
}

int cmd_suite(const ExperimentConfig &c)
{
    std::vector<int> ids = c.only;
    if (ids.empty())
        for (int i = 1; i <= kCriterionCount; ++i)
            ids.push_back(i);
    json arr = json::array();
    int failed = 0;
    std::vector<CriterionResult> results;
    for (int id : ids) {
        results.push_back(run_criterion(id));
        std::cerr << summary_line(results.back()) << '\n';
        arr.push_back(to_json(results.back()));
        if (!results.back().passed)
            ++failed;
    }
    const json result = {{"criteria", arr},
                         {"passed", static_cast<int>(ids.size()) - failed},
                         {"failed", failed}};
    Sink sink(c, "suite");
    sink.payload(result, [&](std::ostream &os) {
        os << "id,passed,measured,threshold\n" << std::setprecision(17);
        for (const auto &r : results)
            os << r.id << ',' << (r.passed ? "true" : "false") << ',' << r.measured << ','
               << r.threshold << '\n';
    });
    return failed == 0 ? kExitOk : kExitAssertion;
}

void add_common(CLI::App *sub, ExperimentConfig &c)
{
    sub->add_option("--L", c.L, "torus side");
    sub->add_option("--window", c.window, "gaussian, box or cosine_bump");
    sub->add_option("--width", c.width, "box window width (must divide L)");
    sub->add_option("--lattice", c.lattice, "lattice steps AxB");
    sub->add_option("--jitter", c.jitter, "uniform jitter amplitude in grid steps");
    sub->add_option("--seed", c.seed, "random seed");
    sub->add_option("--p", c.p, "exponent for decay profiles");
    sub->add_option("--N", c.N, "box sides")->delimiter(',');
    sub->add_option("--reflattice", c.reflattice, "reference lattice AxB (defaults to --lattice)");
    sub->add_option("--ref", c.ref, "reference window");
    sub->add_option("--out", c.out, "output directory");
    sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--plot", c.plot, "emit SVG plots");
    sub->add_flag("--plot-log", c.plot_log, "log color scale for heatmaps");
    sub->add_option("--threads", c.threads, "cap on internal parallelism");
    sub->add_flag("--iterative", c.iterative, "iterative frame bounds");
    sub->add_option("--config", c.config_file, "key=value file overriding flags");
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"gabor-lab: Gabor frame density, localization and measure experiments"};
    app.require_subcommand(1);
    ExperimentConfig cfg;

    std::map<CLI::App *, std::function<int(const ExperimentConfig &)>> handlers;
    auto add = [&](const std::string &name, const std::string &help,
                   std::function<int(const ExperimentConfig &)> fn) {
        CLI::App *sub = app.add_subcommand(name, help);
        add_common(sub, cfg);
        handlers[sub] = std::move(fn);
        return sub;
    };
    add("density", "box densities of the point set", cmd_density);
    add("framebounds", "frame bounds, densities and measures", cmd_framebounds);
    add("dual", "canonical dual frame and its statistics", cmd_dual);
    add("localize", "column/row decay profiles and envelopes", cmd_localize);
    add("measure", "relative measure profile and reciprocity", cmd_measure);
    CLI::App *excess = add("excess", "remove a positive-density subset", cmd_excess);
    excess->add_option("--fraction", cfg.fraction, "fraction of points to remove");
    excess->add_option("--strategy", cfg.strategy, "percell or random");
    CLI::App *ce = add("counterexample", "published constants of an abstract construction",
                       cmd_counterexample);
    ce->add_option("name", cfg.name, "construction name")->required();
    ce->add_option("--size", cfg.size, "truncation size");
    ce->add_option("--report", cfg.report, "also write the JSON report here");
    CLI::App *suite = add("suite", "run the acceptance criteria", cmd_suite);
    suite->add_option("--only", cfg.only, "criterion ids")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (!cfg.config_file.empty())
            apply_config_file(cfg, cfg.config_file);
        if (cfg.threads < 1)
            throw UsageError("--threads must be positive");
        Eigen::setNbThreads(cfg.threads);
        for (const auto &[sub, fn] : handlers)
            if (sub->parsed())
                return fn(cfg);
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NotAFrame &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
