#include <gaborlab/svg.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace gaborlab {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 420;
constexpr int kMargin = 50;

const char *const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string escape(const std::string &s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '&':
            out += "&amp;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

} // namespace

void write_curve_svg(std::ostream &out, const std::string &title, const std::vector<Series> &series,
                     bool log_y)
{
    Real xmin = std::numeric_limits<Real>::infinity(), xmax = -xmin;
    Real ymin = xmin, ymax = -xmin;
    auto ty = [&](Real y) { return log_y ? std::log10(y) : y; };
    for (const auto &s : series)
        for (std::size_t k = 0; k < s.x.size() && k < s.y.size(); ++k) {
            if (log_y && !(s.y[k] > 0))
                continue;
            xmin = std::min(xmin, s.x[k]);
            xmax = std::max(xmax, s.x[k]);
            ymin = std::min(ymin, ty(s.y[k]));
            ymax = std::max(ymax, ty(s.y[k]));
        }
    if (!(xmax > xmin)) {
        xmin = std::isfinite(xmin) ? xmin - 1 : 0;
        xmax = xmin + 2;
    }
    if (!(ymax > ymin)) {
        ymin = std::isfinite(ymin) ? ymin - 1 : 0;
        ymax = ymin + 2;
    }
    auto px = [&](Real x) { return kMargin + (x - xmin) / (xmax - xmin) * (kWidth - 2 * kMargin); };
    auto py = [&](Real y) {
        return kHeight - kMargin - (ty(y) - ymin) / (ymax - ymin) * (kHeight - 2 * kMargin);
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
        << escape(title) << "</text>\n";
    out << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
        << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\""
        << kHeight - kMargin << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 16 << "\" font-size=\"10\">"
        << xmin << "</text>\n";
    out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 16
        << "\" font-size=\"10\" text-anchor=\"end\">" << xmax << "</text>\n";
    out << "<text x=\"4\" y=\"" << kMargin << "\" font-size=\"10\">" << (log_y ? "1e" : "") << ymax
        << "</text>\n";
    out << "<text x=\"4\" y=\"" << kHeight - kMargin << "\" font-size=\"10\">" << (log_y ? "1e" : "")
        << ymin << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char *color = kColors[s % (sizeof kColors / sizeof kColors[0])];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
        for (std::size_t k = 0; k < series[s].x.size() && k < series[s].y.size(); ++k) {
            if (log_y && !(series[s].y[k] > 0))
                continue;
            out << px(series[s].x[k]) << ',' << py(series[s].y[k]) << ' ';
        }
        out << "\"/>\n";
        out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kMargin + 14 * static_cast<int>(s)
            << "\" font-size=\"11\" text-anchor=\"end\" fill=\"" << color << "\">"
            << escape(series[s].name) << "</text>\n";
    }
    out << "</svg>\n";
}

void write_heatmap_svg(std::ostream &out, const std::string &title, const RMatrix &values,
                       bool log_scale)
{
    const Index rows = values.rows();
    const Index cols = values.cols();
    const int cell = std::max<int>(1, static_cast<int>(480 / std::max<Index>({rows, cols, 1})));
    const Real floor = 1e-16;
    auto tv = [&](Real v) { return log_scale ? std::log10(std::max(v, floor)) : v; };
    Real lo = std::numeric_limits<Real>::infinity(), hi = -lo;
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) {
            lo = std::min(lo, tv(values(i, j)));
            hi = std::max(hi, tv(values(i, j)));
        }
    if (!(hi > lo))
        hi = lo + 1;

    const int w = static_cast<int>(rows) * cell;
    const int h = static_cast<int>(cols) * cell;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h + 30
        << "\">\n";
    out << "<text x=\"" << w / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">"
        << escape(title) << "</text>\n";
    // Row index is time, column index is frequency; frequency grows upward.
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) {
            const int shade = static_cast<int>(std::lround(255 * (1 - (tv(values(i, j)) - lo) / (hi - lo))));
            out << "<rect x=\"" << i * cell << "\" y=\"" << 30 + (cols - 1 - j) * cell
                << "\" width=\"" << cell << "\" height=\"" << cell << "\" fill=\"rgb(" << shade << ','
                << shade << ',' << shade << ")\"/>\n";
        }
    out << "</svg>\n";
}

} // namespace gaborlab
