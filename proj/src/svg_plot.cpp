#include "burstkit/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <iomanip>
#include <sstream>

namespace burstkit::svg {

namespace {

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

Range data_range(const Panel& panel, bool x_axis) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Series& s : panel.series) {
        for (double v : x_axis ? s.x : s.y) {
            if (!std::isfinite(v)) continue;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (!std::isfinite(lo)) return {0.0, 1.0};
    if (!x_axis) lo = std::min(lo, 0.0);
    if (hi <= lo) hi = lo + 1.0;
    return {lo, hi};
}

// About five ticks at 1, 2 or 5 times a power of ten.
std::vector<double> ticks(Range r) {
    const double span = r.hi - r.lo;
    const double raw = span / 5.0;
    const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
    double step = magnitude;
    for (double f : {1.0, 2.0, 5.0, 10.0}) {
        step = f * magnitude;
        if (step >= raw) break;
    }
    std::vector<double> out;
    for (double v = std::ceil(r.lo / step) * step; v <= r.hi + 1e-9 * span; v += step) {
        out.push_back(std::abs(v) < 1e-12 * span ? 0.0 : v);
    }
    return out;
}

// Enough decimals to tell neighbouring ticks apart.
std::string tick_label(double v, const std::vector<double>& all) {
    std::ostringstream out;
    const double step = all.size() > 1 ? all[1] - all[0] : 1.0;
    if (step >= 1.0 || !(step > 0.0) || std::abs(v) >= 1e5) {
        out << std::setprecision(6) << v;
    } else {
        const int decimals = static_cast<int>(std::ceil(-std::log10(step) - 1e-9));
        out << std::fixed << std::setprecision(decimals) << v;
    }
    return out.str();
}

}  // namespace

void Figure::add(const Panel& panel, double x, double y, double width, double height) {
    const double left = x + 55.0;
    const double right = x + width - 10.0;
    const double top = y + 25.0;
    const double bottom = y + height - 40.0;
    const Range xr = panel.x_range.value_or(data_range(panel, true));
    const Range yr = panel.y_range.value_or(data_range(panel, false));
    auto px = [&](double v) { return left + (v - xr.lo) / (xr.hi - xr.lo) * (right - left); };
    auto py = [&](double v) { return bottom - (v - yr.lo) / (yr.hi - yr.lo) * (bottom - top); };
    auto clamp_x = [&](double v) { return std::clamp(px(v), left, right); };
    auto clamp_y = [&](double v) { return std::clamp(py(v), top, bottom); };

    std::ostringstream out;
    out << std::setprecision(6);
    out << "<g>\n";
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << right - left
        << "\" height=\"" << bottom - top << "\" fill=\"white\" stroke=\"black\"/>\n";
    const std::vector<double> x_ticks = ticks(xr);
    const std::vector<double> y_ticks = ticks(yr);
    for (double t : x_ticks) {
        out << "<line x1=\"" << px(t) << "\" y1=\"" << bottom << "\" x2=\"" << px(t) << "\" y2=\""
            << bottom + 4 << "\" stroke=\"black\"/>";
        out << "<text x=\"" << px(t) << "\" y=\"" << bottom + 16
            << "\" font-size=\"10\" text-anchor=\"middle\">" << tick_label(t, x_ticks) << "</text>\n";
    }
    for (double t : y_ticks) {
        out << "<line x1=\"" << left - 4 << "\" y1=\"" << py(t) << "\" x2=\"" << left << "\" y2=\""
            << py(t) << "\" stroke=\"black\"/>";
        out << "<text x=\"" << left - 6 << "\" y=\"" << py(t) + 3
            << "\" font-size=\"10\" text-anchor=\"end\">" << tick_label(t, y_ticks) << "</text>\n";
    }
    out << "<text x=\"" << (left + right) / 2 << "\" y=\"" << y + 15
        << "\" font-size=\"12\" text-anchor=\"middle\">" << escape(panel.title) << "</text>\n";
    out << "<text x=\"" << (left + right) / 2 << "\" y=\"" << bottom + 32
        << "\" font-size=\"11\" text-anchor=\"middle\">" << escape(panel.x_label) << "</text>\n";
    out << "<text transform=\"translate(" << x + 14 << ',' << (top + bottom) / 2
        << ") rotate(-90)\" font-size=\"11\" text-anchor=\"middle\">" << escape(panel.y_label)
        << "</text>\n";

    for (double v : panel.dashed_x) {
        out << "<line x1=\"" << clamp_x(v) << "\" y1=\"" << top << "\" x2=\"" << clamp_x(v)
            << "\" y2=\"" << bottom << "\" stroke=\"gray\" stroke-dasharray=\"4,3\"/>\n";
    }

    double legend_y = top + 14;
    for (const Series& s : panel.series) {
        const std::size_t count = std::min(s.x.size(), s.y.size());
        if (s.style == Style::bars) {
            const double bar = count > 1 ? std::abs(px(s.x[1]) - px(s.x[0])) * 0.8 : 4.0;
            for (std::size_t i = 0; i < count; ++i) {
                const double h = clamp_y(yr.lo) - clamp_y(s.y[i]);
                out << "<rect x=\"" << clamp_x(s.x[i]) - bar / 2 << "\" y=\"" << clamp_y(s.y[i])
                    << "\" width=\"" << bar << "\" height=\"" << std::max(h, 0.0) << "\" fill=\""
                    << s.color << "\" fill-opacity=\"0.5\"/>\n";
            }
        } else if (s.style == Style::markers) {
            for (std::size_t i = 0; i < count; ++i) {
                out << "<circle cx=\"" << clamp_x(s.x[i]) << "\" cy=\"" << clamp_y(s.y[i])
                    << "\" r=\"2.5\" fill=\"none\" stroke=\"" << s.color << "\"/>\n";
            }
        } else if (count > 0) {
            out << "<polyline fill=\"none\" stroke=\"" << s.color
                << "\" stroke-width=\"1.2\" points=\"";
            for (std::size_t i = 0; i < count; ++i) {
                if (s.style == Style::step && i > 0) {
                    out << clamp_x(s.x[i]) << ',' << clamp_y(s.y[i - 1]) << ' ';
                }
                out << clamp_x(s.x[i]) << ',' << clamp_y(s.y[i]) << ' ';
            }
            out << "\"/>\n";
        }
        if (!s.label.empty()) {
            out << "<text x=\"" << right - 6 << "\" y=\"" << legend_y << "\" font-size=\"10\" fill=\""
                << s.color << "\" text-anchor=\"end\">" << escape(s.label) << "</text>\n";
            legend_y += 13;
        }
    }
    out << "</g>\n";
    body_ += out.str();
}

std::string Figure::str() const {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    if (!comment_.empty()) out << "<!-- " << comment_ << " -->\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\""
        << height_ << "\" viewBox=\"0 0 " << width_ << ' ' << height_ << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << body_;
    out << "</svg>\n";
    return out.str();
}

}  // namespace burstkit::svg
