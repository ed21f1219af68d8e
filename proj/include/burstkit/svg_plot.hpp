#pragma once

// Minimal SVG line/step/bar plots, enough for distributions and trajectories.

#include <optional>
#include <string>
#include <vector>

namespace burstkit::svg {

enum class Style { line, step, bars, markers };

struct Series {
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
    std::string label;
    Style style = Style::line;
};

struct Range {
    double lo = 0.0;
    double hi = 1.0;
};

struct Panel {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    std::optional<Range> x_range;
    std::optional<Range> y_range;
    std::vector<double> dashed_x;  // vertical dashed guide lines
};

class Figure {
public:
    Figure(double width, double height) : width_(width), height_(height) {}

    // Places a panel with its top-left corner at (x, y).
    void add(const Panel& panel, double x, double y, double width, double height);
    // Written as an XML comment at the top of the document.
    void set_comment(std::string comment) { comment_ = std::move(comment); }

    std::string str() const;

private:
    double width_;
    double height_;
    std::string comment_;
    std::string body_;
};

}  // namespace burstkit::svg
