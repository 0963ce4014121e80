#include "hrcp/svg.hpp"

#include <ostream>
#include <stdexcept>

#include "hrcp/format.hpp"

namespace hrcp {

namespace {

constexpr int kWidth = 800;
constexpr int kHeight = 600;

const char* const kPalette[8] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                 "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

struct Viewport {
    double x0, y0, sx, sy;  // data-to-pixel affine map (y flipped)

    std::string px(double x) const { return format_fixed((x - x0) * sx, 2); }
    std::string py(double y) const { return format_fixed(kHeight - (y - y0) * sy, 2); }
};

Viewport fit_viewport(const Instance& inst) {
    double lo_x = inst.lo[0], hi_x = inst.hi[0];
    double lo_y = inst.lo[1], hi_y = inst.hi[1];
    const double pad_x = (hi_x - lo_x) > 0.0 ? 0.05 * (hi_x - lo_x) : 0.5;
    const double pad_y = (hi_y - lo_y) > 0.0 ? 0.05 * (hi_y - lo_y) : 0.5;
    lo_x -= pad_x;
    hi_x += pad_x;
    lo_y -= pad_y;
    hi_y += pad_y;
    return Viewport{lo_x, lo_y, kWidth / (hi_x - lo_x), kHeight / (hi_y - lo_y)};
}

}  // namespace

void plot_svg(const Instance& instance, const Clustering* clustering, std::ostream& out) {
    if (instance.d != 2) throw std::invalid_argument("plotting supports 2-D instances only");
    const Viewport view = fit_viewport(instance);

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    out << "  <rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";

    std::vector<int> cluster_of(instance.n, -1);
    if (clustering) {
        for (size_t c = 0; c < clustering->members.size(); ++c) {
            const auto& box = clustering->boxes[c];
            if (clustering->members[c].empty() || !box) continue;
            for (int i : clustering->members[c])
                if (i >= 0 && i < instance.n) cluster_of[i] = static_cast<int>(c);
            const char* color = kPalette[c % 8];
            // Rectangle corners: the box's (l, r) in data space, y flipped.
            out << "  <rect x=\"" << view.px(box->l[0]) << "\" y=\"" << view.py(box->r[1])
                << "\" width=\"" << format_fixed((box->r[0] - box->l[0]) * view.sx, 2)
                << "\" height=\"" << format_fixed((box->r[1] - box->l[1]) * view.sy, 2)
                << "\" fill=\"" << color << "\" fill-opacity=\"0.15\" stroke=\"" << color
                << "\" stroke-width=\"1.5\"/>\n";
        }
    }

    for (int i = 0; i < instance.n; ++i) {
        const char* color = cluster_of[i] >= 0 ? kPalette[cluster_of[i] % 8] : "#333333";
        out << "  <circle cx=\"" << view.px(instance.coord(i, 0)) << "\" cy=\""
            << view.py(instance.coord(i, 1)) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    out << "</svg>\n";
}

}  // namespace hrcp
