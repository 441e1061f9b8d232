#include <bsgeom/svg.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bsgeom::svg {

namespace {

struct Canvas {
    double x0, x1, y0, y1;  // world box (y up)
    double w = 640, h = 480;

    double px(double x) const { return (x - x0) / (x1 - x0) * w; }
    double py(double y) const { return h - (y - y0) / (y1 - y0) * h; }
};

void line(std::ostringstream& os, const Canvas& c, double ax, double ay, double bx, double by,
          const char* stroke, double width = 1.0) {
    os << "<line x1=\"" << c.px(ax) << "\" y1=\"" << c.py(ay) << "\" x2=\"" << c.px(bx)
       << "\" y2=\"" << c.py(by) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width
       << "\"/>\n";
}

} // namespace

std::string leaf_picture(long n, double x, double y) {
    if (x > y) std::swap(x, y);
    const double r = (y - x) / 2.0;
    const double top = std::max({static_cast<double>(n) * 1.3, 2.0 * r, 1.5});
    Canvas c{x - r, y + r, 0.0, top};

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << c.w << "\" height=\"" << c.h
       << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // horostrip band 1 <= y <= n
    os << "<rect x=\"0\" y=\"" << c.py(static_cast<double>(n)) << "\" width=\"" << c.w
       << "\" height=\"" << (c.py(1.0) - c.py(static_cast<double>(n)))
       << "\" fill=\"#e8f0fe\"/>\n";
    line(os, c, c.x0, 1.0, c.x1, 1.0, "#7790c0");
    line(os, c, c.x0, static_cast<double>(n), c.x1, static_cast<double>(n), "#7790c0");
    line(os, c, c.x0, 0.0, c.x1, 0.0, "black", 1.5);

    // ideal triangle (x, y, +infinity): two vertical sides and a semicircle
    line(os, c, x, 0.0, x, top, "#c0392b", 1.5);
    line(os, c, y, 0.0, y, top, "#c0392b", 1.5);
    os << "<path d=\"M " << c.px(x) << ' ' << c.py(0) << " A " << (c.px(y) - c.px(x)) / 2.0 << ' '
       << (c.py(0) - c.py(r)) << " 0 0 1 " << c.px(y) << ' ' << c.py(0)
       << "\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\"/>\n";

    // barycenter
    const double bx = (x + y) / 2.0;
    const double by = std::sqrt(3.0) / 2.0 * (y - x);
    os << "<circle cx=\"" << c.px(bx) << "\" cy=\"" << c.py(by)
       << "\" r=\"4\" fill=\"#1a7f37\"/>\n";
    os << "</svg>\n";
    return os.str();
}

namespace {

void tree_rec(std::ostringstream& os, const Canvas& c, const nadic::Clone& v, int depth,
              double xlo, double xhi, double ylevel) {
    const double xm = (xlo + xhi) / 2.0;
    if (depth > 0) {
        const auto ch = v.children();
        const double w = (xhi - xlo) / static_cast<double>(ch.size());
        for (size_t i = 0; i < ch.size(); ++i) {
            const double cx = xlo + w * (static_cast<double>(i) + 0.5);
            line(os, c, xm, ylevel, cx, ylevel - 1.0, "#555");
            tree_rec(os, c, ch[i], depth - 1, xlo + w * static_cast<double>(i),
                     xlo + w * (static_cast<double>(i) + 1.0), ylevel - 1.0);
        }
    }
    os << "<circle cx=\"" << c.px(xm) << "\" cy=\"" << c.py(ylevel)
       << "\" r=\"3\" fill=\"#1f3a93\"/>\n";
}

} // namespace

std::string tree_picture(const nadic::Clone& root, int depth) {
    Canvas c{0.0, 1.0, -static_cast<double>(depth) - 0.5, 0.5};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << c.w << "\" height=\"" << c.h
       << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    tree_rec(os, c, root, depth, 0.0, 1.0, 0.0);
    os << "</svg>\n";
    return os.str();
}

} // namespace bsgeom::svg
