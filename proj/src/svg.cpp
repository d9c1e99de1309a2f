#include "bt/svg.hpp"

#include <iomanip>
#include <sstream>

namespace bt {

namespace {

constexpr double kScale = 60.0;
constexpr double kMargin = 30.0;

double to_double(const Q& q) { return q.convert_to<double>(); }

std::string fmt(double v)
{
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << v;
    return os.str();
}

}  // namespace

std::string polygons_svg(const HodgeDatum& h, const std::vector<NewtonPoint>& polygons)
{
    double width = 2 * kMargin + kScale * h.n;
    double height = 2 * kMargin + kScale * h.d;
    auto px = [&](double x) { return fmt(kMargin + kScale * x); };
    auto py = [&](double y) { return fmt(height - kMargin - kScale * y); };

    NewtonPoint hodge = hodge_polygon(h);
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
       << "\" viewBox=\"0 0 " << fmt(width) << " " << fmt(height) << "\">\n";
    os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // lattice
    for (int x = 0; x <= h.n; ++x)
        for (int y = 0; y <= h.d; ++y)
            os << "  <circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"1.5\" fill=\"#bbb\"/>\n";

    auto polyline = [&](const NewtonPoint& v, const std::string& cls, const std::string& stroke, double w) {
        os << "  <polyline class=\"" << cls << "\" data-slopes=\"" << v.str() << "\" fill=\"none\" stroke=\"" << stroke
           << "\" stroke-width=\"" << fmt(w) << "\" points=\"";
        bool first = true;
        for (const auto& vx : v.vertices()) {
            os << (first ? "" : " ") << px(vx.x) << "," << py(to_double(vx.y));
            first = false;
        }
        os << "\"/>\n";
    };

    for (const auto& v : polygons) {
        if (v == hodge) continue;
        polyline(v, "newton", "#444", 1.2);
    }
    polyline(hodge, "hodge", "#1f4fd1", 3.0);

    for (const auto& v : polygons)
        for (const auto& t : v.turning_points()) {
            bool on = hodge.value_at(t.x) == t.y;
            os << "  <circle class=\"" << (on ? "turning-on-hodge" : "turning-off-hodge") << "\" cx=\"" << px(t.x)
               << "\" cy=\"" << py(to_double(t.y)) << "\" r=\"4\" stroke=\"#c0392b\" stroke-width=\"1.5\" fill=\""
               << (on ? "#c0392b" : "white") << "\"/>\n";
        }
    os << "</svg>\n";
    return os.str();
}

}  // namespace bt
