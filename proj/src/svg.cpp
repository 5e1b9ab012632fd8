#include "curvelab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "curvelab/errors.hpp"

namespace curvelab::svg {

Projection projection_from_string(const std::string& s) {
    if (s == "xy") return Projection::XY;
    if (s == "xz") return Projection::XZ;
    if (s == "yz") return Projection::YZ;
    if (s == "iso") return Projection::Iso;
    throw SpecError("projection must be one of xy, xz, yz, iso (got '" + s + "')");
}

const char* to_string(Projection p) {
    switch (p) {
        case Projection::XY: return "xy";
        case Projection::XZ: return "xz";
        case Projection::YZ: return "yz";
        case Projection::Iso: return "iso";
    }
    return "?";
}

Point2 project(const Vec3& p, Projection proj) {
    switch (proj) {
        case Projection::XY: return {p.x, p.y};
        case Projection::XZ: return {p.x, p.z};
        case Projection::YZ: return {p.y, p.z};
        case Projection::Iso:
            // orthographic basis perpendicular to (1,1,1)/sqrt(3)
            return {(p.x - p.y) / std::sqrt(2.0), (p.x + p.y - 2.0 * p.z) / std::sqrt(6.0)};
    }
    return {};
}

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

std::string render_polyline(const std::vector<Vec3>& points, Projection proj,
                            const std::string& title) {
    if (points.size() < 2) {
        throw SpecError("plot needs at least two samples");
    }
    std::vector<Point2> pts;
    pts.reserve(points.size());
    for (const Vec3& p : points) {
        if (!finite(p)) {
            throw NonFiniteError("plot input contains a non-finite sample");
        }
        pts.push_back(project(p, proj));
    }
    double ulo = pts[0].u, uhi = pts[0].u, vlo = pts[0].v, vhi = pts[0].v;
    for (const Point2& p : pts) {
        ulo = std::min(ulo, p.u);
        uhi = std::max(uhi, p.u);
        vlo = std::min(vlo, p.v);
        vhi = std::max(vhi, p.v);
    }
    double du = uhi - ulo, dv = vhi - vlo;
    if (du <= 0.0) du = 1.0;
    if (dv <= 0.0) dv = 1.0;
    const double mu = 0.05 * du, mv = 0.05 * dv;

    // SVG y runs downward; flip v.
    const double min_x = ulo - mu, min_y = -(vhi + mv);
    const double width = du + 2.0 * mu, height = dv + 2.0 * mv;
    const double stroke = 0.004 * std::max(width, height);
    const double font = 0.035 * std::max(width, height);

    std::string out;
    out.reserve(64 * points.size() + 2048);
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" + num(min_x) +
           " " + num(min_y) + " " + num(width) + " " + num(height) + "\">\n";
    out += "  <title>" + title + "</title>\n";
    // boundary axes along the data extent
    out += "  <g stroke=\"#999999\" stroke-width=\"" + num(0.5 * stroke) + "\" fill=\"none\">\n";
    out += "    <line x1=\"" + num(ulo) + "\" y1=\"" + num(-vlo) + "\" x2=\"" + num(uhi) +
           "\" y2=\"" + num(-vlo) + "\"/>\n";
    out += "    <line x1=\"" + num(ulo) + "\" y1=\"" + num(-vlo) + "\" x2=\"" + num(ulo) +
           "\" y2=\"" + num(-vhi) + "\"/>\n";
    out += "  </g>\n";
    out += "  <g font-family=\"sans-serif\" font-size=\"" + num(font) + "\" fill=\"#555555\">\n";
    out += "    <text x=\"" + num(ulo) + "\" y=\"" + num(-vlo + 1.5 * font) + "\">" + num(ulo) +
           "</text>\n";
    out += "    <text x=\"" + num(uhi - 2.0 * font) + "\" y=\"" + num(-vlo + 1.5 * font) + "\">" +
           num(uhi) + "</text>\n";
    out += "    <text x=\"" + num(ulo) + "\" y=\"" + num(-vhi - 0.5 * font) + "\">" + num(vhi) +
           "</text>\n";
    out += "    <text x=\"" + num(ulo + 0.25 * font) + "\" y=\"" + num(-vhi + 2.0 * font) +
           "\">" + title + "</text>\n";
    out += "  </g>\n";
    out += "  <polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"" + num(stroke) +
           "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) out += ' ';
        out += num(pts[i].u);
        out += ',';
        out += num(-pts[i].v);
    }
    out += "\"/>\n";
    out += "</svg>\n";
    return out;
}

}  // namespace curvelab::svg
