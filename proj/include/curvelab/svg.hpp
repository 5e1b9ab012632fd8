#ifndef CURVELAB_SVG_HPP
#define CURVELAB_SVG_HPP

#include <string>
#include <vector>

#include "curvelab/vec3.hpp"

namespace curvelab::svg {

enum class Projection { XY, XZ, YZ, Iso };

Projection projection_from_string(const std::string& s);
const char* to_string(Projection p);

/// Project a 3d point to drawing coordinates. The isometric view looks along
/// (1,1,1)/sqrt(3).
struct Point2 {
    double u = 0.0;
    double v = 0.0;
};
Point2 project(const Vec3& p, Projection proj);

/// Standalone SVG 1.1 document: one polyline through the projected samples,
/// boundary axes with extent labels, and a title. The viewBox is fitted to
/// the data with a 5% margin; no timestamps, so output is byte-stable.
std::string render_polyline(const std::vector<Vec3>& points, Projection proj,
                            const std::string& title);

}  // namespace curvelab::svg

#endif
