#ifndef CURVELAB_CURVE_HPP
#define CURVELAB_CURVE_HPP

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "curvelab/expr.hpp"
#include "curvelab/numerics.hpp"
#include "curvelab/vec3.hpp"

namespace curvelab::curve {

/// Parametric space curve given by three component expressions over one
/// shared parameter on a closed interval.
struct CurveDef {
    std::array<expr::Expression, 3> components;
    std::string param = "t";
    double t_lo = 0.0;
    double t_hi = 1.0;
    std::string label;

    double span() const { return t_hi - t_lo; }
};

struct CurveSample {
    double t = 0.0;
    Vec3 p;   // position
    Vec3 d1;  // first parameter derivative
    Vec3 d2;
    Vec3 d3;
};

/// Evaluate position and the first three parameter derivatives at t.
/// t must lie in the curve domain (up to a relative 1e-9 slack).
CurveSample evaluate(const CurveDef& c, double t);

/// Parameter-speed ||d1|| at t.
double speed(const CurveDef& c, double t);

/// Cumulative arclength over the full domain on n grid points.
numerics::CumulativeTable arclength_table(const CurveDef& c, int n,
                                          const numerics::QuadConfig& cfg = {});

/// Built-in curves:
///   "paper-example"          unit-speed reference curve on [0, 2pi]
///   "circular-helix" a b     (a cos t, a sin t, b t) on [0, 2pi]
///   "circle" r               (r cos t, r sin t, 0) on [0, 2pi]
///   "line"                   (t, 0, 0) on [0, 2pi]
/// Omitted parameters default to 1. Unknown names raise UnknownCurveError.
CurveDef catalog(const std::string& name, const std::vector<double>& params = {});

/// Names accepted by catalog(), for help text.
std::vector<std::string> catalog_names();

/// Parse the curve-spec text format: one key = value pair per line, '#'
/// comments. Keys: name, param, x, y, z (quoted strings) and domain
/// (two reals). Throws SpecError with the offending line number.
CurveDef load_curve_spec(std::istream& in);
CurveDef load_curve_spec_file(const std::string& path);

/// Canonical one-line description used for digests and report echoes.
std::string describe(const CurveDef& c);

namespace detail {
/// Evaluation without the domain check. Finite-difference stencils reach a
/// few steps past the domain ends; component expressions are expected to
/// tolerate that (trig/polynomial catalog curves do).
CurveSample evaluate_unchecked(const CurveDef& c, double t);
}  // namespace detail

}  // namespace curvelab::curve

#endif
