#ifndef CURVELAB_CLI_HPP
#define CURVELAB_CLI_HPP

#include <string>

#include "curvelab/bertrand.hpp"
#include "curvelab/curve.hpp"
#include "curvelab/report.hpp"
#include "curvelab/spherical.hpp"
#include "curvelab/svg.hpp"

namespace curvelab::cli {

/// Curve selection: a catalog entry "name" / "name:p1,p2,..." or a curve-spec
/// file. Exactly one must be set.
struct CurveInput {
    std::string catalog;
    std::string spec_file;
};

curve::CurveDef resolve_curve(const CurveInput& in);

/// Report plus the produced file payload (CSV or SVG; possibly empty).
struct CommandResult {
    report::RunReport report;
    std::string artifact;
};

/// Frenet table: CSV (t, s, x, y, z, Tx..Bz, kappa, tau, psi) and the helix
/// classification in the report.
CommandResult cmd_analyze(const CurveInput& in, int samples, double tol);

/// Spherical image table: CSV (sigma, gx, gy, gz, kappa_g) plus a circle-fit
/// summary. Degenerate images yield a SKIP row and a header-only CSV.
CommandResult cmd_indicatrix(const CurveInput& in, spherical::Which which, int samples,
                             double tol);

/// Constructed curve table: CSV (sigma, x, y, z, kappa, tau) plus the fitted
/// Bertrand constants. With theta = pi/2 the partner term vanishes and the
/// fit rows are labeled instead of asserted.
CommandResult cmd_bertrand(const CurveInput& in, spherical::Which which,
                           const bertrand::BertrandParams& params, int samples, double tol);

/// Invariant suites: "frames", "identities", "corollaries" or "all".
CommandResult cmd_verify(const CurveInput& in, const std::string& suite, double tol,
                         const bertrand::BertrandParams& params, int samples);

/// SVG projection of a sampled curve or of columns x,y,z / gx,gy,gz of a CSV
/// produced by the other commands.
CommandResult cmd_plot_curve(const CurveInput& in, svg::Projection proj, int samples);
CommandResult cmd_plot_csv(const std::string& csv_text, svg::Projection proj,
                           const std::string& title);

/// Exit-code contract: 0 all PASS/SKIP, 1 any FAIL, 2 usage or input spec
/// error, 3 numeric domain error.
enum ExitCode { kOk = 0, kCheckFailed = 1, kSpecError = 2, kNumericError = 3 };

}  // namespace curvelab::cli

#endif
