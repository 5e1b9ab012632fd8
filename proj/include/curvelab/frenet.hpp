#ifndef CURVELAB_FRENET_HPP
#define CURVELAB_FRENET_HPP

#include <optional>
#include <string>
#include <vector>

#include "curvelab/curve.hpp"
#include "curvelab/vec3.hpp"

namespace curvelab::frenet {

/// Frenet data at one parameter value. B = T x N by construction and
/// W = tau T + kappa B (the frame's angular velocity).
struct FrenetSample {
    double t = 0.0;
    double s = 0.0;  // arclength from the domain start
    Vec3 T, N, B;
    double kappa = 0.0;
    double tau = 0.0;
    Vec3 W;
};

enum class HelixKind { None, General, Circular, Slant, Planar };

const char* to_string(HelixKind k);

struct HelixReport {
    HelixKind kind = HelixKind::None;
    double ratio_mean = 0.0;   // statistics of kappa/tau (NaN where undefined)
    double ratio_spread = 0.0;
    double psi_mean = 0.0;
    double psi_spread = 0.0;
    std::optional<Vec3> axis;  // mean Darboux direction, circular/general only
    double kappa_mean = 0.0;
    double kappa_spread = 0.0;
    double tau_mean = 0.0;
    double tau_spread = 0.0;
    int failed_samples = 0;    // samples where the frame was undefined
    std::string failure_note;
};

/// Speed below this is treated as a reparametrization singularity.
inline constexpr double kSingularSpeed = 1e-9;
/// ||d1 x d2|| below this marks an inflection: frame undefined.
inline constexpr double kInflectionTol = 1e-12;

/// Full Frenet apparatus at t via the general-parameter formulas
/// kappa = ||g' x g''|| / ||g'||^3, tau = det(g', g'', g''') / ||g' x g''||^2.
/// Throws SingularSpeedError / InflectionPointError below the thresholds.
FrenetSample frenet_apparatus(const curve::CurveDef& c, double t,
                              const numerics::QuadConfig& cfg = {});

/// Curvature alone; defined at inflections (returns 0 there).
double curvature(const curve::CurveDef& c, double t);

/// Max norm of the three Frenet equation residuals at t, with frame
/// derivatives taken by central differences of step h in the parameter and
/// scaled to arclength. O(h^2) for smooth curves.
double frenet_ode_residual(const curve::CurveDef& c, double t, double h,
                           const numerics::QuadConfig& cfg = {});

/// Slant-helix function psi = kappa^2 (tau/kappa)' / (kappa^2 + tau^2)^{3/2},
/// with (tau/kappa)' taken in arclength by 4th-order central differences.
double slant_psi(const curve::CurveDef& c, double t);

/// Sample n interior points and classify: planar if tau vanishes, circular if
/// kappa and tau are both constant, general if kappa/tau is constant (Lancret),
/// slant if psi is constant; none otherwise. Spreads are max - min compared
/// against tol * (1 + |mean|). Samples with undefined frames are counted in
/// the report; if every sample fails the first error propagates.
HelixReport classify_helix(const curve::CurveDef& c, int n, double tol);

/// Classification core shared with constructed curves (psi may be empty,
/// which disables the slant verdict).
HelixReport classify_samples(const std::vector<double>& kappas, const std::vector<double>& taus,
                             const std::vector<double>& psis, double tol);

namespace detail {

struct Frame {
    Vec3 T, N, B;
    double kappa = 0.0;
    double tau = 0.0;
    double speed = 0.0;
};

/// Frame from raw derivatives, no domain check, no arclength.
Frame frame_at_unchecked(const curve::CurveDef& c, double t);

/// Principal normal by Gram projection of g'' (cross-check path; B x T is
/// the authoritative one because it stays conditioned near small kappa).
Vec3 normal_by_projection(const curve::CurveDef& c, double t);

}  // namespace detail

}  // namespace curvelab::frenet

#endif
