#ifndef CURVELAB_BERTRAND_HPP
#define CURVELAB_BERTRAND_HPP

#include <numbers>
#include <string>
#include <vector>

#include "curvelab/check.hpp"
#include "curvelab/curve.hpp"
#include "curvelab/spherical.hpp"
#include "curvelab/vec3.hpp"

namespace curvelab::bertrand {

/// Constants of the construction
///   curve(sigma) = a Int gamma dsigma + a cot(theta) Int side dsigma + c
/// started at sigma0.
struct BertrandParams {
    double a = 1.0;
    double theta = 0.25 * std::numbers::pi;
    Vec3 c{};
    double sigma0 = 0.0;

    double cot_theta() const { return std::cos(theta) / std::sin(theta); }
};

struct BertrandSample {
    double sigma = 0.0;
    Vec3 position;
    // Sabban data of the spherical source at this sample.
    Vec3 gamma, tvec, side;
    double kappa_g = 0.0;
    // Frenet data of the constructed curve, from its first three sigma
    // derivatives. frame_ok is false where the curvature vanishes.
    bool frame_ok = false;
    double kappa = 0.0;
    double tau = 0.0;
    Vec3 T, N, B;
};

struct ConstructedCurve {
    BertrandParams params;
    std::string source_label;
    std::vector<BertrandSample> samples;

    std::vector<double> kappas(bool defined_only = true) const;
    std::vector<double> taus(bool defined_only = true) const;
};

/// Least-squares constants of A kappa + B tau = 1 over the samples with a
/// defined frame. When the (kappa, tau) rows are collinear the system is
/// rank-deficient: the returned (A, B) is the minimum-norm member of the
/// one-parameter family family_kappa * A + family_tau * B = 1.
struct BertrandFit {
    double A = 0.0;
    double B = 0.0;
    double residual = 0.0;  // max |A kappa_i + B tau_i - 1|
    bool rank_deficient = false;
    double family_kappa = 0.0;
    double family_tau = 0.0;
    int used_samples = 0;
};

/// Generic construction from any unit-speed spherical curve, integrating the
/// position and side vectors component by component with cumulative
/// quadrature. Throws NonUnitInputError if the evaluator leaves the sphere by
/// more than 1e-6.
ConstructedCurve construct_bertrand(const spherical::SphericalEvaluator& gamma,
                                    const BertrandParams& p, int n,
                                    const numerics::QuadConfig& cfg = {});

/// Indicatrix specialization: quadrature runs in the source parameter with
/// the arclength weight dsigma/ds pulled in, so no inversion per node is
/// needed. The side integrand comes from the image's own Sabban frame (B for
/// the T image, C for the N image, sign(tau) T for the B image, and the
/// sign-tracked N direction for the C image).
ConstructedCurve bertrand_from_indicatrix(const curve::CurveDef& c, spherical::Which which,
                                          const BertrandParams& p, int n,
                                          const numerics::QuadConfig& cfg = {});

/// Same, reusing an already-built image.
ConstructedCurve bertrand_from_indicatrix(const spherical::Indicatrix& image,
                                          const BertrandParams& p, int n,
                                          const numerics::QuadConfig& cfg = {});

/// Normal-image construction for sources whose normalized Darboux vector is
/// constant: the partner integral collapses to (sigma - sigma0) times that
/// constant direction, which is integrated in closed form.
ConstructedCurve construct_fixed_darboux(const curve::CurveDef& c, const BertrandParams& p,
                                         int n, const numerics::QuadConfig& cfg = {});

BertrandFit fit_bertrand_condition(const ConstructedCurve& cc);

struct CorollaryReport {
    std::vector<CheckRow> rows;
    bool any_fail() const;
};

/// Run the helix corollaries and the per-image Bertrand-condition checks on
/// one source curve. Premise failures and degenerate images are recorded as
/// rows, not thrown. When the requested theta would drive a construction
/// through an inflection (kappa_g crossing tan theta), the check substitutes
/// a regular theta and says so in the row note.
CorollaryReport verify_corollaries(const curve::CurveDef& c, const BertrandParams& p,
                                   double tol, int n = 512);

/// Max of ||dC/ds|| over sampled points of the normalized Darboux vector;
/// the fixed-direction premise holds when this stays below 1e-9.
double max_darboux_drift(const curve::CurveDef& c, int n = 257);

}  // namespace curvelab::bertrand

#endif
