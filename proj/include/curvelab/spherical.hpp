#ifndef CURVELAB_SPHERICAL_HPP
#define CURVELAB_SPHERICAL_HPP

#include <functional>
#include <vector>

#include "curvelab/curve.hpp"
#include "curvelab/frenet.hpp"
#include "curvelab/numerics.hpp"
#include "curvelab/vec3.hpp"

namespace curvelab::spherical {

enum class Which { T, N, B, C };

const char* to_string(Which w);
Which which_from_string(const std::string& s);

/// Sabban frame {gamma, t, s = gamma x t} of a unit-speed spherical curve at
/// arclength sigma, with geodesic curvature kappa_g = det(gamma, t, t').
/// The frame vector s is called "side" here to avoid clashing with arclength.
struct SabbanSample {
    double sigma = 0.0;
    Vec3 gamma;
    Vec3 tvec;
    Vec3 side;
    double kappa_g = 0.0;
};

/// A curve on the unit sphere presented in its own arclength parameter.
class SphericalEvaluator {
public:
    virtual ~SphericalEvaluator() = default;

    virtual double sigma_lo() const = 0;
    virtual double sigma_hi() const = 0;
    virtual Vec3 position(double sigma) const = 0;
    virtual Vec3 tangent(double sigma) const = 0;

    /// Sabban frame at sigma; the default takes dt/dsigma by 4th-order
    /// central differences in sigma.
    virtual SabbanSample sabban(double sigma) const;

    /// Positions used by circle_fit; the default samples sigma uniformly.
    virtual std::vector<Vec3> sample_positions(int n) const;
};

/// Spherical image of a frame vector (T, N, B) or of the normalized Darboux
/// vector C = W/||W||, evaluated through the source curve's jets. The pulled
/// back arclength sigma(t) is tabulated on n grid points at construction.
/// Construction throws DegenerateIndicatrixError when the image is a point
/// (arclength integrand vanishes across the whole domain).
class Indicatrix final : public SphericalEvaluator {
public:
    Indicatrix(curve::CurveDef source, Which which, int n = 129,
               numerics::QuadConfig cfg = {});

    const curve::CurveDef& source() const { return source_; }
    Which which() const { return which_; }
    const numerics::CumulativeTable& sigma_table() const { return sigma_of_t_; }

    // Access in the source parameter (the cheap direction).
    Vec3 point_at(double t) const;
    /// d(gamma)/ds in the source arclength; finite differences only where the
    /// jets cannot reach (the C image needs kappa', tau').
    Vec3 velocity_at(double t) const;
    /// Arclength weight dsigma/ds (= kappa, sqrt(kappa^2+tau^2), |tau| or
    /// ||C'|| depending on the image).
    double weight_at(double t) const;
    /// Unit tangent of the image; throws DegenerateIndicatrixError where the
    /// weight is below 1e-12.
    Vec3 tangent_at(double t) const;
    double sigma_at(double t) const;
    double param_at(double sigma) const;
    SabbanSample sabban_at(double t) const;

    // SphericalEvaluator interface (sigma-parametrized view).
    double sigma_lo() const override { return 0.0; }
    double sigma_hi() const override { return sigma_of_t_.total(); }
    Vec3 position(double sigma) const override { return point_at(param_at(sigma)); }
    Vec3 tangent(double sigma) const override { return tangent_at(param_at(sigma)); }
    SabbanSample sabban(double sigma) const override;
    std::vector<Vec3> sample_positions(int n) const override;

private:
    curve::CurveDef source_;
    Which which_;
    numerics::QuadConfig cfg_;
    numerics::CumulativeTable sigma_of_t_;
    double fd_step_ = 0.0;
};

/// Free-function constructor wrapper.
Indicatrix indicatrix(const curve::CurveDef& c, Which which, int n = 129,
                      const numerics::QuadConfig& cfg = {});

SabbanSample sabban_frame(const SphericalEvaluator& sc, double sigma);

/// Unit-speed spherical curve given in closed form, e.g. a great circle.
class ParametricSphereCurve final : public SphericalEvaluator {
public:
    ParametricSphereCurve(std::function<Vec3(double)> position,
                          std::function<Vec3(double)> tangent, double sigma_lo,
                          double sigma_hi)
        : pos_(std::move(position)), tan_(std::move(tangent)), lo_(sigma_lo), hi_(sigma_hi) {}

    double sigma_lo() const override { return lo_; }
    double sigma_hi() const override { return hi_; }
    Vec3 position(double sigma) const override { return pos_(sigma); }
    Vec3 tangent(double sigma) const override { return tan_(sigma); }

private:
    std::function<Vec3(double)> pos_;
    std::function<Vec3(double)> tan_;
    double lo_, hi_;
};

/// Best-fit circle on the sphere: the axis is the smallest principal axis of
/// the centered second-moment matrix of the samples, oriented to non-negative
/// z (ties broken towards non-negative y, then x).
struct CircleFit {
    Vec3 axis;
    double cos_angle = 0.0;
    double rms_residual = 0.0;
};

CircleFit circle_fit(const SphericalEvaluator& sc, int n);
CircleFit fit_circle_points(const std::vector<Vec3>& points);

/// Unit direction of dC/dsigma up to sign: (kappa T - tau B)/sqrt(kappa^2+tau^2).
/// The measured tangent of the C image equals sign((tau/kappa)') times this.
Vec3 darboux_tangent_reference(const curve::CurveDef& c, double t);

}  // namespace curvelab::spherical

#endif
