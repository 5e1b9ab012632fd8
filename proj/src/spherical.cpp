#include "curvelab/spherical.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "curvelab/errors.hpp"

namespace curvelab::spherical {

using frenet::detail::frame_at_unchecked;

const char* to_string(Which w) {
    switch (w) {
        case Which::T: return "T";
        case Which::N: return "N";
        case Which::B: return "B";
        case Which::C: return "C";
    }
    return "?";
}

Which which_from_string(const std::string& s) {
    if (s == "T") return Which::T;
    if (s == "N") return Which::N;
    if (s == "B") return Which::B;
    if (s == "C") return Which::C;
    throw SpecError("indicatrix selector must be one of T, N, B, C (got '" + s + "')");
}

namespace {

constexpr double kDegenerateWeight = 1e-12;

template <typename F>
auto fd4(const F& f, double x, double h) {
    return (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) * (1.0 / (12.0 * h));
}

}  // namespace

// ---------------------------------------------------------------------------
// SphericalEvaluator defaults

SabbanSample SphericalEvaluator::sabban(double sigma) const {
    const double span = sigma_hi() - sigma_lo();
    const double h = 1e-5 * (span > 0.0 ? span : 1.0);
    SabbanSample s;
    s.sigma = sigma;
    s.gamma = position(sigma);
    s.tvec = tangent(sigma);
    s.side = cross(s.gamma, s.tvec);
    const Vec3 dt = fd4([this](double u) { return tangent(u); }, sigma, h);
    s.kappa_g = det3(s.gamma, s.tvec, dt);
    return s;
}

std::vector<Vec3> SphericalEvaluator::sample_positions(int n) const {
    std::vector<Vec3> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double sigma = sigma_lo() + (sigma_hi() - sigma_lo()) * i / (n - 1);
        pts.push_back(position(sigma));
    }
    return pts;
}

SabbanSample sabban_frame(const SphericalEvaluator& sc, double sigma) { return sc.sabban(sigma); }

// ---------------------------------------------------------------------------
// Indicatrix

Indicatrix::Indicatrix(curve::CurveDef source, Which which, int n, numerics::QuadConfig cfg)
    : source_(std::move(source)), which_(which), cfg_(cfg) {
    if (n < 2) {
        throw std::invalid_argument("Indicatrix: table needs n >= 2");
    }
    fd_step_ = 1e-5 * source_.span();

    // A constant image has no arclength to pull back. The Darboux image is
    // evaluated through one finite-difference level, whose noise floor sits
    // above the 1e-12 weight cut, so constancy is tested on the point values.
    const int probes = std::max(n, 33);
    if (which_ == Which::C) {
        const Vec3 c0 = point_at(source_.t_lo);
        double spread = 0.0;
        for (int i = 0; i < probes; ++i) {
            const double t = source_.t_lo + source_.span() * i / (probes - 1);
            spread = std::max(spread, norm(point_at(t) - c0));
        }
        if (spread <= kDegenerateWeight) {
            throw DegenerateIndicatrixError("Darboux image is a single point (spread " +
                                            std::to_string(spread) + ")");
        }
    } else {
        double max_weight = 0.0;
        for (int i = 0; i < probes; ++i) {
            const double t = source_.t_lo + source_.span() * i / (probes - 1);
            max_weight = std::max(max_weight, weight_at(t));
        }
        if (max_weight <= kDegenerateWeight) {
            throw DegenerateIndicatrixError(std::string(to_string(which_)) +
                                            " image is a single point (max arclength integrand " +
                                            std::to_string(max_weight) + ")");
        }
    }

    sigma_of_t_ = numerics::cumulative(
        [this](double t) {
            return weight_at(t) * norm(curve::detail::evaluate_unchecked(source_, t).d1);
        },
        source_.t_lo, source_.t_hi, n, cfg_);
}

Vec3 Indicatrix::point_at(double t) const {
    if (which_ == Which::T) {
        const curve::CurveSample s = curve::detail::evaluate_unchecked(source_, t);
        const double v = norm(s.d1);
        if (v < frenet::kSingularSpeed) {
            throw SingularSpeedError("speed below 1e-9 at t = " + std::to_string(t));
        }
        return s.d1 / v;
    }
    const frenet::detail::Frame f = frame_at_unchecked(source_, t);
    switch (which_) {
        case Which::N: return f.N;
        case Which::B: return f.B;
        case Which::C: {
            const Vec3 w = f.tau * f.T + f.kappa * f.B;
            return w / norm(w);
        }
        default: return f.T;
    }
}

Vec3 Indicatrix::velocity_at(double t) const {
    if (which_ == Which::C) {
        const Vec3 dgamma_dt = fd4([this](double u) { return point_at(u); }, t, fd_step_);
        const double v = norm(curve::detail::evaluate_unchecked(source_, t).d1);
        return dgamma_dt / v;
    }
    const frenet::detail::Frame f = frame_at_unchecked(source_, t);
    switch (which_) {
        case Which::T: return f.kappa * f.N;
        case Which::N: return -f.kappa * f.T + f.tau * f.B;
        case Which::B: return (-f.tau) * f.N;
        default: return f.N;
    }
}

double Indicatrix::weight_at(double t) const {
    if (which_ == Which::T) {
        return frenet::curvature(source_, t);
    }
    if (which_ == Which::C) {
        return norm(velocity_at(t));
    }
    const frenet::detail::Frame f = frame_at_unchecked(source_, t);
    if (which_ == Which::N) {
        return std::sqrt(f.kappa * f.kappa + f.tau * f.tau);
    }
    return std::abs(f.tau);
}

Vec3 Indicatrix::tangent_at(double t) const {
    const Vec3 vel = velocity_at(t);
    const double w = norm(vel);
    if (w < kDegenerateWeight) {
        throw DegenerateIndicatrixError("image arclength stalls at t = " + std::to_string(t));
    }
    return vel / w;
}

double Indicatrix::sigma_at(double t) const {
    const auto& g = sigma_of_t_.grid;
    const double slack = 1e-9 * (1.0 + source_.span());
    if (t < g.front() - slack || t > g.back() + slack) {
        throw OutOfRangeError("parameter outside the tabulated domain");
    }
    t = std::clamp(t, g.front(), g.back());
    auto it = std::upper_bound(g.begin(), g.end(), t);
    std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(it - g.begin()), g.size() - 1);
    if (hi == 0) hi = 1;
    const std::size_t lo = hi - 1;
    if (t == g[lo]) return sigma_of_t_.values[lo];
    return sigma_of_t_.values[lo] +
           numerics::integrate(
               [this](double u) {
                   return weight_at(u) * norm(curve::detail::evaluate_unchecked(source_, u).d1);
               },
               g[lo], t, cfg_);
}

double Indicatrix::param_at(double sigma) const {
    return numerics::invert_monotone(
        sigma_of_t_, sigma,
        [this](double u) {
            return weight_at(u) * norm(curve::detail::evaluate_unchecked(source_, u).d1);
        },
        cfg_);
}

SabbanSample Indicatrix::sabban_at(double t) const {
    SabbanSample s;
    s.sigma = sigma_at(t);
    s.gamma = point_at(t);
    s.tvec = tangent_at(t);
    s.side = cross(s.gamma, s.tvec);
    // dt/dsigma by parameter-space differences scaled with dsigma/dt.
    const Vec3 dt_dt = fd4([this](double u) { return tangent_at(u); }, t, fd_step_);
    const double dsigma_dt = weight_at(t) * norm(curve::detail::evaluate_unchecked(source_, t).d1);
    s.kappa_g = det3(s.gamma, s.tvec, dt_dt / dsigma_dt);
    return s;
}

SabbanSample Indicatrix::sabban(double sigma) const {
    SabbanSample s = sabban_at(param_at(sigma));
    s.sigma = sigma;
    return s;
}

std::vector<Vec3> Indicatrix::sample_positions(int n) const {
    std::vector<Vec3> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double t = source_.t_lo + source_.span() * i / (n - 1);
        pts.push_back(point_at(t));
    }
    return pts;
}

Indicatrix indicatrix(const curve::CurveDef& c, Which which, int n,
                      const numerics::QuadConfig& cfg) {
    return Indicatrix(c, which, n, cfg);
}

// ---------------------------------------------------------------------------
// Circle fit

namespace {

/// Eigen-decomposition of a symmetric 3x3 matrix by cyclic Jacobi rotations.
/// Columns of v are the eigenvectors of the returned eigenvalues.
void jacobi_eigen(std::array<std::array<double, 3>, 3> m, std::array<double, 3>& eig,
                  std::array<std::array<double, 3>, 3>& v) {
    v = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = std::abs(m[0][1]) + std::abs(m[0][2]) + std::abs(m[1][2]);
        if (off < 1e-300) break;
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                if (std::abs(m[p][q]) < 1e-300) continue;
                const double theta = 0.5 * (m[q][q] - m[p][p]) / m[p][q];
                const double sign = theta >= 0.0 ? 1.0 : -1.0;
                const double t = sign / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < 3; ++k) {
                    const double mkp = m[k][p], mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for (int k = 0; k < 3; ++k) {
                    const double mpk = m[p][k], mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for (int k = 0; k < 3; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    eig = {m[0][0], m[1][1], m[2][2]};
}

}  // namespace

CircleFit fit_circle_points(const std::vector<Vec3>& points) {
    if (points.size() < 4) {
        throw std::invalid_argument("fit_circle_points: needs at least 4 samples");
    }
    Vec3 mean{};
    for (const Vec3& p : points) mean += p;
    mean = mean / static_cast<double>(points.size());

    std::array<std::array<double, 3>, 3> m{};
    for (const Vec3& p : points) {
        const Vec3 d = p - mean;
        const double comp[3] = {d.x, d.y, d.z};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) m[i][j] += comp[i] * comp[j];
        }
    }
    for (auto& row : m) {
        for (double& x : row) x /= static_cast<double>(points.size());
    }

    std::array<double, 3> eig{};
    std::array<std::array<double, 3>, 3> vec{};
    jacobi_eigen(m, eig, vec);

    int order[3] = {0, 1, 2};
    std::sort(order, order + 3, [&eig](int a, int b) { return eig[a] > eig[b]; });
    const double lam_max = eig[order[0]];
    const double lam_mid = eig[order[1]];
    if (lam_mid <= 1e-20 * std::max(1.0, lam_max)) {
        throw DegenerateFitError("samples span fewer than two dimensions");
    }

    const int k = order[2];
    Vec3 axis{vec[0][k], vec[1][k], vec[2][k]};
    axis = normalized(axis);
    const double eps = 1e-12;
    if (axis.z < -eps || (std::abs(axis.z) <= eps &&
                          (axis.y < -eps || (std::abs(axis.y) <= eps && axis.x < 0.0)))) {
        axis = -axis;
    }

    CircleFit fit;
    fit.axis = axis;
    double sum = 0.0;
    for (const Vec3& p : points) sum += dot(p, axis);
    fit.cos_angle = sum / static_cast<double>(points.size());
    double sq = 0.0;
    for (const Vec3& p : points) {
        const double r = dot(p, axis) - fit.cos_angle;
        sq += r * r;
    }
    fit.rms_residual = std::sqrt(sq / static_cast<double>(points.size()));
    return fit;
}

CircleFit circle_fit(const SphericalEvaluator& sc, int n) {
    if (n < 4) {
        throw std::invalid_argument("circle_fit: needs n >= 4");
    }
    return fit_circle_points(sc.sample_positions(n));
}

Vec3 darboux_tangent_reference(const curve::CurveDef& c, double t) {
    const frenet::detail::Frame f = frame_at_unchecked(c, t);
    const double rho = std::sqrt(f.kappa * f.kappa + f.tau * f.tau);
    return (f.kappa * f.T - f.tau * f.B) / rho;
}

}  // namespace curvelab::spherical
