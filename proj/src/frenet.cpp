#include "curvelab/frenet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "curvelab/errors.hpp"

namespace curvelab::frenet {

namespace detail {

Frame frame_at_unchecked(const curve::CurveDef& c, double t) {
    const curve::CurveSample s = curve::detail::evaluate_unchecked(c, t);
    Frame f;
    f.speed = norm(s.d1);
    if (f.speed < kSingularSpeed) {
        throw SingularSpeedError("speed " + std::to_string(f.speed) + " below 1e-9 at t = " +
                                 std::to_string(t));
    }
    const Vec3 cr = cross(s.d1, s.d2);
    const double ncr = norm(cr);
    if (ncr < kInflectionTol) {
        throw InflectionPointError("||d1 x d2|| = " + std::to_string(ncr) +
                                   " below 1e-12 at t = " + std::to_string(t) +
                                   "; frame undefined");
    }
    f.kappa = ncr / (f.speed * f.speed * f.speed);
    f.tau = det3(s.d1, s.d2, s.d3) / (ncr * ncr);
    f.T = s.d1 / f.speed;
    f.B = cr / ncr;
    f.N = cross(f.B, f.T);
    return f;
}

Vec3 normal_by_projection(const curve::CurveDef& c, double t) {
    const curve::CurveSample s = curve::detail::evaluate_unchecked(c, t);
    const Vec3 T = normalized(s.d1);
    const Vec3 rej = s.d2 - dot(s.d2, T) * T;
    const double n = norm(rej);
    if (n < kInflectionTol) {
        throw InflectionPointError("normal projection degenerate at t = " + std::to_string(t));
    }
    return rej / n;
}

}  // namespace detail

const char* to_string(HelixKind k) {
    switch (k) {
        case HelixKind::None: return "none";
        case HelixKind::General: return "general";
        case HelixKind::Circular: return "circular";
        case HelixKind::Slant: return "slant";
        case HelixKind::Planar: return "planar";
    }
    return "?";
}

FrenetSample frenet_apparatus(const curve::CurveDef& c, double t,
                              const numerics::QuadConfig& cfg) {
    const double slack = 1e-9 * (1.0 + c.span());
    if (t < c.t_lo - slack || t > c.t_hi + slack) {
        throw OutOfRangeError("parameter outside curve domain");
    }
    const detail::Frame f = detail::frame_at_unchecked(c, t);
    FrenetSample out;
    out.t = t;
    out.s = (t > c.t_lo) ? numerics::integrate(
                               [&c](double u) {
                                   return norm(curve::detail::evaluate_unchecked(c, u).d1);
                               },
                               c.t_lo, t, cfg)
                         : 0.0;
    out.T = f.T;
    out.N = f.N;
    out.B = f.B;
    out.kappa = f.kappa;
    out.tau = f.tau;
    out.W = f.tau * f.T + f.kappa * f.B;
    return out;
}

double curvature(const curve::CurveDef& c, double t) {
    const curve::CurveSample s = curve::detail::evaluate_unchecked(c, t);
    const double v = norm(s.d1);
    if (v < kSingularSpeed) {
        throw SingularSpeedError("speed below 1e-9 at t = " + std::to_string(t));
    }
    return norm(cross(s.d1, s.d2)) / (v * v * v);
}

double frenet_ode_residual(const curve::CurveDef& c, double t, double h,
                           const numerics::QuadConfig& cfg) {
    const detail::Frame f0 = detail::frame_at_unchecked(c, t);
    const detail::Frame fp = detail::frame_at_unchecked(c, t + h);
    const detail::Frame fm = detail::frame_at_unchecked(c, t - h);
    const double ds = numerics::integrate(
        [&c](double u) { return norm(curve::detail::evaluate_unchecked(c, u).d1); }, t - h, t + h,
        cfg);
    const Vec3 dT = (fp.T - fm.T) / ds;
    const Vec3 dN = (fp.N - fm.N) / ds;
    const Vec3 dB = (fp.B - fm.B) / ds;
    const double r1 = norm(dT - f0.kappa * f0.N);
    const double r2 = norm(dN + f0.kappa * f0.T - f0.tau * f0.B);
    const double r3 = norm(dB + f0.tau * f0.N);
    return std::max({r1, r2, r3});
}

namespace {

double ratio_tau_kappa(const curve::CurveDef& c, double t) {
    const detail::Frame f = detail::frame_at_unchecked(c, t);
    return f.tau / f.kappa;
}

struct Stats {
    double mean = std::numeric_limits<double>::quiet_NaN();
    double spread = std::numeric_limits<double>::quiet_NaN();
};

Stats stats_of(const std::vector<double>& xs) {
    if (xs.empty()) return {};
    double sum = 0.0;
    double lo = xs.front(), hi = xs.front();
    for (double x : xs) {
        sum += x;
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    return {sum / static_cast<double>(xs.size()), hi - lo};
}

bool constant_within(const Stats& s, double tol) {
    return std::isfinite(s.spread) && std::isfinite(s.mean) &&
           s.spread <= tol * (1.0 + std::abs(s.mean));
}

}  // namespace

double slant_psi(const curve::CurveDef& c, double t) {
    const detail::Frame f = detail::frame_at_unchecked(c, t);
    // 4th-order central difference of tau/kappa in the parameter, scaled to
    // arclength by the local speed. The stencil may poke past the domain ends.
    const double h = 1e-5 * c.span();
    const double gm2 = ratio_tau_kappa(c, t - 2.0 * h);
    const double gm1 = ratio_tau_kappa(c, t - h);
    const double gp1 = ratio_tau_kappa(c, t + h);
    const double gp2 = ratio_tau_kappa(c, t + 2.0 * h);
    const double dg_dt = (-gp2 + 8.0 * gp1 - 8.0 * gm1 + gm2) / (12.0 * h);
    const double dg_ds = dg_dt / f.speed;
    const double rho2 = f.kappa * f.kappa + f.tau * f.tau;
    return f.kappa * f.kappa / std::pow(rho2, 1.5) * dg_ds;
}

HelixReport classify_samples(const std::vector<double>& kappas, const std::vector<double>& taus,
                             const std::vector<double>& psis, double tol) {
    HelixReport rep;
    rep.kappa_mean = stats_of(kappas).mean;
    rep.kappa_spread = stats_of(kappas).spread;
    rep.tau_mean = stats_of(taus).mean;
    rep.tau_spread = stats_of(taus).spread;

    double max_abs_tau = 0.0;
    for (double tau : taus) max_abs_tau = std::max(max_abs_tau, std::abs(tau));

    std::vector<double> ratios;
    ratios.reserve(kappas.size());
    bool ratio_ok = true;
    for (std::size_t i = 0; i < kappas.size(); ++i) {
        const double r = kappas[i] / taus[i];
        if (!std::isfinite(r)) ratio_ok = false;
        ratios.push_back(r);
    }
    const Stats ratio_stats = stats_of(ratios);
    rep.ratio_mean = ratio_stats.mean;
    rep.ratio_spread = ratio_stats.spread;

    const Stats psi_stats = stats_of(psis);
    rep.psi_mean = psi_stats.mean;
    rep.psi_spread = psi_stats.spread;

    const Stats kappa_stats{rep.kappa_mean, rep.kappa_spread};
    const Stats tau_stats{rep.tau_mean, rep.tau_spread};

    if (max_abs_tau <= tol) {
        rep.kind = HelixKind::Planar;
    } else if (constant_within(kappa_stats, tol) && constant_within(tau_stats, tol)) {
        rep.kind = HelixKind::Circular;
    } else if (ratio_ok && constant_within(ratio_stats, tol)) {
        rep.kind = HelixKind::General;
    } else if (!psis.empty() && constant_within(psi_stats, tol)) {
        rep.kind = HelixKind::Slant;
    } else {
        rep.kind = HelixKind::None;
    }
    return rep;
}

HelixReport classify_helix(const curve::CurveDef& c, int n, double tol) {
    if (n < 8) {
        throw std::invalid_argument("classify_helix: requires n >= 8");
    }
    std::vector<double> kappas, taus, psis;
    Vec3 w_sum{};
    int failed = 0;
    std::string note;
    std::exception_ptr first_error;

    for (int i = 0; i < n; ++i) {
        const double t = c.t_lo + (i + 0.5) * c.span() / n;
        try {
            const detail::Frame f = detail::frame_at_unchecked(c, t);
            kappas.push_back(f.kappa);
            taus.push_back(f.tau);
            psis.push_back(slant_psi(c, t));
            const Vec3 w = f.tau * f.T + f.kappa * f.B;
            const double wn = norm(w);
            if (wn > 0.0) w_sum += w / wn;
        } catch (const NumericError& err) {
            ++failed;
            if (note.empty()) note = err.what();
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (kappas.empty() && first_error) {
        std::rethrow_exception(first_error);
    }

    HelixReport rep = classify_samples(kappas, taus, psis, tol);
    rep.failed_samples = failed;
    rep.failure_note = note;
    if ((rep.kind == HelixKind::Circular || rep.kind == HelixKind::General) && norm(w_sum) > 0.0) {
        rep.axis = normalized(w_sum);
    }
    return rep;
}

}  // namespace curvelab::frenet
