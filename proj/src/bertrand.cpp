#include "curvelab/bertrand.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <stdexcept>

#include "curvelab/errors.hpp"

namespace curvelab::bertrand {

using spherical::Indicatrix;
using spherical::SphericalEvaluator;
using spherical::Which;

namespace {

constexpr double kFrameTol = 1e-12;

void validate_params(const BertrandParams& p) {
    if (p.a == 0.0) {
        throw std::invalid_argument("Bertrand construction requires a != 0");
    }
    if (!(p.theta > 0.0) || !(p.theta < std::numbers::pi) || std::sin(p.theta) < 1e-9) {
        throw std::invalid_argument("Bertrand construction requires theta in (0, pi) with sin(theta) >= 1e-9");
    }
}

std::string fmtg(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

/// Frenet data of the constructed curve from its sigma derivatives:
///   g'   = a (gamma + cot side)
///   g''  = a (1 - kappa_g cot) t
///   g''' = a (1 - kappa_g cot)(-gamma + kappa_g side) + (t-parallel term)
/// The kappa_g' part of g''' is parallel to t and cancels against
/// (g' x g''), so it never reaches kappa, tau or the frame.
///
/// The frame is oriented so that the principal normal points along the
/// source tangent, which makes kappa a signed quantity. The construction may
/// pass through inflections (kappa_g crossing tan theta); with the oriented
/// frame the Frenet equations and the pointwise condition
/// a kappa + a cot(theta) tau = 1 stay valid straight through them, where the
/// unsigned cross-product curvature would fold.
void fill_frame(BertrandSample& s, const BertrandParams& p) {
    const double cot = p.cot_theta();
    const Vec3 gp = p.a * (s.gamma + cot * s.side);
    const Vec3 gpp = (p.a * (1.0 - s.kappa_g * cot)) * s.tvec;
    const Vec3 gppp = (p.a * (1.0 - s.kappa_g * cot)) * (-s.gamma + s.kappa_g * s.side);
    const double v = norm(gp);
    const Vec3 cr = cross(gp, gpp);
    const double ncr = norm(cr);
    s.T = gp / v;
    if (ncr < kFrameTol) {
        s.frame_ok = false;
        s.kappa = ncr / (v * v * v);
        s.tau = std::numeric_limits<double>::quiet_NaN();
        return;
    }
    s.frame_ok = true;
    const Vec3 n_raw = cross(cr / ncr, s.T);
    const double orient = dot(n_raw, s.tvec) >= 0.0 ? 1.0 : -1.0;
    s.N = orient * n_raw;
    s.B = cross(s.T, s.N);
    s.kappa = orient * ncr / (v * v * v);
    s.tau = det3(gp, gpp, gppp) / (ncr * ncr);
}

}  // namespace

std::vector<double> ConstructedCurve::kappas(bool defined_only) const {
    std::vector<double> out;
    for (const auto& s : samples) {
        if (!defined_only || s.frame_ok) out.push_back(s.kappa);
    }
    return out;
}

std::vector<double> ConstructedCurve::taus(bool defined_only) const {
    std::vector<double> out;
    for (const auto& s : samples) {
        if (!defined_only || s.frame_ok) out.push_back(s.tau);
    }
    return out;
}

ConstructedCurve construct_bertrand(const SphericalEvaluator& gamma, const BertrandParams& p,
                                    int n, const numerics::QuadConfig& cfg) {
    validate_params(p);
    if (n < 8) {
        throw std::invalid_argument("construct_bertrand: needs n >= 8");
    }
    const double lo = gamma.sigma_lo(), hi = gamma.sigma_hi();
    if (!(lo < hi)) {
        throw std::invalid_argument("construct_bertrand: empty sigma range");
    }
    if (p.sigma0 < lo - 1e-9 || p.sigma0 > hi + 1e-9) {
        throw OutOfRangeError("sigma0 outside the source sigma range");
    }

    auto checked_position = [&gamma](double sigma) {
        const Vec3 g = gamma.position(sigma);
        if (std::abs(norm(g) - 1.0) > 1e-6) {
            throw NonUnitInputError("spherical source leaves the unit sphere at sigma = " +
                                    std::to_string(sigma) + " (norm " + std::to_string(norm(g)) +
                                    ")");
        }
        return g;
    };
    auto side_at = [&gamma, &checked_position](double sigma) {
        return cross(checked_position(sigma), gamma.tangent(sigma));
    };

    std::array<numerics::CumulativeTable, 3> gi, si;
    for (int k = 0; k < 3; ++k) {
        gi[k] = numerics::cumulative(
            [&checked_position, k](double s) {
                const Vec3 g = checked_position(s);
                return k == 0 ? g.x : k == 1 ? g.y : g.z;
            },
            lo, hi, n, cfg);
        si[k] = numerics::cumulative(
            [&side_at, k](double s) {
                const Vec3 g = side_at(s);
                return k == 0 ? g.x : k == 1 ? g.y : g.z;
            },
            lo, hi, n, cfg);
    }

    const double cot = p.cot_theta();
    Vec3 offset{};
    if (p.sigma0 > lo) {
        for (int k = 0; k < 3; ++k) {
            const double gpart = numerics::integrate(
                [&checked_position, k](double s) {
                    const Vec3 g = checked_position(s);
                    return k == 0 ? g.x : k == 1 ? g.y : g.z;
                },
                lo, p.sigma0, cfg);
            const double spart = numerics::integrate(
                [&side_at, k](double s) {
                    const Vec3 g = side_at(s);
                    return k == 0 ? g.x : k == 1 ? g.y : g.z;
                },
                lo, p.sigma0, cfg);
            const double v = p.a * gpart + p.a * cot * spart;
            if (k == 0) offset.x = v; else if (k == 1) offset.y = v; else offset.z = v;
        }
    }

    ConstructedCurve cc;
    cc.params = p;
    cc.source_label = "spherical-curve";
    cc.samples.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto& s = cc.samples[static_cast<std::size_t>(i)];
        s.sigma = gi[0].grid[static_cast<std::size_t>(i)];
        s.position = Vec3{p.a * gi[0].values[static_cast<std::size_t>(i)] +
                              p.a * cot * si[0].values[static_cast<std::size_t>(i)],
                          p.a * gi[1].values[static_cast<std::size_t>(i)] +
                              p.a * cot * si[1].values[static_cast<std::size_t>(i)],
                          p.a * gi[2].values[static_cast<std::size_t>(i)] +
                              p.a * cot * si[2].values[static_cast<std::size_t>(i)]} -
                     offset + p.c;
        const spherical::SabbanSample sab = gamma.sabban(s.sigma);
        s.gamma = sab.gamma;
        s.tvec = sab.tvec;
        s.side = sab.side;
        s.kappa_g = sab.kappa_g;
        fill_frame(s, p);
    }
    return cc;
}

ConstructedCurve bertrand_from_indicatrix(const Indicatrix& image, const BertrandParams& p,
                                          int n, const numerics::QuadConfig& cfg) {
    validate_params(p);
    if (n < 8) {
        throw std::invalid_argument("bertrand_from_indicatrix: needs n >= 8");
    }
    const curve::CurveDef& src = image.source();
    const double lo = src.t_lo, hi = src.t_hi;

    auto src_speed = [&src](double t) {
        return norm(curve::detail::evaluate_unchecked(src, t).d1);
    };
    // dsigma = weight ds, so the integrands carry weight * speed; the side
    // integrand uses the unnormalized image velocity, which stays finite
    // where the image arclength stalls.
    auto sigma_rate = [&image, &src_speed](double t) {
        return image.weight_at(t) * src_speed(t);
    };
    auto gamma_weighted = [&image, &sigma_rate](double t) {
        return image.point_at(t) * sigma_rate(t);
    };
    auto side_weighted = [&image, &src_speed](double t) {
        return cross(image.point_at(t), image.velocity_at(t)) * src_speed(t);
    };

    numerics::CumulativeTable sigma_tab = numerics::cumulative(sigma_rate, lo, hi, n, cfg);
    for (std::size_t i = 1; i < sigma_tab.values.size(); ++i) {
        if (!(sigma_tab.values[i] > sigma_tab.values[i - 1])) {
            throw DegenerateIndicatrixError("image arclength stalls inside the domain near t = " +
                                            std::to_string(sigma_tab.grid[i]));
        }
    }

    std::array<numerics::CumulativeTable, 3> gi, si;
    for (int k = 0; k < 3; ++k) {
        gi[k] = numerics::cumulative(
            [&gamma_weighted, k](double t) {
                const Vec3 g = gamma_weighted(t);
                return k == 0 ? g.x : k == 1 ? g.y : g.z;
            },
            lo, hi, n, cfg);
        si[k] = numerics::cumulative(
            [&side_weighted, k](double t) {
                const Vec3 g = side_weighted(t);
                return k == 0 ? g.x : k == 1 ? g.y : g.z;
            },
            lo, hi, n, cfg);
    }

    // sigma0 maps back to a source parameter; integrals up to it shift the
    // whole curve by a constant.
    const double cot = p.cot_theta();
    Vec3 offset{};
    if (p.sigma0 < -1e-9 || p.sigma0 > sigma_tab.total() + 1e-9) {
        throw OutOfRangeError("sigma0 outside the image arclength range");
    }
    if (p.sigma0 > 0.0) {
        const double t0 = numerics::invert_monotone(sigma_tab, p.sigma0, sigma_rate, cfg);
        for (int k = 0; k < 3; ++k) {
            const double gpart = numerics::integrate(
                [&gamma_weighted, k](double t) {
                    const Vec3 g = gamma_weighted(t);
                    return k == 0 ? g.x : k == 1 ? g.y : g.z;
                },
                lo, t0, cfg);
            const double spart = numerics::integrate(
                [&side_weighted, k](double t) {
                    const Vec3 g = side_weighted(t);
                    return k == 0 ? g.x : k == 1 ? g.y : g.z;
                },
                lo, t0, cfg);
            const double v = p.a * gpart + p.a * cot * spart;
            if (k == 0) offset.x = v; else if (k == 1) offset.y = v; else offset.z = v;
        }
    }

    ConstructedCurve cc;
    cc.params = p;
    cc.source_label = std::string("indicatrix-") + spherical::to_string(image.which()) + ":" +
                      src.label;
    cc.samples.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto& s = cc.samples[static_cast<std::size_t>(i)];
        const std::size_t k = static_cast<std::size_t>(i);
        const double t = sigma_tab.grid[k];
        s.sigma = sigma_tab.values[k];
        s.position = Vec3{p.a * gi[0].values[k] + p.a * cot * si[0].values[k],
                          p.a * gi[1].values[k] + p.a * cot * si[1].values[k],
                          p.a * gi[2].values[k] + p.a * cot * si[2].values[k]} -
                     offset + p.c;
        try {
            const spherical::SabbanSample sab = image.sabban_at(t);
            s.gamma = sab.gamma;
            s.tvec = sab.tvec;
            s.side = sab.side;
            s.kappa_g = sab.kappa_g;
            fill_frame(s, p);
        } catch (const NumericError&) {
            s.gamma = image.point_at(t);
            s.frame_ok = false;
            s.kappa = 0.0;
            s.tau = std::numeric_limits<double>::quiet_NaN();
        }
    }
    return cc;
}

ConstructedCurve bertrand_from_indicatrix(const curve::CurveDef& c, Which which,
                                          const BertrandParams& p, int n,
                                          const numerics::QuadConfig& cfg) {
    return bertrand_from_indicatrix(Indicatrix(c, which, std::max(n, 65), cfg), p, n, cfg);
}

double max_darboux_drift(const curve::CurveDef& c, int n) {
    const double h = 1e-5 * c.span();
    auto darboux_dir = [&c](double t) {
        const frenet::detail::Frame f = frenet::detail::frame_at_unchecked(c, t);
        const Vec3 w = f.tau * f.T + f.kappa * f.B;
        return w / norm(w);
    };
    double drift = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = c.t_lo + (i + 0.5) * c.span() / n;
        const Vec3 d = (-darboux_dir(t + 2.0 * h) + 8.0 * darboux_dir(t + h) -
                        8.0 * darboux_dir(t - h) + darboux_dir(t - 2.0 * h)) /
                       (12.0 * h);
        const double speed = norm(curve::detail::evaluate_unchecked(c, t).d1);
        drift = std::max(drift, norm(d) / speed);
    }
    return drift;
}

ConstructedCurve construct_fixed_darboux(const curve::CurveDef& c, const BertrandParams& p,
                                         int n, const numerics::QuadConfig& cfg) {
    validate_params(p);
    const double drift = max_darboux_drift(c);
    if (drift > 1e-9) {
        throw DomainError("normalized Darboux vector is not constant (max ||C'|| = " +
                          std::to_string(drift) + ")");
    }
    const frenet::detail::Frame f0 = frenet::detail::frame_at_unchecked(c, c.t_lo);
    const Vec3 cbar = normalized(f0.tau * f0.T + f0.kappa * f0.B);

    // Normal-image construction with the partner integral in closed form:
    // position = a Int N dsigma + a cot(theta) (sigma - sigma0) Cbar + c.
    // The frame data comes from the generic path (the side vector of the
    // normal image equals Cbar when the premise holds); positions are then
    // reassembled with the closed-form partner term.
    Indicatrix image(c, Which::N, std::max(n, 65), cfg);
    ConstructedCurve cc = bertrand_from_indicatrix(image, p, n, cfg);
    cc.source_label = "fixed-darboux-normal:" + c.label;
    const double cot = p.cot_theta();
    {
        auto src_speed = [&c](double t) {
            return norm(curve::detail::evaluate_unchecked(c, t).d1);
        };
        auto sigma_rate = [&image, &src_speed](double t) {
            return image.weight_at(t) * src_speed(t);
        };
        auto gamma_weighted = [&image, &sigma_rate](double t) {
            return image.point_at(t) * sigma_rate(t);
        };
        numerics::CumulativeTable sigma_tab =
            numerics::cumulative(sigma_rate, c.t_lo, c.t_hi, n, cfg);
        std::array<numerics::CumulativeTable, 3> gi;
        for (int k = 0; k < 3; ++k) {
            gi[k] = numerics::cumulative(
                [&gamma_weighted, k](double t) {
                    const Vec3 g = gamma_weighted(t);
                    return k == 0 ? g.x : k == 1 ? g.y : g.z;
                },
                c.t_lo, c.t_hi, n, cfg);
        }
        Vec3 gamma_offset{};
        if (p.sigma0 > 0.0) {
            const double t0 = numerics::invert_monotone(sigma_tab, p.sigma0, sigma_rate, cfg);
            gamma_offset = Vec3{numerics::integrate([&gamma_weighted](double t) { return gamma_weighted(t).x; }, c.t_lo, t0, cfg),
                                numerics::integrate([&gamma_weighted](double t) { return gamma_weighted(t).y; }, c.t_lo, t0, cfg),
                                numerics::integrate([&gamma_weighted](double t) { return gamma_weighted(t).z; }, c.t_lo, t0, cfg)};
        }
        for (int i = 0; i < n; ++i) {
            auto& s = cc.samples[static_cast<std::size_t>(i)];
            const std::size_t k = static_cast<std::size_t>(i);
            const Vec3 gpart{gi[0].values[k], gi[1].values[k], gi[2].values[k]};
            s.sigma = sigma_tab.values[k];
            s.position =
                p.a * (gpart - gamma_offset) + (p.a * cot * (s.sigma - p.sigma0)) * cbar + p.c;
        }
    }
    return cc;
}

BertrandFit fit_bertrand_condition(const ConstructedCurve& cc) {
    std::vector<double> ks, ts;
    for (const auto& s : cc.samples) {
        if (s.frame_ok) {
            ks.push_back(s.kappa);
            ts.push_back(s.tau);
        }
    }
    if (ks.size() < 3) {
        throw std::invalid_argument("fit_bertrand_condition: needs >= 3 samples with a defined frame");
    }

    double sk = 0.0, st = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        sk = std::max(sk, std::abs(ks[i]));
        st = std::max(st, std::abs(ts[i]));
    }
    if (sk == 0.0) sk = 1.0;
    if (st == 0.0) st = 1.0;

    // Normal equations of the column-scaled 2-column system.
    double g11 = 0.0, g12 = 0.0, g22 = 0.0, b1 = 0.0, b2 = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const double u = ks[i] / sk, v = ts[i] / st;
        g11 += u * u;
        g12 += u * v;
        g22 += v * v;
        b1 += u;
        b2 += v;
    }
    const double tr = g11 + g22;
    const double dett = g11 * g22 - g12 * g12;
    const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * dett));
    const double lam_max = 0.5 * (tr + disc);
    const double lam_min = 0.5 * (tr - disc);

    BertrandFit fit;
    fit.used_samples = static_cast<int>(ks.size());
    if (lam_min <= 1e-16 * lam_max) {
        fit.rank_deficient = true;
        double km = 0.0, tm = 0.0;
        for (std::size_t i = 0; i < ks.size(); ++i) {
            km += ks[i];
            tm += ts[i];
        }
        km /= static_cast<double>(ks.size());
        tm /= static_cast<double>(ks.size());
        fit.family_kappa = km;
        fit.family_tau = tm;
        const double d = km * km + tm * tm;
        fit.A = km / d;
        fit.B = tm / d;
    } else {
        const double x1 = (g22 * b1 - g12 * b2) / dett;
        const double x2 = (g11 * b2 - g12 * b1) / dett;
        fit.A = x1 / sk;
        fit.B = x2 / st;
    }
    for (std::size_t i = 0; i < ks.size(); ++i) {
        fit.residual = std::max(fit.residual, std::abs(fit.A * ks[i] + fit.B * ts[i] - 1.0));
    }
    return fit;
}

bool CorollaryReport::any_fail() const {
    for (const auto& r : rows) {
        if (r.status == CheckStatus::Fail) return true;
    }
    return false;
}

CorollaryReport verify_corollaries(const curve::CurveDef& c, const BertrandParams& p,
                                   double tol, int n) {
    validate_params(p);
    CorollaryReport rep;
    const frenet::HelixReport helix = frenet::classify_helix(c, 256, tol);
    const bool general =
        helix.kind == frenet::HelixKind::General || helix.kind == frenet::HelixKind::Circular;
    const bool slant =
        helix.kind == frenet::HelixKind::Slant || helix.kind == frenet::HelixKind::Circular;

    rep.rows.push_back({"premise.general-helix",
                        general ? CheckStatus::Pass : CheckStatus::PremiseNotMet,
                        helix.ratio_spread, tol,
                        std::string("classified ") + frenet::to_string(helix.kind)});
    rep.rows.push_back({"premise.slant-helix",
                        slant ? CheckStatus::Pass : CheckStatus::PremiseNotMet, helix.psi_spread,
                        tol, std::string("classified ") + frenet::to_string(helix.kind)});

    struct ImageCheck {
        Which which;
        bool premise;
        const char* name;
    };
    const ImageCheck corollaries[] = {
        {Which::T, general, "general-helix.tangent-image-circular"},
        {Which::B, general, "general-helix.binormal-image-circular"},
        {Which::N, slant, "slant-helix.normal-image-circular"},
    };
    for (const auto& chk : corollaries) {
        if (!chk.premise) {
            rep.rows.push_back({chk.name, CheckStatus::PremiseNotMet, 0.0, tol,
                                "source is not the required helix type"});
            continue;
        }
        try {
            const ConstructedCurve cc = bertrand_from_indicatrix(c, chk.which, p, n);
            const frenet::HelixReport kind =
                frenet::classify_samples(cc.kappas(), cc.taus(), {}, tol);
            const BertrandFit fit = fit_bertrand_condition(cc);
            const bool circular = kind.kind == frenet::HelixKind::Circular;
            const bool ok = circular && fit.residual <= tol;
            const double spread = std::max(kind.kappa_spread, kind.tau_spread);
            rep.rows.push_back({chk.name, ok ? CheckStatus::Pass : CheckStatus::Fail,
                                std::max(spread, fit.residual), tol,
                                std::string("constructed curve classified ") +
                                    frenet::to_string(kind.kind)});
        } catch (const DegenerateIndicatrixError& e) {
            rep.rows.push_back({chk.name, CheckStatus::PremiseNotMet, 0.0, tol, e.what()});
        }
    }

    // Fixed Darboux direction: for a general helix the normalized Darboux
    // vector is constant and the partner integral of the normal-image
    // construction collapses to (sigma - sigma0) C.
    {
        const char* name = "general-helix.fixed-darboux-normal-image";
        double drift = std::numeric_limits<double>::quiet_NaN();
        bool premise = general;
        std::string note;
        if (general) {
            drift = max_darboux_drift(c);
            premise = drift <= 1e-9;
            note = "max ||C'|| = " + fmtg(drift);
        } else {
            note = "source is not a general helix";
        }
        if (!premise) {
            rep.rows.push_back({name, CheckStatus::PremiseNotMet, drift, 1e-9, note});
        } else {
            const ConstructedCurve cc = construct_fixed_darboux(c, p, n);
            const BertrandFit fit = fit_bertrand_condition(cc);
            rep.rows.push_back({name,
                                fit.residual <= tol ? CheckStatus::Pass : CheckStatus::Fail,
                                fit.residual, tol,
                                note + "; partner term integrated as (sigma - sigma0) C"});
        }
    }

    // Bertrand condition of each image construction.
    for (Which which : {Which::T, Which::N, Which::B, Which::C}) {
        const std::string name = std::string("bertrand-condition.") + spherical::to_string(which) +
                                 "-image";
        try {
            const Indicatrix image(c, which, std::max(n, 65));
            std::string note;
            const ConstructedCurve cc = bertrand_from_indicatrix(image, p, n);
            const BertrandFit fit = fit_bertrand_condition(cc);
            if (fit.rank_deficient) {
                note = "rank-deficient: family " + fmtg(fit.family_kappa) + " A + " +
                       fmtg(fit.family_tau) + " B = 1";
            }
            rep.rows.push_back({name, fit.residual <= tol ? CheckStatus::Pass : CheckStatus::Fail,
                                fit.residual, tol, note});
        } catch (const DegenerateIndicatrixError& e) {
            rep.rows.push_back({name, CheckStatus::Skip, 0.0, tol, e.what()});
        }
    }

    return rep;
}

}  // namespace curvelab::bertrand
