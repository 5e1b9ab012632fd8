// Acceptance suite: one line per criterion, exit status = number of failures.
// Each criterion pins its tolerance in code; reference values come from
// closed forms, hand derivations or the independent oracles in oracles.hpp.
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "curvelab/bertrand.hpp"
#include "curvelab/curve.hpp"
#include "curvelab/errors.hpp"
#include "curvelab/frenet.hpp"
#include "curvelab/numerics.hpp"
#include "curvelab/spherical.hpp"
#include "oracles.hpp"

using namespace curvelab;
using curve::CurveDef;
using curve::catalog;
using spherical::Indicatrix;
using spherical::Which;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// Hand-derived invariants of the built-in example curve.
double example_kappa(double s) { return std::sqrt(1.0 + std::cos(s) * std::cos(s)); }
double example_tau(double s) {
    const double c2 = std::cos(s) * std::cos(s);
    return -std::sin(s) * (2.0 + c2) / (1.0 + c2);
}

CurveDef perturbed_control() {
    CurveDef c;
    c.label = "perturbed-helix";
    c.param = "t";
    c.components = {expr::parse("cos(t)", "t"), expr::parse("sin(t)", "t"),
                    expr::parse("t + 0.2*sin(2*t)", "t")};
    c.t_lo = 0.0;
    c.t_hi = kTwoPi;
    return c;
}

CurveDef restricted(const CurveDef& base, double lo, double hi) {
    CurveDef c = base;
    c.t_lo = lo;
    c.t_hi = hi;
    return c;
}

double spread_of(const std::vector<double>& xs) {
    double lo = xs.front(), hi = xs.front();
    for (double x : xs) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    return hi - lo;
}

// ---------------------------------------------------------------------------

Outcome criterion_golden_example() {
    const CurveDef pe = catalog("paper-example");
    double speed_dev = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double s = kTwoPi * i / 999.0;
        speed_dev = std::max(speed_dev, std::abs(curve::speed(pe, s) - 1.0));
    }
    const Indicatrix img(pe, Which::T, 129);
    double image_dev = 0.0;
    for (int i = 0; i <= 500; ++i) {
        const double s = kTwoPi * i / 500.0;
        const Vec3 want{std::sin(s), std::sin(s) * std::cos(s), std::cos(s) * std::cos(s)};
        image_dev = std::max(image_dev, norm(img.point_at(s) - want));
    }
    Outcome out;
    out.pass = speed_dev <= 1e-12 && image_dev <= 1e-9;
    out.detail = "unit-speed dev " + fmt(speed_dev) + " (tol 1e-12), tangent-image dev " +
                 fmt(image_dev) + " (tol 1e-9)";
    return out;
}

// Printed reference formula for the worked-example construction (a = 1,
// cot theta = 1), exactly as published.
double ref_y(double s) {
    return -2.0 * std::atan(std::sqrt(2.0) * std::sin(s) / std::sqrt(3.0 + std::cos(2.0 * s))) -
           0.25 * std::cos(2.0 * s) +
           std::sqrt(3.0 + std::cos(2.0 * s)) * std::sin(s) / (2.0 * std::sqrt(2.0));
}
// The same expression with the partner-term sign reversed; this is what the
// arclength quadrature of the printed integrands actually reproduces.
double ref_y_flipped(double s) {
    return 2.0 * std::atan(std::sqrt(2.0) * std::sin(s) / std::sqrt(3.0 + std::cos(2.0 * s))) -
           0.25 * std::cos(2.0 * s) -
           std::sqrt(3.0 + std::cos(2.0 * s)) * std::sin(s) / (2.0 * std::sqrt(2.0));
}
double ref_z(double s) {
    return 0.5 * s -
           std::cos(s) * std::sqrt(3.0 + std::cos(2.0 * s)) / (2.0 * std::sqrt(2.0)) +
           1.5 * std::log(std::sqrt(2.0) * std::cos(s) + std::sqrt(3.0 + std::cos(2.0 * s))) +
           0.25 * std::sin(2.0 * s);
}
double ref_x(double s) {
    if (s == 0.0) return -1.0;
    auto fK = [](double u) { return 1.0 / std::sqrt(1.0 - 0.5 * std::sin(u) * std::sin(u)); };
    auto fE = [](double u) { return std::sqrt(1.0 - 0.5 * std::sin(u) * std::sin(u)); };
    const int panels = 50000;
    const double F = oracles::simpson_fixed(fK, 0.0, s, panels);
    const double E = oracles::simpson_fixed(fE, 0.0, s, panels);
    return -std::cos(s) + (1.0 / std::sqrt(2.0)) * (-0.5 * F + 0.5 * (-4.0 * E + 3.0 * F));
}

double aligned_max_err(const std::vector<double>& got, const std::vector<double>& want) {
    double mean = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) mean += want[i] - got[i];
    mean /= static_cast<double>(got.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        worst = std::max(worst, std::abs(got[i] + mean - want[i]));
    }
    return worst;
}

Outcome criterion_reference_construction() {
    const CurveDef pe = restricted(catalog("paper-example"), 0.0, kPi);
    bertrand::BertrandParams p;
    p.a = 1.0;
    p.theta = kPi / 4.0;  // cot theta = 1
    p.c = Vec3{-1.0, 0.0, 0.0};
    const int n = 50;
    const bertrand::ConstructedCurve cc = bertrand::bertrand_from_indicatrix(pe, Which::T, p, n);

    std::vector<double> gx, gy, gz, wx, wy, wz;
    for (int i = 0; i < n; ++i) {
        const double s = kPi * i / (n - 1);
        gx.push_back(cc.samples[static_cast<std::size_t>(i)].position.x);
        gy.push_back(cc.samples[static_cast<std::size_t>(i)].position.y);
        gz.push_back(cc.samples[static_cast<std::size_t>(i)].position.z);
        wx.push_back(ref_x(s));
        wy.push_back(ref_y(s));
        wz.push_back(ref_z(s));
    }
    const double ex = aligned_max_err(gx, wx);
    const double ey = aligned_max_err(gy, wy);
    const double ez = aligned_max_err(gz, wz);

    Outcome out;
    out.pass = ex <= 1e-6 && ey <= 1e-6 && ez <= 1e-6;
    out.detail = "component errors vs printed closed form: x " + fmt(ex) + ", y " + fmt(ey) +
                 ", z " + fmt(ez) + " (tol 1e-6 each)";

    // Diagnostics: the printed formula is reproduced exactly by the plain
    // (unweighted) arclength quadrature of T + B, with its y partner term
    // carrying a reversed sign.
    auto tangent_comp = [&pe](int k) {
        return [&pe, k](double s) {
            const frenet::detail::Frame f = frenet::detail::frame_at_unchecked(pe, s);
            return k == 0 ? f.T.x : k == 1 ? f.T.y : f.T.z;
        };
    };
    auto binormal_comp = [&pe](int k) {
        return [&pe, k](double s) {
            const frenet::detail::Frame f = frenet::detail::frame_at_unchecked(pe, s);
            return k == 0 ? f.B.x : k == 1 ? f.B.y : f.B.z;
        };
    };
    std::vector<double> qx, qy_plus, qy_minus, qz;
    const auto tx = numerics::cumulative(tangent_comp(0), 0.0, kPi, n);
    const auto ty = numerics::cumulative(tangent_comp(1), 0.0, kPi, n);
    const auto tz = numerics::cumulative(tangent_comp(2), 0.0, kPi, n);
    const auto bx = numerics::cumulative(binormal_comp(0), 0.0, kPi, n);
    const auto by = numerics::cumulative(binormal_comp(1), 0.0, kPi, n);
    const auto bz = numerics::cumulative(binormal_comp(2), 0.0, kPi, n);
    std::vector<double> wy_flip;
    for (int i = 0; i < n; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        qx.push_back(tx.values[k] + bx.values[k] - 1.0);
        qy_plus.push_back(ty.values[k] + by.values[k]);
        qy_minus.push_back(ty.values[k] - by.values[k]);
        qz.push_back(tz.values[k] + bz.values[k]);
        wy_flip.push_back(ref_y_flipped(kPi * i / (n - 1)));
    }
    out.detail += "\n      note: unweighted quadrature of the printed integrands reproduces x to " +
                  fmt(aligned_max_err(qx, wx)) + " and z to " + fmt(aligned_max_err(qz, wz)) +
                  "; its y matches the printed form only with the partner sign reversed (" +
                  fmt(aligned_max_err(qy_minus, wy)) + ") and matches the sign-corrected form at " +
                  fmt(aligned_max_err(qy_plus, wy_flip)) +
                  "; the arclength-weighted construction is a different curve";
    return out;
}

Outcome criterion_bertrand_condition() {
    const CurveDef pe = catalog("paper-example");
    struct Source {
        CurveDef curve;
        Which which;
        const char* name;
    };
    const Source sources[] = {
        {pe, Which::T, "example-T"},
        {pe, Which::N, "example-N"},
        {restricted(pe, 1.0, 2.1), Which::B, "example-B"},
        {restricted(pe, 0.2, 0.8), Which::C, "example-C"},
        {perturbed_control(), Which::T, "control-T"},
    };
    bertrand::BertrandParams p;
    p.a = 1.0;
    p.theta = kPi / 4.0;
    const double want_b = p.a * p.cot_theta();

    Outcome out;
    for (const Source& src : sources) {
        const bertrand::ConstructedCurve cc =
            bertrand::bertrand_from_indicatrix(src.curve, src.which, p, 256);
        const bertrand::BertrandFit fit = bertrand::fit_bertrand_condition(cc);
        const double ea = std::abs(fit.A - p.a) / std::abs(p.a);
        const double eb = std::abs(fit.B - want_b) / std::abs(want_b);
        const bool ok =
            !fit.rank_deficient && ea <= 1e-4 && eb <= 1e-4 && fit.residual <= 1e-5;
        if (!ok) out.pass = false;
        out.detail += std::string(out.detail.empty() ? "" : "; ") + src.name + " dA " + fmt(ea) +
                      " dB " + fmt(eb) + " res " + fmt(fit.residual);
    }
    out.detail += " (tol 1e-4 rel, residual 1e-5)";
    return out;
}

Outcome criterion_circle_equivalence() {
    Outcome out;
    struct Case {
        CurveDef curve;
        double theta;
        const char* name;
    };
    const Case circles[] = {
        {catalog("circular-helix", {1.0, 1.0}), kPi / 3.0, "helix(1,1)"},
        {catalog("circular-helix", {2.0, 1.0}), kPi / 4.0, "helix(2,1)"},
    };
    for (const Case& cs : circles) {
        const Indicatrix img(cs.curve, Which::T, 129);
        const double rms = spherical::circle_fit(img, 256).rms_residual;
        bertrand::BertrandParams p;
        p.theta = cs.theta;
        const bertrand::ConstructedCurve cc = bertrand::bertrand_from_indicatrix(img, p, 256);
        const auto ks = cc.kappas();
        const auto ts = cc.taus();
        const double ks_rel = spread_of(ks) / (1.0 + std::abs(ks.front()));
        const double ts_rel = spread_of(ts) / (1.0 + std::abs(ts.front()));
        const bool ok = rms <= 1e-8 && ks_rel <= 1e-6 && ts_rel <= 1e-6;
        if (!ok) out.pass = false;
        out.detail += std::string(out.detail.empty() ? "" : "; ") + cs.name + " rms " + fmt(rms) +
                      " spreads " + fmt(ks_rel) + "/" + fmt(ts_rel);
    }
    // Converse direction: the control curve must fail the circle fit and
    // produce a visibly non-constant curvature.
    const Indicatrix ctrl(perturbed_control(), Which::T, 129);
    const double rms = spherical::circle_fit(ctrl, 256).rms_residual;
    bertrand::BertrandParams p;
    p.theta = kPi / 3.0;
    const bertrand::ConstructedCurve cc = bertrand::bertrand_from_indicatrix(ctrl, p, 256);
    const auto ks = cc.kappas();
    const double ks_rel = spread_of(ks) / (1.0 + std::abs(ks.front()));
    const bool control_ok = rms > 1e-8 && ks_rel > 1e-6;
    if (!control_ok) out.pass = false;
    out.detail += "; control rms " + fmt(rms) + " (must exceed 1e-8), kappa spread " +
                  fmt(ks_rel) + " (must exceed 1e-6)";
    return out;
}

Outcome criterion_helix_constructions() {
    const CurveDef h = catalog("circular-helix", {2.0, 1.0});
    bertrand::BertrandParams p;
    p.theta = kPi / 4.0;
    Outcome out;
    for (Which which : {Which::T, Which::B, Which::N}) {
        const bertrand::ConstructedCurve cc = bertrand::bertrand_from_indicatrix(h, which, p, 256);
        const auto ks = cc.kappas();
        const auto ts = cc.taus();
        const double ks_rel = spread_of(ks) / (1.0 + std::abs(ks.front()));
        const double ts_rel = spread_of(ts) / (1.0 + std::abs(ts.front()));
        const bertrand::BertrandFit fit = bertrand::fit_bertrand_condition(cc);
        const frenet::HelixReport kind = frenet::classify_samples(ks, ts, {}, 1e-6);
        const bool ok = kind.kind == frenet::HelixKind::Circular && ks_rel <= 1e-6 &&
                        ts_rel <= 1e-6 && fit.residual <= 1e-5;
        if (!ok) out.pass = false;
        out.detail += std::string(out.detail.empty() ? "" : "; ") + spherical::to_string(which) +
                      "-image " + frenet::to_string(kind.kind) + " spreads " + fmt(ks_rel) + "/" +
                      fmt(ts_rel) + " res " + fmt(fit.residual);
    }
    out.detail += " (spread tol 1e-6 rel, fit tol 1e-5)";
    return out;
}

Outcome criterion_fixed_darboux() {
    const CurveDef h = catalog("circular-helix", {1.0, 1.0});
    const double drift = bertrand::max_darboux_drift(h, 257);
    bertrand::BertrandParams p;
    p.theta = kPi / 4.0;
    const bertrand::ConstructedCurve cc = bertrand::construct_fixed_darboux(h, p, 256);
    const bertrand::BertrandFit fit = bertrand::fit_bertrand_condition(cc);
    Outcome out;
    out.pass = drift <= 1e-9 && fit.residual <= 1e-5;
    out.detail = "max ||C'|| " + fmt(drift) + " (tol 1e-9), collapsed-partner fit residual " +
                 fmt(fit.residual) + " (tol 1e-5)";
    return out;
}

Outcome criterion_identities() {
    Outcome out;
    struct Entry {
        CurveDef curve;
        const char* name;
    };
    const Entry entries[] = {
        {catalog("paper-example"), "example"},
        {catalog("circular-helix", {1.0, 1.0}), "helix(1,1)"},
        {catalog("circular-helix", {2.0, 1.0}), "helix(2,1)"},
        {catalog("circle", {1.0}), "circle"},
        {catalog("line"), "line"},
    };
    for (const Entry& e : entries) {
        // N x N' = C wherever the normal image exists
        try {
            const Indicatrix img(e.curve, Which::N, 129);
            double worst = 0.0;
            for (int i = 0; i < 96; ++i) {
                const double t = e.curve.t_lo + (i + 0.5) * e.curve.span() / 96.0;
                const frenet::detail::Frame f = frenet::detail::frame_at_unchecked(e.curve, t);
                const Vec3 cvec = normalized(f.tau * f.T + f.kappa * f.B);
                worst = std::max(worst, norm(img.sabban_at(t).side - cvec));
            }
            if (worst > 1e-6) out.pass = false;
            out.detail += std::string(out.detail.empty() ? "" : "; ") + e.name + " N-id " +
                          fmt(worst);
        } catch (const NumericError&) {
            out.detail += std::string(out.detail.empty() ? "" : "; ") + e.name + " N-id skipped";
        }
        // C x C' = sign((tau/kappa)') N wherever the Darboux image moves
        try {
            const Indicatrix img(e.curve, Which::C, 129);
            double max_w = 0.0;
            for (int i = 0; i < 96; ++i) {
                const double t = e.curve.t_lo + (i + 0.5) * e.curve.span() / 96.0;
                max_w = std::max(max_w, img.weight_at(t));
            }
            double worst = 0.0;
            for (int i = 0; i < 96; ++i) {
                const double t = e.curve.t_lo + (i + 0.5) * e.curve.span() / 96.0;
                if (img.weight_at(t) < 1e-3 * max_w) continue;
                const double sign = frenet::slant_psi(e.curve, t) >= 0.0 ? 1.0 : -1.0;
                const frenet::detail::Frame f = frenet::detail::frame_at_unchecked(e.curve, t);
                worst = std::max(worst, norm(img.sabban_at(t).side - sign * f.N));
            }
            if (worst > 1e-6) out.pass = false;
            out.detail += " C-id " + fmt(worst);
        } catch (const NumericError&) {
            out.detail += " C-id skipped";
        }
    }
    out.detail += " (tol 1e-6)";
    return out;
}

Outcome criterion_frame_residuals() {
    Outcome out;
    const CurveDef curves[] = {catalog("paper-example"), catalog("circular-helix", {2.0, 1.0}),
                               catalog("circular-helix", {1.0, 1.0}), catalog("circle", {1.0})};
    double worst_gram = 0.0;
    for (const CurveDef& c : curves) {
        for (int i = 0; i < 128; ++i) {
            const double t = c.t_lo + (i + 0.5) * c.span() / 128.0;
            const frenet::detail::Frame f = frenet::detail::frame_at_unchecked(c, t);
            worst_gram = std::max({worst_gram, std::abs(norm(f.T) - 1.0),
                                   std::abs(norm(f.N) - 1.0), std::abs(norm(f.B) - 1.0),
                                   std::abs(dot(f.T, f.N)), std::abs(dot(f.T, f.B)),
                                   std::abs(dot(f.N, f.B))});
        }
        // Frenet residual convergence at the worst point of a coarse sweep
        double r_big = 0.0, t_worst = c.t_lo + 0.5 * c.span();
        for (int i = 0; i < 16; ++i) {
            const double t = c.t_lo + (i + 0.5) * c.span() / 16.0;
            const double r = frenet::frenet_ode_residual(c, t, 1e-3);
            if (r > r_big) {
                r_big = r;
                t_worst = t;
            }
        }
        const double ratio = r_big / frenet::frenet_ode_residual(c, t_worst, 5e-4);
        if (!(ratio >= 3.5 && ratio <= 4.5)) out.pass = false;
        out.detail += std::string(out.detail.empty() ? "" : "; ") + c.label + " ratio " +
                      fmt(ratio);
    }
    // Spherical frame residual convergence on the example tangent image
    const Indicatrix img(catalog("paper-example"), Which::T, 129);
    auto residual = [&img](double sigma, double h) {
        const spherical::SabbanSample s0 = img.sabban(sigma);
        const spherical::SabbanSample sp = img.sabban(sigma + h);
        const spherical::SabbanSample sm = img.sabban(sigma - h);
        return std::max({norm((sp.gamma - sm.gamma) / (2.0 * h) - s0.tvec),
                         norm((sp.tvec - sm.tvec) / (2.0 * h) + s0.gamma -
                              s0.kappa_g * s0.side),
                         norm((sp.side - sm.side) / (2.0 * h) + s0.kappa_g * s0.tvec)});
    };
    const double mid = 0.45 * img.sigma_hi();
    const double sratio = residual(mid, 1e-3) / residual(mid, 5e-4);
    if (!(sratio >= 3.5 && sratio <= 4.5)) out.pass = false;
    if (worst_gram > 1e-9) out.pass = false;
    out.detail += "; spherical ratio " + fmt(sratio) + " (band [3.5, 4.5]); orthonormality " +
                  fmt(worst_gram) + " (tol 1e-9)";
    return out;
}

Outcome criterion_slant_function() {
    Outcome out;
    double trivial = 0.0;
    for (const CurveDef& c : {catalog("circular-helix", {1.0, 1.0}),
                              catalog("circular-helix", {2.0, 1.0}), catalog("circle", {1.0})}) {
        for (int i = 0; i < 32; ++i) {
            const double t = c.t_lo + (i + 0.5) * c.span() / 32.0;
            trivial = std::max(trivial, std::abs(frenet::slant_psi(c, t)));
        }
    }
    // independent oracle from the hand-derived closed forms, step 1e-5
    const CurveDef pe = catalog("paper-example");
    auto ratio = [](double s) { return example_tau(s) / example_kappa(s); };
    double worst = 0.0;
    for (int i = 0; i < 64; ++i) {
        const double s = 0.05 + (kTwoPi - 0.1) * i / 63.0;
        const double dr = oracles::fd1(ratio, s, 1e-5);
        const double k = example_kappa(s), tau = example_tau(s);
        const double reference = k * k / std::pow(k * k + tau * tau, 1.5) * dr;
        worst = std::max(worst, std::abs(frenet::slant_psi(pe, s) - reference));
    }
    out.pass = trivial <= 1e-8 && worst <= 1e-5;
    out.detail = "max |psi| on circular cases " + fmt(trivial) +
                 " (tol 1e-8); example-vs-oracle dev " + fmt(worst) + " (tol 1e-5)";
    return out;
}

Outcome criterion_jets_vs_differences() {
    Outcome out;
    std::mt19937 rng(987654321);
    double worst = 0.0;
    const CurveDef curves[] = {catalog("paper-example"), catalog("circular-helix", {2.0, 1.0}),
                               catalog("circle", {1.5}), catalog("line")};
    for (const CurveDef& c : curves) {
        std::uniform_real_distribution<double> uni(c.t_lo + 0.12, c.t_hi - 0.12);
        for (const auto& component : c.components) {
            for (int k = 0; k < 100; ++k) {
                const double t = uni(rng);
                auto f = [&component](double u) { return expr::eval(component, u); };
                const expr::Jet3 j = expr::eval_jet(component, t);
                const double d1 = oracles::fd1(f, t, 1e-3);
                const double d2 = oracles::fd2(f, t, 1e-2);
                const double d3 = oracles::fd3(f, t, 1e-2);
                worst = std::max({worst, std::abs(j.d1 - d1) / (1.0 + std::abs(d1)),
                                  std::abs(j.d2 - d2) / (1.0 + std::abs(d2)),
                                  std::abs(j.d3 - d3) / (1.0 + std::abs(d3))});
            }
        }
    }
    out.pass = worst <= 1e-6;
    out.detail = "max relative deviation " + fmt(worst) +
                 " over 100 points x 12 catalog components (tol 1e-6)";
    return out;
}

}  // namespace

int main() {
    struct Criterion {
        const char* label;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {"worked example is unit speed and its tangent image matches the closed form",
         criterion_golden_example},
        {"tangent construction of the worked example vs its printed closed form",
         criterion_reference_construction},
        {"construction constants (A, B) = (a, a cot theta) on five non-circle sources",
         criterion_bertrand_condition},
        {"circle source iff constant constructed curvature, with a failing control",
         criterion_circle_equivalence},
        {"helix image constructions are circular helices passing the condition fit",
         criterion_helix_constructions},
        {"fixed Darboux direction detected and the collapsed construction fits",
         criterion_fixed_darboux},
        {"normal- and Darboux-image side-vector identities",
         criterion_identities},
        {"frame equation residuals converge at second order; frames orthonormal",
         criterion_frame_residuals},
        {"slant function vanishes on circular cases and matches the oracle",
         criterion_slant_function},
        {"jet derivatives match 4th-order central differences",
         criterion_jets_vs_differences},
    };

    int failures = 0;
    int id = 0;
    for (const Criterion& c : criteria) {
        ++id;
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        if (!out.pass) ++failures;
        std::printf("[%2d/10] %s  %s\n        %s\n", id, out.pass ? "PASS" : "FAIL", c.label,
                    out.detail.c_str());
    }
    std::printf("acceptance: %d of 10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
