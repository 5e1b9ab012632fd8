#include "curvelab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "curvelab/errors.hpp"
#include "curvelab/frenet.hpp"
#include "curvelab/numerics.hpp"

namespace curvelab::cli {

using bertrand::BertrandParams;
using curve::CurveDef;
using frenet::FrenetSample;
using report::RunReport;
using spherical::Indicatrix;
using spherical::Which;

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string f17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<double> split_reals(const std::string& text, const char* what) {
    std::vector<double> out;
    std::string token;
    std::istringstream ss(text);
    while (std::getline(ss, token, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(token, &used));
            while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) {
                ++used;
            }
            if (used != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw SpecError(std::string("cannot parse ") + what + " value '" + token + "'");
        }
    }
    return out;
}

int require_samples(int samples) {
    if (samples < 8 || samples > 2'000'000) {
        throw SpecError("--samples must be between 8 and 2000000");
    }
    return samples;
}

}  // namespace

CurveDef resolve_curve(const CurveInput& in) {
    const bool have_catalog = !in.catalog.empty();
    const bool have_file = !in.spec_file.empty();
    if (have_catalog == have_file) {
        throw SpecError("select a curve with exactly one of --catalog or --spec");
    }
    if (have_file) {
        return curve::load_curve_spec_file(in.spec_file);
    }
    const auto colon = in.catalog.find(':');
    const std::string name = in.catalog.substr(0, colon);
    std::vector<double> params;
    if (colon != std::string::npos) {
        params = split_reals(in.catalog.substr(colon + 1), "--catalog parameter");
    }
    return curve::catalog(name, params);
}

// ---------------------------------------------------------------------------
// analyze

CommandResult cmd_analyze(const CurveInput& in, int samples, double tol) {
    require_samples(samples);
    const CurveDef c = resolve_curve(in);

    CommandResult res;
    res.report.command = "analyze " + c.label;
    res.report.input_digest = report::digest(curve::describe(c));

    std::string& csv = res.artifact;
    csv = "t,s,x,y,z,Tx,Ty,Tz,Nx,Ny,Nz,Bx,By,Bz,kappa,tau,psi\n";
    const numerics::CumulativeTable arc = curve::arclength_table(c, samples);
    for (int i = 0; i < samples; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        const double t = arc.grid[k];
        const curve::CurveSample p = curve::evaluate(c, t);
        const frenet::detail::Frame f = frenet::detail::frame_at_unchecked(c, t);
        const double psi = frenet::slant_psi(c, t);
        const double row[17] = {t,      arc.values[k], p.p.x, p.p.y, p.p.z, f.T.x,  f.T.y,
                                f.T.z,  f.N.x,         f.N.y, f.N.z, f.B.x, f.B.y,  f.B.z,
                                f.kappa, f.tau,        psi};
        for (int j = 0; j < 17; ++j) {
            if (j) csv += ',';
            csv += f17(row[j]);
        }
        csv += '\n';
    }

    const frenet::HelixReport rep = frenet::classify_helix(c, std::min(samples, 256), tol);
    res.report.add("classification", CheckStatus::Pass, 0.0, tol,
                   frenet::to_string(rep.kind));
    res.report.add("kappa.spread", CheckStatus::Pass, rep.kappa_spread, tol,
                   "mean " + f17(rep.kappa_mean));
    res.report.add("tau.spread", CheckStatus::Pass, rep.tau_spread, tol,
                   "mean " + f17(rep.tau_mean));
    res.report.add("psi.spread", CheckStatus::Pass, rep.psi_spread, tol,
                   "mean " + f17(rep.psi_mean));
    if (rep.axis) {
        res.report.add("axis", CheckStatus::Pass, 0.0, 0.0,
                       "(" + f17(rep.axis->x) + ", " + f17(rep.axis->y) + ", " +
                           f17(rep.axis->z) + ")");
    }
    if (rep.failed_samples > 0) {
        res.report.add("undefined-frames", CheckStatus::Skip,
                       static_cast<double>(rep.failed_samples), 0.0, rep.failure_note);
    }
    return res;
}

// ---------------------------------------------------------------------------
// indicatrix

CommandResult cmd_indicatrix(const CurveInput& in, Which which, int samples, double tol) {
    require_samples(samples);
    const CurveDef c = resolve_curve(in);

    CommandResult res;
    res.report.command = std::string("indicatrix ") + spherical::to_string(which) + " " + c.label;
    res.report.input_digest = report::digest(curve::describe(c));
    std::string& csv = res.artifact;
    csv = "sigma,gx,gy,gz,kappa_g\n";

    try {
        const Indicatrix img(c, which, samples);
        for (int i = 0; i < samples; ++i) {
            const double t = img.sigma_table().grid[static_cast<std::size_t>(i)];
            const Vec3 g = img.point_at(t);
            double kappa_g = kNan;
            try {
                kappa_g = img.sabban_at(t).kappa_g;
            } catch (const NumericError&) {
                // stalled point; the position is still well defined
            }
            const double sigma = img.sigma_table().values[static_cast<std::size_t>(i)];
            csv += f17(sigma);
            csv += ',';
            csv += f17(g.x);
            csv += ',';
            csv += f17(g.y);
            csv += ',';
            csv += f17(g.z);
            csv += ',';
            csv += f17(kappa_g);
            csv += '\n';
        }
        const spherical::CircleFit fit = spherical::circle_fit(img, std::min(samples, 512));
        res.report.add("image.total_arclength", CheckStatus::Pass, img.sigma_hi(), 0.0);
        res.report.add("circle_fit.rms", CheckStatus::Pass, fit.rms_residual, tol,
                       fit.rms_residual <= tol ? "image is a circle at this tolerance"
                                               : "image is not a circle at this tolerance");
        res.report.add("circle_fit.cos_angle", CheckStatus::Pass, fit.cos_angle, 0.0,
                       "axis (" + f17(fit.axis.x) + ", " + f17(fit.axis.y) + ", " +
                           f17(fit.axis.z) + ")");
    } catch (const DegenerateIndicatrixError& e) {
        res.report.add(std::string("indicatrix.") + spherical::to_string(which),
                       CheckStatus::Skip, 0.0, 0.0, e.what());
    }
    return res;
}

// ---------------------------------------------------------------------------
// bertrand

CommandResult cmd_bertrand(const CurveInput& in, Which which, const BertrandParams& params,
                           int samples, double tol) {
    require_samples(samples);
    const CurveDef c = resolve_curve(in);

    CommandResult res;
    res.report.command = std::string("bertrand ") + spherical::to_string(which) + " " + c.label;
    res.report.input_digest = report::digest(curve::describe(c));
    std::string& csv = res.artifact;
    csv = "sigma,x,y,z,kappa,tau\n";

    try {
        const bertrand::ConstructedCurve cc =
            bertrand::bertrand_from_indicatrix(c, which, params, samples);
        for (const auto& s : cc.samples) {
            const double row[6] = {s.sigma, s.position.x, s.position.y,
                                   s.position.z, s.frame_ok ? s.kappa : kNan,
                                   s.frame_ok ? s.tau : kNan};
            for (int j = 0; j < 6; ++j) {
                if (j) csv += ',';
                csv += f17(row[j]);
            }
            csv += '\n';
        }

        const bool degenerate_theta = std::abs(params.cot_theta()) <= 1e-12;
        const bertrand::BertrandFit fit = bertrand::fit_bertrand_condition(cc);
        std::string note;
        if (fit.rank_deficient) {
            note = "rank-deficient: family " + f17(fit.family_kappa) + " A + " +
                   f17(fit.family_tau) + " B = 1; minimum-norm member reported";
        }
        if (degenerate_theta) {
            note += (note.empty() ? "" : "; ");
            note +=
                "theta = pi/2: partner term vanishes, condition reported without assertion";
        }
        res.report.add("fit.A", CheckStatus::Pass, fit.A, 0.0, note);
        res.report.add("fit.B", CheckStatus::Pass, fit.B, 0.0);
        res.report.add("fit.residual",
                       degenerate_theta ? CheckStatus::Skip
                                        : (fit.residual <= tol ? CheckStatus::Pass
                                                               : CheckStatus::Fail),
                       fit.residual, tol);
        const frenet::HelixReport kind =
            frenet::classify_samples(cc.kappas(), cc.taus(), {}, tol);
        res.report.add("constructed.classification", CheckStatus::Pass, 0.0, tol,
                       frenet::to_string(kind.kind));
    } catch (const DegenerateIndicatrixError& e) {
        res.report.add(std::string("bertrand.") + spherical::to_string(which), CheckStatus::Skip,
                       0.0, 0.0, e.what());
    }
    return res;
}

// ---------------------------------------------------------------------------
// verify

namespace {

void verify_frames(const CurveDef& c, RunReport& rep, int samples) {
    const int n = std::min(samples, 256);
    double gram = 0.0, handed = 0.0;
    int defined = 0;
    for (int i = 0; i < n; ++i) {
        const double t = c.t_lo + (i + 0.5) * c.span() / n;
        try {
            const frenet::detail::Frame f = frenet::detail::frame_at_unchecked(c, t);
            gram = std::max({gram, std::abs(norm(f.T) - 1.0), std::abs(norm(f.N) - 1.0),
                             std::abs(norm(f.B) - 1.0), std::abs(dot(f.T, f.N)),
                             std::abs(dot(f.T, f.B)), std::abs(dot(f.N, f.B))});
            handed = std::max(handed, std::abs(det3(f.T, f.N, f.B) - 1.0));
            ++defined;
        } catch (const NumericError&) {
        }
    }
    if (defined == 0) {
        rep.add("frames.orthonormality", CheckStatus::Skip, kNan, 1e-9, "frame undefined");
        return;
    }
    rep.add("frames.orthonormality", gram <= 1e-9 ? CheckStatus::Pass : CheckStatus::Fail, gram,
            1e-9);
    rep.add("frames.right-handed", handed <= 1e-9 ? CheckStatus::Pass : CheckStatus::Fail,
            handed, 1e-9);

    // Residuals of the frame equations at two steps; second-order means the
    // max residual shrinks about 4x when the step halves.
    const double h = 1e-3 * c.span() / (2.0 * std::numbers::pi);
    double r1 = 0.0, r2 = 0.0, worst_t = c.t_lo + 0.5 * c.span();
    for (int i = 0; i < 16; ++i) {
        const double t = c.t_lo + (i + 0.5) * c.span() / 16.0;
        try {
            const double r = frenet::frenet_ode_residual(c, t, h);
            if (r > r1) {
                r1 = r;
                worst_t = t;
            }
        } catch (const NumericError&) {
        }
    }
    try {
        r2 = frenet::frenet_ode_residual(c, worst_t, 0.5 * h);
        const double small = frenet::frenet_ode_residual(c, worst_t, 0.1 * h);
        rep.add("frames.ode-residual", small <= 1e-6 ? CheckStatus::Pass : CheckStatus::Fail,
                small, 1e-6, "step " + std::to_string(0.1 * h));
        const double ratio = r1 / r2;
        rep.add("frames.ode-convergence",
                (ratio >= 3.5 && ratio <= 4.5) ? CheckStatus::Pass : CheckStatus::Fail, ratio,
                0.0, "expected in [3.5, 4.5]");
    } catch (const NumericError& e) {
        rep.add("frames.ode-residual", CheckStatus::Skip, kNan, 1e-6, e.what());
    }

    // Sabban frame residuals on the tangent image.
    try {
        const Indicatrix img(c, Which::T, 129);
        auto residual = [&img](double sigma, double hh) {
            const spherical::SabbanSample s0 = img.sabban(sigma);
            const spherical::SabbanSample sp = img.sabban(sigma + hh);
            const spherical::SabbanSample sm = img.sabban(sigma - hh);
            const Vec3 dgamma = (sp.gamma - sm.gamma) / (2.0 * hh);
            const Vec3 dt = (sp.tvec - sm.tvec) / (2.0 * hh);
            const Vec3 dside = (sp.side - sm.side) / (2.0 * hh);
            return std::max({norm(dgamma - s0.tvec),
                             norm(dt + s0.gamma - s0.kappa_g * s0.side),
                             norm(dside + s0.kappa_g * s0.tvec)});
        };
        const double mid = 0.5 * img.sigma_hi();
        const double hh = 1e-3;
        const double a = residual(mid, hh);
        const double b = residual(mid, 0.5 * hh);
        const double ratio = a / b;
        rep.add("sabban.residual", a <= 1e-4 ? CheckStatus::Pass : CheckStatus::Fail, a, 1e-4,
                "step 1e-3 at mid arclength");
        rep.add("sabban.residual-convergence",
                (ratio >= 3.5 && ratio <= 4.5) ? CheckStatus::Pass : CheckStatus::Fail, ratio,
                0.0, "expected in [3.5, 4.5]");
    } catch (const DegenerateIndicatrixError& e) {
        rep.add("sabban.residual", CheckStatus::Skip, kNan, 1e-4, e.what());
    }
}

void verify_identities(const CurveDef& c, RunReport& rep, double tol, int samples) {
    const int n = std::min(samples, 128);
    // side vector of the normal image reproduces the normalized Darboux vector
    try {
        const Indicatrix img(c, Which::N, 129);
        double worst = 0.0;
        int used = 0;
        for (int i = 0; i < n; ++i) {
            const double t = c.t_lo + (i + 0.5) * c.span() / n;
            try {
                const frenet::detail::Frame f = frenet::detail::frame_at_unchecked(c, t);
                const Vec3 cvec = normalized(f.tau * f.T + f.kappa * f.B);
                worst = std::max(worst, norm(img.sabban_at(t).side - cvec));
                ++used;
            } catch (const NumericError&) {
            }
        }
        rep.add("identity.normal-image-side-is-darboux",
                used > 0 && worst <= tol ? CheckStatus::Pass : CheckStatus::Fail, worst, tol,
                std::to_string(used) + " samples");
    } catch (const DegenerateIndicatrixError& e) {
        rep.add("identity.normal-image-side-is-darboux", CheckStatus::Skip, kNan, tol, e.what());
    }

    // side vector of the Darboux image is +-N with the sign of (tau/kappa)'
    try {
        const Indicatrix img(c, Which::C, 129);
        double max_weight = 0.0;
        for (int i = 0; i < n; ++i) {
            const double t = c.t_lo + (i + 0.5) * c.span() / n;
            try {
                max_weight = std::max(max_weight, img.weight_at(t));
            } catch (const NumericError&) {
            }
        }
        double worst = 0.0;
        int used = 0;
        for (int i = 0; i < n; ++i) {
            const double t = c.t_lo + (i + 0.5) * c.span() / n;
            try {
                if (img.weight_at(t) < 1e-3 * max_weight) continue;  // sign not resolvable
                const double sign = frenet::slant_psi(c, t) >= 0.0 ? 1.0 : -1.0;
                const frenet::detail::Frame f = frenet::detail::frame_at_unchecked(c, t);
                worst = std::max(worst, norm(img.sabban_at(t).side - sign * f.N));
                ++used;
            } catch (const NumericError&) {
            }
        }
        if (used < 8) {
            rep.add("identity.darboux-image-side-is-signed-normal", CheckStatus::Skip, kNan, tol,
                    "too few samples away from ratio-derivative zeros");
        } else {
            rep.add("identity.darboux-image-side-is-signed-normal",
                    worst <= tol ? CheckStatus::Pass : CheckStatus::Fail, worst, tol,
                    std::to_string(used) + " samples");
        }
    } catch (const DegenerateIndicatrixError& e) {
        rep.add("identity.darboux-image-side-is-signed-normal", CheckStatus::Skip, kNan, tol,
                e.what());
    }
}

}  // namespace

CommandResult cmd_verify(const CurveInput& in, const std::string& suite, double tol,
                         const BertrandParams& params, int samples) {
    require_samples(samples);
    if (suite != "all" && suite != "identities" && suite != "corollaries" && suite != "frames") {
        throw SpecError("--suite must be one of all, identities, corollaries, frames");
    }
    const CurveDef c = resolve_curve(in);
    CommandResult res;
    res.report.command = "verify " + suite + " " + c.label;
    res.report.input_digest = report::digest(curve::describe(c));

    if (suite == "all" || suite == "frames") {
        verify_frames(c, res.report, samples);
    }
    if (suite == "all" || suite == "identities") {
        verify_identities(c, res.report, tol, samples);
    }
    if (suite == "all" || suite == "corollaries") {
        const bertrand::CorollaryReport cr = bertrand::verify_corollaries(c, params, tol,
                                                                          std::min(samples, 512));
        for (const auto& row : cr.rows) {
            res.report.checks.push_back(row);
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// plot

CommandResult cmd_plot_curve(const CurveInput& in, svg::Projection proj, int samples) {
    require_samples(samples);
    const CurveDef c = resolve_curve(in);
    std::vector<Vec3> pts;
    pts.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        const double t = c.t_lo + c.span() * i / (samples - 1);
        pts.push_back(curve::evaluate(c, t).p);
    }
    CommandResult res;
    res.report.command = std::string("plot ") + svg::to_string(proj) + " " + c.label;
    res.report.input_digest = report::digest(curve::describe(c));
    res.artifact = svg::render_polyline(pts, proj, c.label);
    res.report.add("plot.points", CheckStatus::Pass, static_cast<double>(pts.size()), 0.0);
    return res;
}

CommandResult cmd_plot_csv(const std::string& csv_text, svg::Projection proj,
                           const std::string& title) {
    std::istringstream ss(csv_text);
    std::string header;
    if (!std::getline(ss, header)) {
        throw SpecError("CSV input is empty");
    }
    std::vector<std::string> cols;
    {
        std::string col;
        std::istringstream hs(header);
        while (std::getline(hs, col, ',')) cols.push_back(col);
    }
    auto find_col = [&cols](const std::string& name) -> int {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (cols[i] == name) return static_cast<int>(i);
        }
        return -1;
    };
    int ix = find_col("x"), iy = find_col("y"), iz = find_col("z");
    if (ix < 0 || iy < 0 || iz < 0) {
        ix = find_col("gx");
        iy = find_col("gy");
        iz = find_col("gz");
    }
    if (ix < 0 || iy < 0 || iz < 0) {
        throw SpecError("CSV header must carry columns x,y,z or gx,gy,gz");
    }

    std::vector<Vec3> pts;
    std::string line;
    int lineno = 1;
    while (std::getline(ss, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<double> row;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw SpecError("CSV line " + std::to_string(lineno) + ": bad number '" + cell +
                                "'");
            }
        }
        if (row.size() != cols.size()) {
            throw SpecError("CSV line " + std::to_string(lineno) + ": expected " +
                            std::to_string(cols.size()) + " cells");
        }
        pts.push_back(Vec3{row[static_cast<std::size_t>(ix)], row[static_cast<std::size_t>(iy)],
                           row[static_cast<std::size_t>(iz)]});
    }
    CommandResult res;
    res.report.command = std::string("plot ") + svg::to_string(proj) + " (csv)";
    res.report.input_digest = report::digest(csv_text);
    res.artifact = svg::render_polyline(pts, proj, title);
    res.report.add("plot.points", CheckStatus::Pass, static_cast<double>(pts.size()), 0.0);
    return res;
}

}  // namespace curvelab::cli
