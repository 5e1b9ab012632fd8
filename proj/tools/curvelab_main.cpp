#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "curvelab/cli.hpp"
#include "curvelab/errors.hpp"

namespace {

using namespace curvelab;

constexpr const char* kGrammarHelp = R"help(Expression grammar (curve components):
  expr    := term (('+' | '-') term)*
  term    := unary (('*' | '/') unary)*
  unary   := '-' unary | power
  power   := primary ('^' unary)?          right-associative; -x^2 = -(x^2)
  primary := number | 'pi' | 'e' | variable | fn '(' expr ')' | '(' expr ')'
  fn      := sin cos tan exp log sqrt atan asin acos sinh cosh
Implicit multiplication is not accepted ('2t' must be written '2*t').

Curve-spec file (--spec FILE), one key = value per line, '#' comments:
  name   = "label"
  param  = "t"
  x      = "cos(t)"
  y      = "sin(t)"
  z      = "t / 3"
  domain = 0 6.283185307179586

Catalog entries (--catalog NAME[:p1,p2]):
  paper-example | circular-helix:a,b | circle:r | line
)help";

void write_file(const std::string& path, const std::string& payload) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw SpecError("cannot open output file '" + path + "'");
    }
    out << payload;
}

/// Artifact goes to --out (or stdout); the report goes to stdout (or stderr
/// when the artifact occupies stdout) and optionally to --json.
int emit(const cli::CommandResult& res, const std::string& out_path,
         const std::string& json_path) {
    if (!res.artifact.empty()) {
        if (out_path.empty()) {
            std::cout << res.artifact;
            report::print(res.report, std::cerr);
        } else {
            write_file(out_path, res.artifact);
            report::print(res.report, std::cout);
        }
    } else {
        report::print(res.report, std::cout);
    }
    if (!json_path.empty()) {
        write_file(json_path, report::to_json(res.report));
    }
    return res.report.any_fail() ? cli::kCheckFailed : cli::kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frenet frames, spherical images and Bertrand constructions for space curves"};
    app.set_version_flag("--version", report::kToolVersion);
    app.footer(kGrammarHelp);
    app.require_subcommand(1);

    cli::CurveInput input;
    int samples = 256;
    double tol = 1e-6;
    std::string out_path, json_path, which = "T", suite = "all", projection = "iso";
    std::string csv_path, cvec = "0,0,0";
    bertrand::BertrandParams params;

    auto add_curve_opts = [&](CLI::App* cmd) {
        cmd->add_option("--catalog", input.catalog, "catalog curve NAME[:p1,p2]");
        cmd->add_option("--spec", input.spec_file, "curve-spec file");
        cmd->add_option("--samples", samples, "sample count")->capture_default_str();
        cmd->add_option("--json", json_path, "write the run report as JSON");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "Frenet apparatus table and helix class");
    add_curve_opts(analyze);
    analyze->add_option("--tol", tol, "constancy tolerance")->capture_default_str();
    analyze->add_option("--out", out_path, "CSV output path (default stdout)");

    CLI::App* indicatrix = app.add_subcommand("indicatrix", "spherical image table");
    add_curve_opts(indicatrix);
    indicatrix->add_option("--which", which, "image selector: T, N, B or C")
        ->capture_default_str();
    indicatrix->add_option("--tol", tol, "circle-fit tolerance")->capture_default_str();
    indicatrix->add_option("--out", out_path, "CSV output path (default stdout)");

    CLI::App* bert = app.add_subcommand("bertrand", "construct the Bertrand curve of an image");
    add_curve_opts(bert);
    bert->add_option("--which", which, "image selector: T, N, B or C")->capture_default_str();
    bert->add_option("--a", params.a, "scale constant a")->capture_default_str();
    bert->add_option("--theta", params.theta, "angle constant theta (radians)")
        ->capture_default_str();
    bert->add_option("--c", cvec, "offset vector X,Y,Z")->capture_default_str();
    bert->add_option("--sigma0", params.sigma0, "lower integration limit")
        ->capture_default_str();
    bert->add_option("--tol", tol, "Bertrand-fit tolerance")->capture_default_str();
    bert->add_option("--out", out_path, "CSV output path (default stdout)");

    CLI::App* verify = app.add_subcommand("verify", "invariant suites; exit 0 iff no FAIL");
    add_curve_opts(verify);
    verify->add_option("--suite", suite, "all, identities, corollaries or frames")
        ->capture_default_str();
    verify->add_option("--tol", tol, "check tolerance")->capture_default_str();
    verify->add_option("--a", params.a, "construction constant a")->capture_default_str();
    verify->add_option("--theta", params.theta, "construction angle theta")
        ->capture_default_str();

    CLI::App* plot = app.add_subcommand("plot", "SVG projection of a curve or CSV");
    add_curve_opts(plot);
    plot->add_option("--csv", csv_path, "plot columns x,y,z or gx,gy,gz of this CSV");
    plot->add_option("--projection", projection, "xy, xz, yz or iso")->capture_default_str();
    plot->add_option("--out", out_path, "SVG output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kSpecError;
    }

    try {
        if (analyze->parsed()) {
            return emit(cli::cmd_analyze(input, samples, tol), out_path, json_path);
        }
        if (indicatrix->parsed()) {
            return emit(cli::cmd_indicatrix(input, spherical::which_from_string(which), samples,
                                            tol),
                        out_path, json_path);
        }
        if (bert->parsed()) {
            const auto c = cli::cmd_bertrand;
            std::vector<double> cv;
            {
                std::istringstream ss(cvec);
                std::string tok;
                while (std::getline(ss, tok, ',')) cv.push_back(std::stod(tok));
            }
            if (cv.size() != 3) {
                throw SpecError("--c must carry three comma-separated reals");
            }
            params.c = Vec3{cv[0], cv[1], cv[2]};
            return emit(c(input, spherical::which_from_string(which), params, samples, tol),
                        out_path, json_path);
        }
        if (verify->parsed()) {
            return emit(cli::cmd_verify(input, suite, tol, params, samples), out_path, json_path);
        }
        if (plot->parsed()) {
            if (!csv_path.empty()) {
                std::ifstream in(csv_path, std::ios::binary);
                if (!in) {
                    throw SpecError("cannot open CSV file '" + csv_path + "'");
                }
                std::ostringstream buf;
                buf << in.rdbuf();
                return emit(cli::cmd_plot_csv(buf.str(), svg::projection_from_string(projection),
                                              csv_path),
                            out_path, json_path);
            }
            return emit(cli::cmd_plot_curve(input, svg::projection_from_string(projection),
                                            samples),
                        out_path, json_path);
        }
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kSpecError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kSpecError;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return cli::kNumericError;
    }
    return cli::kSpecError;
}
