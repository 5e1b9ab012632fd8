#include "curvelab/curve.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>

#include "curvelab/errors.hpp"

namespace curvelab::curve {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CurveDef from_exprs(std::string label, const std::string& param, const std::string& x,
                    const std::string& y, const std::string& z, double lo, double hi) {
    CurveDef c;
    c.label = std::move(label);
    c.param = param;
    c.components = {expr::parse(x, param), expr::parse(y, param), expr::parse(z, param)};
    c.t_lo = lo;
    c.t_hi = hi;
    return c;
}

}  // namespace

namespace detail {

CurveSample evaluate_unchecked(const CurveDef& c, double t) {
    CurveSample s;
    s.t = t;
    const expr::Jet3 jx = expr::eval_jet(c.components[0], t);
    const expr::Jet3 jy = expr::eval_jet(c.components[1], t);
    const expr::Jet3 jz = expr::eval_jet(c.components[2], t);
    s.p = {jx.v, jy.v, jz.v};
    s.d1 = {jx.d1, jy.d1, jz.d1};
    s.d2 = {jx.d2, jy.d2, jz.d2};
    s.d3 = {jx.d3, jy.d3, jz.d3};
    return s;
}

}  // namespace detail

CurveSample evaluate(const CurveDef& c, double t) {
    const double slack = 1e-9 * (1.0 + c.span());
    if (t < c.t_lo - slack || t > c.t_hi + slack) {
        throw OutOfRangeError("parameter " + std::to_string(t) + " outside domain [" +
                              std::to_string(c.t_lo) + ", " + std::to_string(c.t_hi) + "]");
    }
    return detail::evaluate_unchecked(c, t);
}

double speed(const CurveDef& c, double t) { return norm(evaluate(c, t).d1); }

numerics::CumulativeTable arclength_table(const CurveDef& c, int n,
                                          const numerics::QuadConfig& cfg) {
    return numerics::cumulative(
        [&c](double t) { return norm(detail::evaluate_unchecked(c, t).d1); }, c.t_lo, c.t_hi, n,
        cfg);
}

CurveDef catalog(const std::string& name, const std::vector<double>& params) {
    auto param_or = [&params](std::size_t i, double fallback) {
        return i < params.size() ? params[i] : fallback;
    };
    auto check_count = [&](std::size_t want) {
        if (!params.empty() && params.size() != want) {
            throw SpecError("catalog curve '" + name + "' takes " + std::to_string(want) +
                            " parameter(s), got " + std::to_string(params.size()));
        }
    };

    if (name == "paper-example") {
        check_count(0);
        return from_exprs(name, "s", "-cos(s)", "sin(s)^2 / 2", "sin(2*s)/4 + s/2", 0.0, kTwoPi);
    }
    if (name == "circular-helix") {
        check_count(2);
        const double a = param_or(0, 1.0), b = param_or(1, 1.0);
        return from_exprs(name + "(" + fmt17(a) + "," + fmt17(b) + ")", "t",
                          "(" + fmt17(a) + ")*cos(t)", "(" + fmt17(a) + ")*sin(t)",
                          "(" + fmt17(b) + ")*t", 0.0, kTwoPi);
    }
    if (name == "circle") {
        check_count(1);
        const double r = param_or(0, 1.0);
        return from_exprs(name + "(" + fmt17(r) + ")", "t", "(" + fmt17(r) + ")*cos(t)",
                          "(" + fmt17(r) + ")*sin(t)", "0", 0.0, kTwoPi);
    }
    if (name == "line") {
        check_count(0);
        return from_exprs(name, "t", "t", "0", "0", 0.0, kTwoPi);
    }
    throw UnknownCurveError("unknown catalog curve '" + name + "'");
}

std::vector<std::string> catalog_names() {
    return {"paper-example", "circular-helix", "circle", "line"};
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& s, int line, const char* key) {
    if (s.size() < 2 || s.front() != '"' || s.back() != '"') {
        throw SpecError("line " + std::to_string(line) + ": value of '" + key +
                        "' must be double-quoted");
    }
    return s.substr(1, s.size() - 2);
}

}  // namespace

CurveDef load_curve_spec(std::istream& in) {
    std::string label, param, xs, ys, zs;
    bool have_domain = false;
    double lo = 0.0, hi = 0.0;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw SpecError("line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "name") {
            label = unquote(value, lineno, "name");
        } else if (key == "param") {
            param = unquote(value, lineno, "param");
        } else if (key == "x") {
            xs = unquote(value, lineno, "x");
        } else if (key == "y") {
            ys = unquote(value, lineno, "y");
        } else if (key == "z") {
            zs = unquote(value, lineno, "z");
        } else if (key == "domain") {
            std::istringstream ss(value);
            if (!(ss >> lo >> hi)) {
                throw SpecError("line " + std::to_string(lineno) + ": domain needs two reals");
            }
            std::string rest;
            if (ss >> rest) {
                throw SpecError("line " + std::to_string(lineno) + ": domain needs exactly two reals");
            }
            have_domain = true;
        } else {
            throw SpecError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }

    if (param.empty()) throw SpecError("curve spec is missing 'param'");
    if (xs.empty() || ys.empty() || zs.empty()) {
        throw SpecError("curve spec is missing one of x/y/z");
    }
    if (!have_domain) throw SpecError("curve spec is missing 'domain'");
    if (!(lo < hi)) throw SpecError("curve spec domain must satisfy lo < hi");
    if (label.empty()) label = "unnamed";

    try {
        return from_exprs(label, param, xs, ys, zs, lo, hi);
    } catch (const SpecError&) {
        throw;
    }
}

CurveDef load_curve_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw SpecError("cannot open curve spec file '" + path + "'");
    }
    return load_curve_spec(in);
}

std::string describe(const CurveDef& c) {
    std::string out = c.label + "|" + c.param;
    for (const auto& comp : c.components) {
        out += "|" + expr::to_string(comp);
    }
    out += "|[" + fmt17(c.t_lo) + "," + fmt17(c.t_hi) + "]";
    return out;
}

}  // namespace curvelab::curve
