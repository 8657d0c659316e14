#include "painleve/equations.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "painleve/error.hpp"

namespace painleve::equations {

namespace {

struct EqInfo {
    EquationId id;
    const char* name;
    std::vector<Param> schema;
};

const std::vector<EqInfo>& registry() {
    using P = Param;
    static const std::vector<EqInfo> r = {
        {EquationId::PI, "PI", {}},
        {EquationId::PII, "PII", {P::alpha}},
        {EquationId::PIII6, "PIII6", {P::alpha, P::beta, P::gamma, P::delta}},
        {EquationId::PIII7a, "PIII7a", {P::alpha, P::beta, P::delta}},
        {EquationId::PIII7b, "PIII7b", {P::alpha, P::beta, P::gamma}},
        {EquationId::PIII8, "PIII8", {P::alpha, P::beta}},
        {EquationId::PIV, "PIV", {P::alpha, P::beta}},
        {EquationId::PV, "PV", {P::alpha, P::beta, P::gamma, P::delta}},
        {EquationId::PVDEG, "PVDEG", {P::alpha, P::beta, P::gamma}},
        {EquationId::PVI, "PVI", {P::alpha, P::beta, P::gamma, P::delta}},
        {EquationId::P34, "P34", {P::alpha}},
        {EquationId::SI, "SI", {}},
        {EquationId::SII, "SII", {P::beta}},
        {EquationId::SIII, "SIII", {P::theta0, P::theta_inf}},
        {EquationId::SIV, "SIV", {P::theta0, P::theta_inf}},
        {EquationId::SV, "SV", {P::kappa1, P::kappa2, P::kappa3, P::kappa4}},
        {EquationId::SVI, "SVI", {P::kappa1, P::kappa2, P::kappa3, P::kappa4}},
    };
    return r;
}

const EqInfo& info(EquationId id) {
    for (const auto& e : registry())
        if (e.id == id) return e;
    throw InternalError("unknown equation id");
}

void nonzero(double d, const char* what, double z) {
    if (d == 0.0 || !std::isfinite(d))
        throw SingularInput(std::string("denominator ") + what + " vanishes at z = " + std::to_string(z));
}

template <class T>
T f_pi(T z, T w) {
    return T(6) * w * w + z;
}

template <class T>
T f_pii(double alpha, T z, T w) {
    return T(2) * w * w * w + z * w + T(alpha);
}

template <class T>
T f_p34(double alpha, T z, T p, T dp) {
    const double a = (alpha + 0.5) * (alpha + 0.5);
    return dp * dp / (T(2) * p) + T(2) * p * p - z * p - T(a) / (T(2) * p);
}

double f_piii(double a, double b, double g, double d, double z, double w, double dw) {
    nonzero(w, "w", z);
    nonzero(z, "z", z);
    return dw * dw / w - dw / z + (a * w * w + b) / z + g * w * w * w + d / w;
}

double f_pv(double a, double b, double g, double d, double z, double w, double dw) {
    nonzero(w, "w", z);
    nonzero(w - 1.0, "w - 1", z);
    nonzero(z, "z", z);
    const double wm1 = w - 1.0;
    return (0.5 / w + 1.0 / wm1) * dw * dw - dw / z + wm1 * wm1 / (z * z) * (a * w + b / w) + g * w / z +
           d * w * (w + 1.0) / wm1;
}

double f_pvi(double a, double b, double g, double d, double z, double w, double dw) {
    nonzero(w, "w", z);
    nonzero(w - 1.0, "w - 1", z);
    nonzero(w - z, "w - z", z);
    nonzero(z, "z", z);
    nonzero(z - 1.0, "z - 1", z);
    const double wm1 = w - 1.0, wmz = w - z, zm1 = z - 1.0;
    const double braces = a + b * z / (w * w) + g * zm1 / (wm1 * wm1) + d * z * zm1 / (wmz * wmz);
    return 0.5 * (1.0 / w + 1.0 / wm1 + 1.0 / wmz) * dw * dw - (1.0 / z + 1.0 / zm1 + 1.0 / wmz) * dw +
           w * wm1 * wmz / (z * z * zm1 * zm1) * braces;
}

double pv(const ParamSet& p, Param k) { return p.get(k); }

}  // namespace

// ---- names ---------------------------------------------------------------

std::string to_string(EquationId id) { return info(id).name; }

EquationId equation_from_string(const std::string& name) {
    for (const auto& e : registry())
        if (name == e.name) return e.id;
    std::string upper = name;
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
    for (const auto& e : registry()) {
        std::string en = e.name;
        std::transform(en.begin(), en.end(), en.begin(), [](unsigned char c) { return std::toupper(c); });
        if (upper == en) return e.id;
    }
    throw ParameterError("unknown equation '" + name + "'");
}

const std::vector<EquationId>& all_equations() {
    static const std::vector<EquationId> ids = [] {
        std::vector<EquationId> v;
        for (const auto& e : registry()) v.push_back(e.id);
        return v;
    }();
    return ids;
}

bool is_sigma(EquationId id) {
    switch (id) {
        case EquationId::SI:
        case EquationId::SII:
        case EquationId::SIII:
        case EquationId::SIV:
        case EquationId::SV:
        case EquationId::SVI:
            return true;
        default:
            return false;
    }
}

std::string to_string(Param p) {
    static const char* names[kParamCount] = {"alpha",     "beta",   "gamma",  "delta",  "theta0",
                                             "theta_inf", "kappa1", "kappa2", "kappa3", "kappa4"};
    return names[static_cast<int>(p)];
}

Param param_from_string(const std::string& name) {
    static const std::map<std::string, Param> m = {
        {"alpha", Param::alpha},     {"beta", Param::beta},         {"gamma", Param::gamma},
        {"delta", Param::delta},     {"theta0", Param::theta0},     {"theta_inf", Param::theta_inf},
        {"thetainf", Param::theta_inf}, {"theta-inf", Param::theta_inf}, {"kappa1", Param::kappa1},
        {"kappa2", Param::kappa2},   {"kappa3", Param::kappa3},     {"kappa4", Param::kappa4},
    };
    auto it = m.find(name);
    if (it == m.end()) throw ParameterError("unknown parameter '" + name + "'");
    return it->second;
}

// ---- ParamSet --------------------------------------------------------------

ParamSet::ParamSet(std::initializer_list<std::pair<Param, double>> init) {
    for (const auto& [k, v] : init) set(k, v);
}

ParamSet& ParamSet::set(Param p, double v) {
    values_[static_cast<int>(p)] = v;
    return *this;
}

double ParamSet::get(Param p) const {
    const auto& v = values_[static_cast<int>(p)];
    if (!v) throw ParameterError("parameter '" + to_string(p) + "' is not set");
    return *v;
}

double ParamSet::get_or(Param p, double fallback) const {
    const auto& v = values_[static_cast<int>(p)];
    return v ? *v : fallback;
}

std::vector<std::pair<Param, double>> ParamSet::entries() const {
    std::vector<std::pair<Param, double>> out;
    for (int i = 0; i < kParamCount; ++i)
        if (values_[i]) out.emplace_back(static_cast<Param>(i), *values_[i]);
    return out;
}

const std::vector<Param>& schema(EquationId id) { return info(id).schema; }

void validate(EquationId id, const ParamSet& p) {
    const auto& sch = schema(id);
    for (Param k : sch) {
        if (!p.has(k)) throw ParameterError(to_string(id) + ": missing parameter '" + to_string(k) + "'");
        if (!std::isfinite(p.get(k)))
            throw ParameterError(to_string(id) + ": parameter '" + to_string(k) + "' is not finite");
    }
    for (const auto& [k, v] : p.entries()) {
        (void)v;
        if (std::find(sch.begin(), sch.end(), k) == sch.end())
            throw ParameterError(to_string(id) + ": parameter '" + to_string(k) + "' is not in the schema");
    }
    auto need = [&](bool ok, const char* cond) {
        if (!ok) throw ParameterError(to_string(id) + ": requires " + cond);
    };
    using P = Param;
    switch (id) {
        case EquationId::PIII6: need(p.get(P::gamma) * p.get(P::delta) != 0.0, "gamma*delta != 0"); break;
        case EquationId::PIII7a: need(p.get(P::alpha) * p.get(P::delta) != 0.0, "alpha*delta != 0"); break;
        case EquationId::PIII7b: need(p.get(P::beta) * p.get(P::gamma) != 0.0, "beta*gamma != 0"); break;
        case EquationId::PIII8: need(p.get(P::alpha) * p.get(P::beta) != 0.0, "alpha*beta != 0"); break;
        case EquationId::PV: need(p.get(P::delta) != 0.0, "delta != 0"); break;
        case EquationId::PVDEG: need(p.get(P::gamma) != 0.0, "gamma != 0"); break;
        default: break;
    }
}

// ---- right-hand sides --------------------------------------------------------

double second_derivative(EquationId eq, const ParamSet& p, double z, double w, double dw) {
    using P = Param;
    switch (eq) {
        case EquationId::PI: return f_pi(z, w);
        case EquationId::PII: return f_pii(pv(p, P::alpha), z, w);
        case EquationId::PIII6:
            return f_piii(pv(p, P::alpha), pv(p, P::beta), pv(p, P::gamma), pv(p, P::delta), z, w, dw);
        case EquationId::PIII7a: return f_piii(pv(p, P::alpha), pv(p, P::beta), 0.0, pv(p, P::delta), z, w, dw);
        case EquationId::PIII7b: return f_piii(pv(p, P::alpha), pv(p, P::beta), pv(p, P::gamma), 0.0, z, w, dw);
        case EquationId::PIII8: return f_piii(pv(p, P::alpha), pv(p, P::beta), 0.0, 0.0, z, w, dw);
        case EquationId::PIV: {
            nonzero(w, "w", z);
            const double a = pv(p, P::alpha), b = pv(p, P::beta);
            return dw * dw / (2.0 * w) + 1.5 * w * w * w + 4.0 * z * w * w + 2.0 * (z * z - a) * w + b / w;
        }
        case EquationId::PV:
            return f_pv(pv(p, P::alpha), pv(p, P::beta), pv(p, P::gamma), pv(p, P::delta), z, w, dw);
        case EquationId::PVDEG: return f_pv(pv(p, P::alpha), pv(p, P::beta), pv(p, P::gamma), 0.0, z, w, dw);
        case EquationId::PVI:
            return f_pvi(pv(p, P::alpha), pv(p, P::beta), pv(p, P::gamma), pv(p, P::delta), z, w, dw);
        case EquationId::P34:
            nonzero(w, "p", z);
            return f_p34(pv(p, P::alpha), z, w, dw);
        default:
            throw ParameterError(to_string(eq) + " is a sigma-equation; use sigma_second_derivative");
    }
}

double residual(EquationId eq, const ParamSet& p, double z, double w, double dw, double d2w) {
    return d2w - second_derivative(eq, p, z, w, dw);
}

std::pair<double, double> rhs(EquationId eq, const ParamSet& p, const State2& s) {
    return {s.dw, second_derivative(eq, p, s.z, s.w, s.dw)};
}

std::complex<double> second_derivative(EquationId eq, const ParamSet& p, std::complex<double> z,
                                       std::complex<double> w, std::complex<double> dw) {
    switch (eq) {
        case EquationId::PI: return f_pi(z, w);
        case EquationId::PII: return f_pii(p.get(Param::alpha), z, w);
        case EquationId::P34:
            if (w == 0.0) throw SingularInput("denominator p vanishes");
            return f_p34(p.get(Param::alpha), z, w, dw);
        default: throw DomainError("complex evaluation is supported for PI, PII and P34 only");
    }
}

std::complex<double> residual(EquationId eq, const ParamSet& p, std::complex<double> z, std::complex<double> w,
                              std::complex<double> dw, std::complex<double> d2w) {
    return d2w - second_derivative(eq, p, z, w, dw);
}

// ---- sigma-equations ---------------------------------------------------------

namespace {

double kappa_product(const ParamSet& p, double ds, bool squared) {
    double prod = 1.0;
    for (Param k : {Param::kappa1, Param::kappa2, Param::kappa3, Param::kappa4}) {
        const double kv = p.get(k);
        prod *= ds + (squared ? kv * kv : kv);
    }
    return prod;
}

double kappa_all(const ParamSet& p) {
    return p.get(Param::kappa1) * p.get(Param::kappa2) * p.get(Param::kappa3) * p.get(Param::kappa4);
}

}  // namespace

double sigma_residual(EquationId eq, const ParamSet& p, double z, double s, double ds, double d2s) {
    switch (eq) {
        case EquationId::SI: return d2s * d2s + 4.0 * ds * ds * ds + 2.0 * z * ds - 2.0 * s;
        case EquationId::SII: {
            const double b = p.get(Param::beta);
            return d2s * d2s + 4.0 * ds * ds * ds + 2.0 * ds * (z * ds - s) - 0.25 * b * b;
        }
        case EquationId::SIII: {
            const double t0 = p.get(Param::theta0), ti = p.get(Param::theta_inf);
            const double a = z * d2s - ds;
            return a * a + (4.0 * ds * ds - z * z) * (z * ds - 2.0 * s) + 4.0 * z * ti * ds - 2.0 * t0 * z * z;
        }
        case EquationId::SIV: {
            const double t0 = p.get(Param::theta0), ti = p.get(Param::theta_inf);
            const double a = z * ds - s;
            return d2s * d2s - 4.0 * a * a + 4.0 * ds * (ds + 2.0 * t0) * (ds + 2.0 * ti);
        }
        case EquationId::SV: {
            const double a = z * d2s;
            const double b = 2.0 * ds * ds - z * ds + s;
            return a * a - b * b + 4.0 * kappa_product(p, ds, false);
        }
        case EquationId::SVI: {
            if (z == 0.0 || z == 1.0) throw SingularInput("SVI: z must avoid the fixed singular points 0 and 1");
            const double a = z * (z - 1.0) * d2s;
            const double b = ds * (2.0 * s - (2.0 * z - 1.0) * ds) + kappa_all(p);
            return ds * a * a + b * b - kappa_product(p, ds, true);
        }
        default: throw ParameterError(to_string(eq) + " is not a sigma-equation");
    }
}

double sigma_second_derivative(EquationId eq, const ParamSet& p, double z, double s, double ds, int branch) {
    const double sg = branch >= 0 ? 1.0 : -1.0;
    auto root = [&](double r) {
        if (r < 0.0) {
            if (r > -1e-14) return 0.0;
            throw DomainError(to_string(eq) + ": negative radicand, no real s''");
        }
        return std::sqrt(r);
    };
    switch (eq) {
        case EquationId::SI: return sg * root(-4.0 * ds * ds * ds - 2.0 * z * ds + 2.0 * s);
        case EquationId::SII: {
            const double b = p.get(Param::beta);
            return sg * root(0.25 * b * b - 4.0 * ds * ds * ds - 2.0 * ds * (z * ds - s));
        }
        case EquationId::SIII: {
            if (z == 0.0) throw SingularInput("SIII: z = 0");
            const double t0 = p.get(Param::theta0), ti = p.get(Param::theta_inf);
            const double r = 2.0 * t0 * z * z - 4.0 * z * ti * ds - (4.0 * ds * ds - z * z) * (z * ds - 2.0 * s);
            return (ds + sg * root(r)) / z;
        }
        case EquationId::SIV: {
            const double t0 = p.get(Param::theta0), ti = p.get(Param::theta_inf);
            const double a = z * ds - s;
            return sg * root(4.0 * a * a - 4.0 * ds * (ds + 2.0 * t0) * (ds + 2.0 * ti));
        }
        case EquationId::SV: {
            if (z == 0.0) throw SingularInput("SV: z = 0");
            const double b = 2.0 * ds * ds - z * ds + s;
            return sg * root(b * b - 4.0 * kappa_product(p, ds, false)) / z;
        }
        case EquationId::SVI: {
            if (z == 0.0 || z == 1.0) throw SingularInput("SVI: z must avoid the fixed singular points 0 and 1");
            if (ds == 0.0) throw SingularInput("SVI: s' = 0");
            const double b = ds * (2.0 * s - (2.0 * z - 1.0) * ds) + kappa_all(p);
            const double r = (kappa_product(p, ds, true) - b * b) / ds;
            return sg * root(r) / (z * (z - 1.0));
        }
        default: throw ParameterError(to_string(eq) + " is not a sigma-equation");
    }
}

// ---- classification and normalization ----------------------------------------

std::string to_string(PIIICase c) {
    switch (c) {
        case PIIICase::P3_6: return "P3_6";
        case PIIICase::P3_7: return "P3_7";
        case PIIICase::P3_8: return "P3_8";
        default: return "QUADRATURE";
    }
}

std::string to_string(PVCase c) {
    switch (c) {
        case PVCase::GENERIC: return "GENERIC";
        case PVCase::DEGENERATE: return "DEGENERATE";
        default: return "QUADRATURE";
    }
}

PIIICase classify_piii(double alpha, double beta, double gamma, double delta) {
    if (gamma * delta != 0.0) return PIIICase::P3_6;
    if (gamma == 0.0 && alpha * delta != 0.0) return PIIICase::P3_7;
    if (delta == 0.0 && beta * gamma != 0.0) return PIIICase::P3_7;
    if (gamma == 0.0 && delta == 0.0 && alpha * beta != 0.0) return PIIICase::P3_8;
    return PIIICase::QUADRATURE;
}

PVCase classify_pv(double /*alpha*/, double /*beta*/, double gamma, double delta) {
    if (delta != 0.0) return PVCase::GENERIC;
    if (gamma != 0.0) return PVCase::DEGENERATE;
    return PVCase::QUADRATURE;
}

State2 Scaling::apply(const State2& s) const {
    return {s.z / mu_z, s.w / lambda_w, s.dw * mu_z / lambda_w};
}

// Substituting w = l W, z = m Z into P_III gives
//   alpha' = alpha l m, beta' = beta m / l, gamma' = gamma l^2 m^2, delta' = delta m^2 / l^2.
Normalized normalize_piii(double alpha, double beta, double gamma, double delta) {
    using P = Param;
    Normalized out{};
    double l = 1.0, m = 1.0;
    switch (classify_piii(alpha, beta, gamma, delta)) {
        case PIIICase::P3_6:
            if (!(gamma > 0.0 && delta < 0.0))
                throw DomainError("normalize_piii: P3_6 with gamma > 0 > delta required for a real scaling");
            m = std::pow(-1.0 / (gamma * delta), 0.25);
            l = 1.0 / (std::sqrt(gamma) * m);
            out.canonical = EquationId::PIII6;
            out.params = {{P::alpha, alpha * l * m}, {P::beta, beta * m / l}, {P::gamma, 1.0}, {P::delta, -1.0}};
            break;
        case PIIICase::P3_7:
            if (gamma == 0.0) {
                if (!(delta < 0.0)) throw DomainError("normalize_piii: P3_7 (gamma = 0) needs delta < 0 for a real scaling");
                m = std::pow(-1.0 / (delta * alpha * alpha), 0.25);
                l = 1.0 / (alpha * m);
                out.canonical = EquationId::PIII7a;
                out.params = {{P::alpha, 1.0}, {P::beta, beta * m / l}, {P::delta, -1.0}};
            } else {
                if (!(gamma > 0.0)) throw DomainError("normalize_piii: P3_7 (delta = 0) needs gamma > 0 for a real scaling");
                m = std::pow(1.0 / (gamma * beta * beta), 0.25);
                l = -beta * m;
                out.canonical = EquationId::PIII7b;
                out.params = {{P::alpha, alpha * l * m}, {P::beta, -1.0}, {P::gamma, 1.0}};
            }
            break;
        case PIIICase::P3_8:
            if (!(alpha * beta < 0.0)) throw DomainError("normalize_piii: P3_8 needs alpha*beta < 0 for a real scaling");
            m = std::sqrt(-1.0 / (alpha * beta));
            l = -beta * m;
            out.canonical = EquationId::PIII8;
            out.params = {{P::alpha, 1.0}, {P::beta, -1.0}};
            break;
        case PIIICase::QUADRATURE:
            throw ParameterError("normalize_piii: parameters fall in the quadrature case");
    }
    out.scale = {l, m};
    return out;
}

Normalized normalize_piii(const ParamSet& p) {
    return normalize_piii(p.get_or(Param::alpha, 0.0), p.get_or(Param::beta, 0.0), p.get_or(Param::gamma, 0.0),
                          p.get_or(Param::delta, 0.0));
}

// z = m Z leaves alpha, beta unchanged, gamma' = gamma m, delta' = delta m^2.
Normalized normalize_pv(double alpha, double beta, double gamma, double delta) {
    using P = Param;
    Normalized out{};
    switch (classify_pv(alpha, beta, gamma, delta)) {
        case PVCase::GENERIC: {
            if (!(delta < 0.0)) throw DomainError("normalize_pv: delta < 0 required for a real scaling");
            const double m = std::sqrt(-0.5 / delta);
            out.canonical = EquationId::PV;
            out.params = {{P::alpha, alpha}, {P::beta, beta}, {P::gamma, gamma * m}, {P::delta, -0.5}};
            out.scale = {1.0, m};
            break;
        }
        case PVCase::DEGENERATE: {
            const double m = -0.5 / gamma;
            out.canonical = EquationId::PVDEG;
            out.params = {{P::alpha, alpha}, {P::beta, beta}, {P::gamma, -0.5}};
            out.scale = {1.0, m};
            break;
        }
        case PVCase::QUADRATURE:
            throw ParameterError("normalize_pv: parameters fall in the quadrature case");
    }
    return out;
}

Normalized normalize_pv(const ParamSet& p) {
    return normalize_pv(p.get_or(Param::alpha, 0.0), p.get_or(Param::beta, 0.0), p.get_or(Param::gamma, 0.0),
                        p.get_or(Param::delta, 0.0));
}

}  // namespace painleve::equations
