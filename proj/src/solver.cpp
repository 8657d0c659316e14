#include "painleve/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "painleve/error.hpp"
#include "painleve/specialfn.hpp"

namespace painleve::solver {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                 a76 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                 e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

constexpr double kBeta = 0.04;
constexpr double kExpo = 0.2 - 0.75 * kBeta;
constexpr double kSafety = 0.9;

class Dopri5 {
public:
    explicit Dopri5(std::size_t n) : k2(n), k3(n), k4(n), k5(n), k6(n), tmp(n) {}

    // One attempt from (z, y) with derivative k1 = f(z, y). On return ynew and
    // k7 = f(z + h, ynew) hold, and the scaled error norm is returned. Throws
    // whatever f throws.
    double attempt(const SystemRhs& f, double z, const State& y, const State& k1, double h, State& ynew, State& k7,
                   double rtol, double atol) {
        const std::size_t n = y.size();
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
        f(z + c2 * h, tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        f(z + c3 * h, tmp, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        f(z + c4 * h, tmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        f(z + c5 * h, tmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        f(z + h, tmp, k6);
        ynew.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
        k7.resize(n);
        f(z + h, ynew, k7);
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc = atol + rtol * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
            err += (e / sc) * (e / sc);
            if (!std::isfinite(ynew[i]) || !std::isfinite(k7[i])) return std::numeric_limits<double>::infinity();
        }
        return std::sqrt(err / static_cast<double>(n));
    }

private:
    State k2, k3, k4, k5, k6, tmp;
};

// PI step-size controller shared by both integrators.
struct Controller {
    double err_old = 1e-4;

    double next(double h, double err, bool accepted) {
        if (!std::isfinite(err)) return h * 0.2;
        const double e = std::max(err, 1e-10);
        double fac = kSafety * std::pow(e, -kExpo);
        if (accepted) {
            fac *= std::pow(err_old, kBeta);
            err_old = std::max(err, 1e-4);
            fac = std::clamp(fac, 0.2, 5.0);
        } else {
            fac = std::clamp(fac, 0.1, 0.9);
        }
        return h * fac;
    }
};

void check_grid(const std::vector<double>& grid, double z0, double z1) {
    const double dir = z1 >= z0 ? 1.0 : -1.0;
    const double lo = std::min(z0, z1), hi = std::max(z0, z1);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < lo - 1e-12 * (1 + std::fabs(lo)) || grid[i] > hi + 1e-12 * (1 + std::fabs(hi)))
            throw ParameterError("output grid point " + std::to_string(grid[i]) + " outside the integration interval");
        if (i > 0 && (grid[i] - grid[i - 1]) * dir <= 0.0)
            throw ParameterError("output grid must be strictly ordered in the direction of integration");
    }
}

double min_step(double z) { return 1e-13 * std::max(1.0, std::fabs(z)); }

}  // namespace

void validate(const StepControl& c) {
    if (!(c.rel_tol > 0.0) || !(c.abs_tol > 0.0)) throw ParameterError("step control: tolerances must be positive");
    if (!(c.max_step > 0.0)) throw ParameterError("step control: max_step must be positive");
    if (!(c.pole_threshold > 10.0)) throw ParameterError("step control: pole_threshold must exceed 10");
    if (!(c.initial_step > 0.0)) throw ParameterError("step control: initial_step must be positive");
}

SystemSolution integrate_system(const SystemRhs& f, double z0, const State& y0, double z1, const StepControl& c,
                                const std::vector<double>& grid) {
    validate(c);
    check_grid(grid, z0, z1);
    const double dir = z1 >= z0 ? 1.0 : -1.0;
    SystemSolution out;
    std::size_t gi = 0;
    auto record = [&](double z, const State& y) {
        out.z.push_back(z);
        out.y.push_back(y);
    };
    if (grid.empty()) {
        record(z0, y0);
    } else {
        while (gi < grid.size() && grid[gi] == z0) {
            record(z0, y0);
            ++gi;
        }
    }
    if (z0 == z1) return out;

    Dopri5 rk(y0.size());
    Controller ctl;
    double z = z0;
    State y = y0, k1(y0.size()), ynew, k7;
    f(z, y, k1);
    double h = std::min(c.initial_step, c.max_step);
    bool last_was_rejected = false;
    while (true) {
        if (out.steps >= c.max_steps) throw NumericalFailure("step limit reached", z);
        double target = z1;
        if (!grid.empty() && gi < grid.size()) target = grid[gi];
        double hs = std::min({h, c.max_step, std::fabs(target - z)});
        bool hits_target = hs == std::fabs(target - z);
        if (hs < min_step(z)) {
            if (std::fabs(target - z) < min_step(z)) {
                hits_target = true;
                hs = std::fabs(target - z);
            } else {
                throw NumericalFailure("step size underflow", z);
            }
        }
        double err;
        try {
            err = rk.attempt(f, z, y, k1, dir * hs, ynew, k7, c.rel_tol, c.abs_tol);
        } catch (const Error&) {
            err = std::numeric_limits<double>::infinity();
        }
        if (err <= 1.0) {
            ++out.steps;
            const double znew = hits_target ? target : z + dir * hs;
            const double hprop = ctl.next(hs, err, true);
            h = hits_target ? std::max(hprop, h) : hprop;
            if (last_was_rejected) h = std::min(h, hs);
            last_was_rejected = false;
            z = znew;
            y = ynew;
            k1 = k7;
            if (grid.empty()) {
                record(z, y);
            } else if (hits_target && gi < grid.size() && target == grid[gi]) {
                record(z, y);
                ++gi;
            }
            if (z == z1) break;
        } else {
            h = ctl.next(hs, err, false);
            last_was_rejected = true;
            if (h < min_step(z)) throw NumericalFailure("step size underflow", z);
        }
    }
    return out;
}

// ---- second-order integrator ---------------------------------------------------

namespace {

bool supports_poles(EquationId eq) {
    return eq == EquationId::PI || eq == EquationId::PII || eq == EquationId::P34;
}

// Inverse-variable form near a pole.
//   PII: v = 1/w,      v'' = 2(v'^2 - 1)/v - z v - alpha v^2
//   PI : v = w^{-1/2}, v'' = 3(v'^2 - 1)/v - z v^3 / 2
//   P34: v = p^{-1/2}, v'' = (2 v'^2 - 1)/v + z v / 2 + (alpha + 1/2)^2 v^5 / 4
double inverse_rhs(EquationId eq, double alpha, double z, double v, double dv) {
    const double inv = (v == 0.0) ? 0.0 : 1.0 / v;
    switch (eq) {
        case EquationId::PII: return 2.0 * (dv * dv - 1.0) * inv - z * v - alpha * v * v;
        case EquationId::PI: return 3.0 * (dv * dv - 1.0) * inv - 0.5 * z * v * v * v;
        case EquationId::P34: {
            const double a = (alpha + 0.5) * (alpha + 0.5);
            const double v2 = v * v;
            return (2.0 * dv * dv - 1.0) * inv + 0.5 * z * v + 0.25 * a * v2 * v2 * v;
        }
        default: throw InternalError("inverse_rhs: unsupported equation");
    }
}

bool square_root_inverse(EquationId eq) { return eq == EquationId::PI || eq == EquationId::P34; }

void to_inverse(EquationId eq, double w, double dw, double& v, double& dv) {
    if (square_root_inverse(eq)) {
        v = 1.0 / std::sqrt(w);
        dv = -0.5 * dw * v * v * v;
    } else {
        v = 1.0 / w;
        dv = -dw * v * v;
    }
}

void from_inverse(EquationId eq, double v, double dv, double d2v, double& w, double& dw, double& d2w) {
    if (v == 0.0) throw SingularInput("evaluation exactly at a pole");
    const double iv = 1.0 / v;
    if (square_root_inverse(eq)) {
        const double iv2 = iv * iv;
        w = iv2;
        dw = -2.0 * dv * iv2 * iv;
        d2w = -2.0 * d2v * iv2 * iv + 6.0 * dv * dv * iv2 * iv2;
    } else {
        w = iv;
        dw = -dv * iv * iv;
        d2w = -d2v * iv * iv + 2.0 * dv * dv * iv * iv * iv;
    }
}

// Taylor coefficients of v about z_a. Multiplying the inverse equation by v
// leaves v v'' = P(z, v, v') with P polynomial, so the recursion divides only
// by v(z_a) and stays regular through the zero of v.
std::vector<double> inverse_taylor(EquationId eq, double alpha, double za, double v0, double dv0, int n_terms) {
    const int N = n_terms;
    std::vector<double> c(N + 1, 0.0), p2(N + 1, 0.0), p3(N + 1, 0.0), p4(N + 1, 0.0), p5(N + 1, 0.0),
        p6(N + 1, 0.0), e(N + 1, 0.0), dd(N + 1, 0.0);
    c[0] = v0;
    c[1] = dv0;
    const double a34 = (alpha + 0.5) * (alpha + 0.5);
    auto conv = [](const std::vector<double>& a, const std::vector<double>& b, int n) {
        double s = 0.0;
        for (int j = 0; j <= n; ++j) s += a[j] * b[n - j];
        return s;
    };
    for (int n = 0; n + 2 <= N; ++n) {
        // c[0..n+1] known
        e[n] = (n + 1) * c[n + 1];
        p2[n] = conv(c, c, n);
        p3[n] = conv(p2, c, n);
        p4[n] = conv(p3, c, n);
        p5[n] = conv(p4, c, n);
        p6[n] = conv(p5, c, n);
        dd[n] = conv(e, e, n);
        auto zmul = [&](const std::vector<double>& x) { return za * x[n] + (n > 0 ? x[n - 1] : 0.0); };
        const double one = n == 0 ? 1.0 : 0.0;
        double rhs = 0.0;
        switch (eq) {
            case EquationId::PII: rhs = 2.0 * (dd[n] - one) - zmul(p2) - alpha * p3[n]; break;
            case EquationId::PI: rhs = 3.0 * (dd[n] - one) - 0.5 * zmul(p4); break;
            case EquationId::P34: rhs = 2.0 * dd[n] - one + 0.5 * zmul(p2) + 0.25 * a34 * p6[n]; break;
            default: throw InternalError("inverse_taylor: unsupported equation");
        }
        double s = 0.0;
        for (int j = 1; j <= n; ++j) s += c[j] * (n - j + 2) * (n - j + 1) * c[n - j + 2];
        c[n + 2] = (rhs - s) / (c[0] * (n + 2) * (n + 1));
    }
    return c;
}

void taylor_eval(const std::vector<double>& c, double t, double& v, double& dv, double& d2v) {
    v = dv = d2v = 0.0;
    for (int n = static_cast<int>(c.size()) - 1; n >= 0; --n) v = v * t + c[n];
    for (int n = static_cast<int>(c.size()) - 1; n >= 1; --n) dv = dv * t + n * c[n];
    for (int n = static_cast<int>(c.size()) - 1; n >= 2; --n) d2v = d2v * t + n * (n - 1) * c[n];
}

// Rough radius of convergence from the coefficient tail.
double taylor_radius(const std::vector<double>& c) {
    const int N = static_cast<int>(c.size()) - 1;
    const double scale = std::max(std::fabs(c[0]), std::fabs(c[1]));
    double r = std::numeric_limits<double>::infinity();
    for (int n = N / 2; n <= N; ++n) {
        if (c[n] == 0.0) continue;
        r = std::min(r, std::pow(std::fabs(c[n]) / scale, -1.0 / n));
    }
    return r;
}

constexpr int kTaylorTerms = 48;

}  // namespace

std::array<double, 3> Trajectory::eval(double z) const {
    if (segments.empty()) {
        if (!samples.empty() && samples.front().z == z) {
            const auto& s = samples.front();
            return {s.w, s.dw, equations::second_derivative(equation, params, s.z, s.w, s.dw)};
        }
        throw DomainError("trajectory has no dense output");
    }
    const bool forward = segments.front().y.z1 >= segments.front().y.z0;
    const double lo = std::min(z_first(), z_last()), hi = std::max(z_first(), z_last());
    if (z < lo - 1e-12 * (1 + std::fabs(lo)) || z > hi + 1e-12 * (1 + std::fabs(hi)))
        throw DomainError("z = " + std::to_string(z) + " outside the trajectory");
    // segments are ordered along the direction of integration
    auto it = std::lower_bound(segments.begin(), segments.end(), z, [&](const Segment& s, double v) {
        return forward ? s.y.z1 < v : s.y.z1 > v;
    });
    if (it == segments.end()) --it;
    const Segment& seg = *it;
    double y, dy, d2y;
    seg.y.eval(z, y, dy, d2y);
    if (seg.mode == Mode::direct) return {y, dy, d2y};
    double w, dw, d2w;
    from_inverse(equation, y, dy, d2y, w, dw, d2w);
    return {w, dw, d2w};
}

double Trajectory::z_first() const {
    if (!segments.empty()) return segments.front().y.z0;
    if (!samples.empty()) return samples.front().z;
    throw DomainError("empty trajectory");
}

double Trajectory::z_last() const {
    if (!segments.empty()) return segments.back().y.z1;
    if (!samples.empty()) return samples.back().z;
    throw DomainError("empty trajectory");
}

namespace {

Trajectory run_second_order(EquationId eq, const ParamSet& p, double z0, double w0, double dw0, double z1,
                            const StepControl& c, const IntegrateOptions& opt) {
    validate(c);
    if (equations::is_sigma(eq)) throw ParameterError("integrate: sigma-equations are not integrated directly");
    equations::validate(eq, p);
    if (opt.pole_aware && !supports_poles(eq))
        throw ParameterError("pole-aware integration supports PI, PII and P34 only");
    if (!std::isfinite(w0) || !std::isfinite(dw0) || !std::isfinite(z0) || !std::isfinite(z1))
        throw DomainError("integrate: non-finite initial data");
    check_grid(opt.grid, z0, z1);
    // fixed singular points
    try {
        (void)equations::second_derivative(eq, p, z0, w0, dw0);
    } catch (const SingularInput& e) {
        throw SingularInput(std::string("singular start: ") + e.what());
    }

    const double alpha = p.get_or(equations::Param::alpha, 0.0);
    const double dir = z1 >= z0 ? 1.0 : -1.0;
    const double T = c.pole_threshold;

    Trajectory t;
    t.equation = eq;
    t.params = p;
    t.control = c;

    Mode mode = Mode::direct;
    SystemRhs f_direct = [&](double z, const State& y, State& dy) {
        dy[0] = y[1];
        dy[1] = equations::second_derivative(eq, p, z, y[0], y[1]);
    };
    SystemRhs f_inverse = [&](double z, const State& y, State& dy) {
        dy[0] = y[1];
        dy[1] = inverse_rhs(eq, alpha, z, y[0], y[1]);
    };

    std::size_t gi = 0;
    auto want_sample = [&](double z, bool hit) {
        if (opt.grid.empty()) return true;
        return hit && gi < opt.grid.size() && z == opt.grid[gi];
    };

    State y = {w0, dw0}, k1(2), ynew, k7;
    double z = z0;
    if (opt.pole_aware && std::fabs(w0) > T && (!square_root_inverse(eq) || w0 > 0.0)) {
        mode = Mode::inverse;
        to_inverse(eq, w0, dw0, y[0], y[1]);
    }
    auto f = [&]() -> const SystemRhs& { return mode == Mode::direct ? f_direct : f_inverse; };
    f()(z, y, k1);

    if (opt.grid.empty()) {
        t.samples.push_back({z0, w0, dw0});
    } else {
        while (gi < opt.grid.size() && opt.grid[gi] == z0) {
            t.samples.push_back({z0, w0, dw0});
            ++gi;
        }
    }
    if (opt.stop && opt.stop({z0, w0, dw0})) {
        t.stop_reason = "stop condition at start";
        return t;
    }
    if (z0 == z1) return t;

    Dopri5 rk(2);
    Controller ctl;
    double h = std::min(c.initial_step, c.max_step);
    long steps = 0;
    bool last_was_rejected = false;
    while (true) {
        if (++steps > c.max_steps) throw NumericalFailure("step limit reached", z);
        double target = z1;
        if (!opt.grid.empty() && gi < opt.grid.size()) target = opt.grid[gi];
        double znew = 0.0;
        bool hit = false;

        // Close to a zero of v the inverse equation is stiff for explicit
        // steps (d v''/d v' ~ 4/(z - z0)); cross it with a Taylor series.
        bool jumped = false;
        if (mode == Mode::inverse && y[1] != 0.0) {
            const double d = -y[0] / y[1] * dir;
            if (d > 0.0) {
                const auto cs = inverse_taylor(eq, alpha, z, y[0], y[1], kTaylorTerms);
                const double R = taylor_radius(cs);
                if (d <= 0.25 * R) {
                    double L = std::min(d + std::min(d, 0.25 * R), std::fabs(target - z));
                    hit = L == std::fabs(target - z);
                    const double tend = dir * L;
                    znew = hit ? target : z + tend;
                    double v1, dv1, d2v1;
                    taylor_eval(cs, znew - z, v1, dv1, d2v1);
                    // dense output on a few sub-intervals
                    constexpr int kPieces = 8;
                    double za = z, va = y[0], dva = y[1], d2va = k1[1];
                    for (int i = 1; i <= kPieces; ++i) {
                        const double zb = i == kPieces ? znew : z + (znew - z) * i / kPieces;
                        double vb, dvb, d2vb;
                        taylor_eval(cs, zb - z, vb, dvb, d2vb);
                        Segment seg;
                        seg.mode = Mode::inverse;
                        seg.y = numeric::QuinticHermite(za, zb, va, dva, d2va, vb, dvb, d2vb);
                        t.segments.push_back(seg);
                        za = zb;
                        va = vb;
                        dva = dvb;
                        d2va = d2vb;
                    }
                    if (std::signbit(v1) != std::signbit(y[0]) || v1 == 0.0) {
                        // Newton on the series for the zero of v
                        double tz = -y[0] / y[1], step = 0.0;
                        for (int it = 0; it < 50; ++it) {
                            double v, dv, d2v;
                            taylor_eval(cs, tz, v, dv, d2v);
                            step = v / dv;
                            tz -= step;
                            if (std::fabs(step) <= 1e-16 * std::max(1.0, std::fabs(z + tz))) break;
                        }
                        double v, dv, d2v;
                        taylor_eval(cs, tz, v, dv, d2v);
                        PoleRecord pr;
                        pr.z0 = z + tz;
                        pr.bracket = std::max(std::fabs(step), std::fabs(v / dv)) +
                                     std::fabs(cs.back()) * std::pow(std::fabs(tz), kTaylorTerms) / std::fabs(dv);
                        pr.bracket = std::max(pr.bracket, 4.0 * std::numeric_limits<double>::epsilon() *
                                                              std::max(1.0, std::fabs(pr.z0)));
                        pr.order = square_root_inverse(eq) ? 2 : 1;
                        pr.leading = square_root_inverse(eq) ? 1.0 / (dv * dv) : 1.0 / dv;
                        t.poles.push_back(pr);
                    }
                    ynew = {v1, dv1};
                    k7.resize(2);
                    f_inverse(znew, ynew, k7);
                    jumped = true;
                    last_was_rejected = false;
                }
            }
        }

        if (!jumped) {
            double hs = std::min({h, c.max_step, std::fabs(target - z)});
            hit = hs == std::fabs(target - z);
            if (hs < min_step(z)) {
                if (std::fabs(target - z) < min_step(z)) {
                    hit = true;
                    hs = std::fabs(target - z);
                } else {
                    throw NumericalFailure("step size underflow (approaching a movable pole?)", z);
                }
            }
            double err;
            try {
                err = rk.attempt(f(), z, y, k1, dir * hs, ynew, k7, c.rel_tol, c.abs_tol);
            } catch (const Error&) {
                err = std::numeric_limits<double>::infinity();
            }
            if (!(err <= 1.0)) {
                h = ctl.next(hs, err, false);
                last_was_rejected = true;
                if (h < min_step(z)) throw NumericalFailure("step size underflow (approaching a movable pole?)", z);
                continue;
            }
            znew = hit ? target : z + dir * hs;
            const double hprop = ctl.next(hs, err, true);
            h = hit ? std::max(hprop, h) : hprop;
            if (last_was_rejected) h = std::min(h, hs);
            last_was_rejected = false;

            Segment seg;
            seg.mode = mode;
            seg.y = numeric::QuinticHermite(z, znew, y[0], y[1], k1[1], ynew[0], ynew[1], k7[1]);

            if (mode == Mode::inverse && (ynew[0] == 0.0 || std::signbit(ynew[0]) != std::signbit(y[0]))) {
                // zero of v inside an ordinary step: bisect the interpolant
                double a = z, b = znew;
                double va = y[0];
                for (int it = 0; it < 200 && std::fabs(b - a) > 1e-15 * std::max(1.0, std::fabs(a)); ++it) {
                    const double m = 0.5 * (a + b);
                    const double vm = seg.y.value(m);
                    if (vm == 0.0) {
                        a = b = m;
                        break;
                    }
                    if (std::signbit(vm) == std::signbit(va)) {
                        a = m;
                        va = vm;
                    } else {
                        b = m;
                    }
                }
                PoleRecord pr;
                pr.z0 = 0.5 * (a + b);
                pr.bracket = std::fabs(b - a);
                double v, dv, d2v;
                seg.y.eval(pr.z0, v, dv, d2v);
                pr.order = square_root_inverse(eq) ? 2 : 1;
                pr.leading = square_root_inverse(eq) ? 1.0 / (dv * dv) : 1.0 / dv;
                t.poles.push_back(pr);
            }
            t.segments.push_back(seg);
        }

        z = znew;
        y = ynew;
        k1 = k7;

        Sample s;
        s.z = z;
        if (mode == Mode::direct) {
            s.w = y[0];
            s.dw = y[1];
        } else {
            double d2w;
            if (y[0] == 0.0) {
                s.w = std::numeric_limits<double>::infinity();
                s.dw = std::numeric_limits<double>::quiet_NaN();
            } else {
                from_inverse(eq, y[0], y[1], k1[1], s.w, s.dw, d2w);
            }
        }
        if (want_sample(z, hit)) {
            t.samples.push_back(s);
            if (!opt.grid.empty()) ++gi;
        }
        if (opt.stop && opt.stop(s)) {
            t.stop_reason = "stop condition";
            return t;
        }
        if (z == z1) break;

        if (mode == Mode::direct) {
            if (!std::isfinite(s.w) || std::fabs(s.w) > 1e15)
                throw NumericalFailure("solution blew up (movable pole?)", z);
            if (opt.pole_aware && std::fabs(s.w) > T && (!square_root_inverse(eq) || s.w > 0.0)) {
                mode = Mode::inverse;
                to_inverse(eq, s.w, s.dw, y[0], y[1]);
                f()(z, y, k1);
            }
        } else if (std::isfinite(s.w) && std::fabs(s.w) < 0.5 * T) {
            mode = Mode::direct;
            y = {s.w, s.dw};
            f()(z, y, k1);
        }
    }
    return t;
}

}  // namespace

Trajectory integrate(EquationId eq, const ParamSet& p, double z0, double w0, double dw0, double z1,
                     const StepControl& c, const IntegrateOptions& opt) {
    return run_second_order(eq, p, z0, w0, dw0, z1, c, opt);
}

Trajectory integrate_pole_aware(EquationId eq, const ParamSet& p, double z0, double w0, double dw0, double z1,
                                const StepControl& c, IntegrateOptions opt) {
    if (!supports_poles(eq)) throw ParameterError("pole-aware integration supports PI, PII and P34 only");
    opt.pole_aware = true;
    return run_second_order(eq, p, z0, w0, dw0, z1, c, opt);
}

void rebuild_segments(Trajectory& t) {
    t.segments.clear();
    for (std::size_t i = 0; i + 1 < t.samples.size(); ++i) {
        const auto& a = t.samples[i];
        const auto& b = t.samples[i + 1];
        if (!std::isfinite(a.w) || !std::isfinite(b.w)) continue;
        const double fa = equations::second_derivative(t.equation, t.params, a.z, a.w, a.dw);
        const double fb = equations::second_derivative(t.equation, t.params, b.z, b.w, b.dw);
        Segment s;
        s.mode = Mode::direct;
        s.y = numeric::QuinticHermite(a.z, b.z, a.w, a.dw, fa, b.w, b.dw, fb);
        t.segments.push_back(s);
    }
}

// ---- Airy-seeded family -----------------------------------------------------------

Sample seed_from_airy(double k, double z_start) {
    if (!(z_start >= 8.0)) throw DomainError("seed_from_airy: z_start must be >= 8");
    const auto a = specialfn::airy(z_start);
    return {z_start, k * a.ai, k * a.ai_deriv};
}

namespace {

enum class Verdict { over, under, unclassified };

struct ShotResult {
    Verdict verdict;
    Trajectory traj;
};

ShotResult shoot(double z0, double w0, double dw0, double z_end, const StepControl& c) {
    const ParamSet p{{equations::Param::alpha, 0.0}};
    Verdict v = Verdict::unclassified;
    IntegrateOptions opt;
    const double T = c.pole_threshold;
    opt.stop = [&](const Sample& s) {
        if (s.w > T) {
            v = Verdict::over;
            return true;
        }
        if (s.w < 0.0) {
            v = Verdict::under;
            return true;
        }
        return false;
    };
    Trajectory t;
    try {
        t = integrate(EquationId::PII, p, z0, w0, dw0, z_end, c, opt);
    } catch (const NumericalFailure&) {
        // blow-up before the threshold test fired: only possible upwards
        v = Verdict::over;
    }
    return {v, std::move(t)};
}

// First z (walking from z0 towards z_end) where two runs differ by more than tol.
double separation_point(const Trajectory& a, const Trajectory& b, double z0, double z_end, double tol) {
    const double dir = z_end >= z0 ? 1.0 : -1.0;
    const double lim_a = a.z_last(), lim_b = b.z_last();
    const double reach = dir > 0 ? std::min(lim_a, lim_b) : std::max(lim_a, lim_b);
    const double h = 0.005;
    double z = z0;
    while ((reach - z) * dir > 0.0) {
        const double zn = (reach - (z + dir * h)) * dir > 0.0 ? z + dir * h : reach;
        const double wa = a.eval(zn)[0], wb = b.eval(zn)[0];
        if (std::fabs(wa - wb) > tol * (1.0 + std::fabs(wa))) return z;
        z = zn;
    }
    return reach;
}

}  // namespace

HMResult hastings_mcleod(double z_start, double z_probe, double tol, const StepControl& c) {
    if (!(z_start >= 10.0)) throw DomainError("hastings_mcleod: z_start must be >= 10");
    if (!(z_probe <= -15.0)) throw DomainError("hastings_mcleod: z_probe must be <= -15");
    if (!(tol > 0.0)) throw ParameterError("hastings_mcleod: tol must be positive");
    validate(c);

    const double z_end = z_probe - 2.0;  // classify a little beyond the probe point
    const double sep_tol = 1e-9;
    HMResult res;

    // Stage 0: bisection on k.
    auto shoot_k = [&](double k) {
        const Sample s = seed_from_airy(k, z_start);
        ++res.bisection_runs;
        return shoot(z_start, s.w, s.dw, z_end, c);
    };
    double k_lo = 0.5, k_hi = 1.5;
    ShotResult r_lo = shoot_k(k_lo), r_hi = shoot_k(k_hi);
    if (r_lo.verdict != Verdict::under || r_hi.verdict != Verdict::over)
        throw ClassificationError("hastings_mcleod: initial bracket k in [0.5, 1.5] not classified as UNDER/OVER");
    bool reported = false;
    while (true) {
        const double mid = 0.5 * (k_lo + k_hi);
        if (mid == k_lo || mid == k_hi) break;
        ShotResult r = shoot_k(mid);
        if (r.verdict == Verdict::unclassified) {
            res.k_lo = res.k_hi = res.k_star = mid;
            res.trajectory = integrate(EquationId::PII, {{equations::Param::alpha, 0.0}}, z_start,
                                       seed_from_airy(mid, z_start).w, seed_from_airy(mid, z_start).dw, z_probe, c);
            return res;
        }
        if (r.verdict == Verdict::over) {
            k_hi = mid;
            r_hi = std::move(r);
        } else {
            k_lo = mid;
            r_lo = std::move(r);
        }
        if (!reported && k_hi - k_lo <= tol) {
            res.k_lo = k_lo;
            res.k_hi = k_hi;
            reported = true;
        }
    }
    if (!reported) {
        res.k_lo = k_lo;
        res.k_hi = k_hi;
    }
    res.k_star = 0.5 * (res.k_lo + res.k_hi);

    // Stitched trajectory: pieces of UNDER-side runs between anchors.
    const ParamSet p0{{equations::Param::alpha, 0.0}};
    Trajectory stitched;
    stitched.equation = EquationId::PII;
    stitched.params = p0;
    stitched.control = c;

    auto append = [&](const Trajectory& piece) {
        const std::size_t skip = stitched.samples.empty() ? 0 : 1;
        stitched.samples.insert(stitched.samples.end(), piece.samples.begin() + static_cast<long>(skip),
                                piece.samples.end());
        stitched.segments.insert(stitched.segments.end(), piece.segments.begin(), piece.segments.end());
    };

    double za = z_start;
    const Sample seed = seed_from_airy(k_lo, z_start);
    double wa = seed.w, dwa = seed.dw;
    double sep = separation_point(r_lo.traj, r_hi.traj, za, z_end, sep_tol);

    for (int stage = 0; stage < 40; ++stage) {
        if (sep <= z_probe) {
            append(integrate(EquationId::PII, p0, za, wa, dwa, z_probe, c));
            res.trajectory = std::move(stitched);
            return res;
        }
        if (za - sep < 0.05) throw ClassificationError("hastings_mcleod: refinement makes no progress");
        const Trajectory piece = integrate(EquationId::PII, p0, za, wa, dwa, sep, c);
        append(piece);
        za = sep;
        wa = piece.samples.back().w;
        dwa = piece.samples.back().dw;
        res.anchors.push_back(za);

        // Bisection on a slope offset s at the anchor; s < 0 steepens the rise to the left.
        auto shoot_s = [&](double s) {
            ++res.bisection_runs;
            return shoot(za, wa, dwa + s, z_end, c);
        };
        double delta = 1e-9 * (1.0 + std::fabs(dwa));
        ShotResult s_over = shoot_s(-delta), s_under = shoot_s(delta);
        for (int grow = 0; grow < 12 && (s_over.verdict != Verdict::over || s_under.verdict != Verdict::under);
             ++grow) {
            delta *= 10.0;
            s_over = shoot_s(-delta);
            s_under = shoot_s(delta);
        }
        if (s_over.verdict != Verdict::over || s_under.verdict != Verdict::under) {
            if (s_over.verdict == Verdict::unclassified || s_under.verdict == Verdict::unclassified) {
                // already pole-free to the end
                append(integrate(EquationId::PII, p0, za, wa, dwa, z_probe, c));
                res.trajectory = std::move(stitched);
                return res;
            }
            throw ClassificationError("hastings_mcleod: could not bracket the slope offset at z = " +
                                      std::to_string(za));
        }
        double s_lo = delta, s_hi = -delta;  // UNDER side, OVER side
        while (true) {
            const double mid = 0.5 * (s_lo + s_hi);
            if (mid == s_lo || mid == s_hi) break;
            ShotResult r = shoot_s(mid);
            if (r.verdict == Verdict::unclassified) {
                s_lo = s_hi = mid;
                s_under = std::move(r);
                s_over = s_under;
                break;
            }
            if (r.verdict == Verdict::over) {
                s_hi = mid;
                s_over = std::move(r);
            } else {
                s_lo = mid;
                s_under = std::move(r);
            }
        }
        dwa += s_lo;
        if (s_lo == s_hi) {
            sep = z_end;
        } else {
            sep = separation_point(s_under.traj, s_over.traj, za, z_end, sep_tol);
        }
    }
    throw ClassificationError("hastings_mcleod: too many refinement stages");
}

}  // namespace painleve::solver
