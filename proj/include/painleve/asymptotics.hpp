#pragma once

#include <string>
#include <vector>

#include "painleve/solver.hpp"

namespace painleve::asymptotics {

enum class Regime { AS, SINGULAR, QUASI_AS, HM };
std::string to_string(Regime r);

struct ASConnection {
    double d2 = 0.0;
    double theta0 = 0.0;
};
struct SingularConnection {
    double beta = 0.0;
    double phi = 0.0;
};
struct QuasiASConnection {
    double d = 0.0;
    double phi = 0.0;
};

/// d^2 = -ln(1-k^2)/pi, theta0 = (3/2) d^2 ln 2 + arg Gamma(1 - i d^2/2) + (pi/4)(1 - 2 sgn k).
/// DomainError unless 0 < |k| < 1.
ASConnection as_connection(double k);

/// beta = ln(k^2-1)/(2 pi), phi = -arg Gamma(i beta/2) + (pi/2)(sgn k - 1). DomainError unless |k| > 1.
SingularConnection singular_connection(double k);

/// d = sqrt(-ln(cos^2(pi alpha) - k^2)/pi),
/// phi = -(3/2) d^2 ln 2 + arg Gamma(i d^2/2) - pi/4 - arg(-sin(pi alpha) - i k).
/// DomainError unless alpha in (-1/2, 1/2) and |k| < cos(pi alpha).
QuasiASConnection quasi_as_connection(double k, double alpha);

/// sqrt(|z|/2)
double hm_leftasymptote(double z);

// ---- algebraic-decay series B(z; alpha) = -(alpha/z) sum a_n z^{-3n} ----------

enum class BVariant {
    convolution,  // a_{n+1} = (3n+1)(3n+2) a_n - 2 alpha^2 sum_{j+k+l=n} a_j a_k a_l
    literal       // same with the unconstrained sum over j, k, l = 0..n
};
std::string to_string(BVariant v);

/// a_0..a_N, N <= 20.
std::vector<double> b_series(double alpha, int N, BVariant v = BVariant::convolution);

/// B_N(z) and B_N'(z).
std::pair<double, double> b_value(double alpha, const std::vector<double>& a, double z);

/// P_II residual of the series truncated after a_N at z. Coefficients and
/// residual are computed with 50 digits so rounding does not mask the decay.
double b_series_residual(double alpha, int N, BVariant v, double z);

/// Least-squares slope of log|residual| against log z on [z_lo, z_hi].
double b_residual_slope(double alpha, int N, BVariant v, double z_lo = 20.0, double z_hi = 80.0, int points = 13);

struct BSelection {
    BVariant chosen = BVariant::convolution;
    std::vector<double> coeffs;
    double slope_convolution = 0.0;
    double slope_literal = 0.0;
    double required_slope = 0.0;  // -(3N+1) + 0.2
    bool convolution_pass = false;
    bool literal_pass = false;
};

/// Builds both variants and keeps the one whose residual slope passes
/// (convolution preferred when both do). ConvergenceError if neither passes.
BSelection b_series_select(double alpha, int N);

/// Real solution with k = 0 at real z_start in [3, 8]. The series fixes a
/// solution only up to a multiple of Ai on the real axis, so the value is taken
/// as the real part of the solution that follows B on the ray arg z = pi/3: P_II
/// is integrated in the complex plane from radius R along that ray and then
/// round the arc |z| = z_start down to the real axis. `a` should hold enough
/// terms for optimal truncation at |z| = R.
solver::Sample quasi_as_anchor(double alpha, double z_start, const std::vector<double>& a, double R = 12.0);

/// quasi_as_anchor + k Ai(z) (1 + 2 alpha^2 z^{-3/2}) and its derivative.
solver::Sample quasi_as_seed(double k, double alpha, double z_start, const std::vector<double>& a);

// ---- fits ----------------------------------------------------------------------------

struct FitResult {
    double d = 0.0;
    double theta0 = 0.0;  // in [0, 2 pi)
    double residual_norm = 0.0;  // RMS of |z|^{1/4} w - model
    double z_lo = 0.0, z_hi = 0.0;
    int n_points = 0;
    int iterations = 0;
};

/// Fits |z|^{1/4} w = d sin((2/3)|z|^{3/2} - (3/4) d^2 ln|z| - theta0) on
/// [-Z1, -Z2] (Z1 > Z2 >= 15). d > 0 is enforced, theta0 taken mod 2 pi.
FitResult fit_oscillatory(const solver::Trajectory& t, double Z1, double Z2, double spacing = 0.01);
FitResult fit_oscillatory(const std::vector<double>& z, const std::vector<double>& w);

struct SingularFit {
    double beta = 0.0;
    double phi = 0.0;  // in [0, pi)
    int n_poles = 0;
    double residual_norm = 0.0;
};

/// From pole positions z_j in [-Z1, -Z2]:
/// (2/3)|z_j|^{3/2} + beta ln(8 |z_j|^{3/2}) + phi = m_j pi.
SingularFit fit_singular(const std::vector<double>& poles, double Z1, double Z2);

// ---- end-to-end connection check ------------------------------------------------

struct ConnectionOptions {
    double z_start = 10.0;
    double Z1 = 60.0;
    double Z2 = 25.0;
    double tol_amplitude = 3e-3;  // |d^2 fit - d^2| (AS), |d fit - d| (quasi-AS), |beta fit - beta| (singular)
    double tol_phase = 2e-2;      // phase error, mod 2 pi (mod pi for singular)
    int b_terms = 5;          // N for the recurrence selection test
    double quasi_as_start = 5.0;
    solver::StepControl control;
};

struct ConnectionReport {
    Regime regime = Regime::AS;
    double k = 0.0;
    double alpha = 0.0;
    double predicted_a = 0.0, predicted_b = 0.0;  // (d2, theta0), (beta, phi) or (d, phi)
    double fitted_a = 0.0, fitted_b = 0.0;
    double err_a = 0.0, err_b = 0.0;
    double tol_a = 0.0, tol_b = 0.0;
    double window_lo = 0.0, window_hi = 0.0;
    double residual_norm = 0.0;
    int n_points = 0;
    std::string b_variant;  // quasi-AS only
    bool pass = false;

    [[nodiscard]] std::string to_json() const;
};

/// Regime by (k, alpha). DomainError for |k| = 1 at alpha = 0 (the
/// Hastings-McLeod boundary) and for quasi-AS parameters outside the family.
Regime classify(double k, double alpha);

ConnectionReport connection_check(double k, double alpha, const ConnectionOptions& o = {});

/// Angular distance between a and b modulo period.
double phase_distance(double a, double b, double period);

}  // namespace painleve::asymptotics
