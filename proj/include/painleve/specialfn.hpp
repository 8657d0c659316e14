#pragma once

#include <complex>

namespace painleve::specialfn {

struct AiryPair {
    double ai = 0.0;
    double bi = 0.0;
    double ai_deriv = 0.0;
    double bi_deriv = 0.0;
};

/// Ai, Bi and their derivatives at real x, |x| <= 200.
/// Relative accuracy about 1e-13 on [-20, 20]. Far right Ai underflows to 0
/// and Bi overflows to inf; use airy_scaled there.
AiryPair airy(double x);

/// For x > 0: Ai and Ai' multiplied by exp(zeta), Bi and Bi' multiplied by
/// exp(-zeta), zeta = (2/3) x^{3/2}. For x <= 0 identical to airy(x).
AiryPair airy_scaled(double x);

/// J_nu(x) for nu in [-1, 1] and x in (0, 100].
double bessel_j(double nu, double x);

/// Y_0(x) for x in (0, 100].
double bessel_y0(double x);

struct ModifiedBessel {
    double i0 = 0.0;
    double i1 = 0.0;
    double k0 = 0.0;
    double k1 = 0.0;
};

/// I0, I1, K0, K1 at x in (0, 100].
ModifiedBessel bessel_mod(double x);

/// I0, I1 times exp(-x) and K0, K1 times exp(x).
ModifiedBessel bessel_mod_scaled(double x);

/// Principal branch of log Gamma(z), continuous off the negative real axis.
/// Im gives arg Gamma(z) without 2*pi wrapping.
std::complex<double> log_gamma(std::complex<double> z);

}  // namespace painleve::specialfn
