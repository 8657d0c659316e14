#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace painleve::specialsol {

using BigInt = boost::multiprecision::cpp_int;

/// Polynomial with exact integer coefficients, ascending degree. The zero
/// polynomial has no coefficients; otherwise the leading coefficient is nonzero.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> coeffs);

    static IntPolynomial monomial(const BigInt& c, int k);

    [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    [[nodiscard]] bool is_zero() const { return c_.empty(); }
    [[nodiscard]] const std::vector<BigInt>& coeffs() const { return c_; }
    [[nodiscard]] BigInt coeff(int k) const;

    [[nodiscard]] IntPolynomial derivative() const;

    IntPolynomial operator+(const IntPolynomial& o) const;
    IntPolynomial operator-(const IntPolynomial& o) const;
    IntPolynomial operator*(const IntPolynomial& o) const;
    IntPolynomial operator*(const BigInt& k) const;
    bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }

    /// Exact quotient by d. Sets `exact` false (and returns the partial quotient)
    /// if the remainder is nonzero or a coefficient does not divide.
    IntPolynomial divide(const IntPolynomial& d, bool& exact) const;

    [[nodiscard]] double eval(double z) const;
    [[nodiscard]] std::complex<double> eval(std::complex<double> z) const;

    /// e.g. "1*z^6 + 20*z^3 - 80"
    [[nodiscard]] std::string to_string() const;

private:
    void trim();
    std::vector<BigInt> c_;
};

// ---- Yablonskii-Vorob'ev polynomials ------------------------------------------

inline constexpr int kYvMax = 60;        // hard limit for yv_poly
inline constexpr int kYvRootsMax = 25;   // hard limit for yv_roots

/// Q_0..Q_n from Q_{n+1} Q_{n-1} = z Q_n^2 - 4 (Q_n Q_n'' - Q_n'^2), Q_0 = 1,
/// Q_1 = z. InternalError if a division is not exact.
std::vector<IntPolynomial> yv_sequence(int n);
IntPolynomial yv_poly(int n);

/// All n(n+1)/2 roots of Q_n, conjugate pairs adjacent, sorted by real then
/// imaginary part. ConvergenceError names the roots that failed to polish.
std::vector<std::complex<double>> yv_roots(int n);

/// "re,im,n" rows with a header.
std::string roots_csv(int n, const std::vector<std::complex<double>>& roots);

// ---- P_II closed-form solutions ---------------------------------------------------

/// Rational solution of P_II(alpha = n): w = d/dz ln(Q_{n-1}/Q_n) for n >= 1,
/// w(z; -n) = -w(z; n), w = 0 for n = 0.
class RationalP2 {
public:
    explicit RationalP2(int n);
    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] double alpha() const { return n_; }
    /// (w, w', w''); SingularInput at a real root of Q_n or Q_{n-1}.
    [[nodiscard]] std::array<double, 3> eval(double z) const;
    /// Real poles (real roots of Q_{n-1} Q_n), ascending.
    [[nodiscard]] std::vector<double> real_poles() const;

private:
    int n_;
    int sign_;
    IntPolynomial qa_, qb_;  // Q_{|n|-1}, Q_{|n|}
};

RationalP2 rational_p2(int n);

/// Airy-type solution of P_II(alpha = n - 1/2), n in {1, 2}, built on
/// phi = cos(theta) Ai(zeta) + sin(theta) Bi(zeta), zeta = -2^{-1/3} z.
class AiryP2 {
public:
    AiryP2(double theta, int n);
    [[nodiscard]] double alpha() const { return n_ - 0.5; }
    [[nodiscard]] int n() const { return n_; }
    /// (w, w', w''); SingularInput at a zero of the tau function.
    [[nodiscard]] std::array<double, 3> eval(double z) const;
    /// phi, phi' at z.
    [[nodiscard]] std::array<double, 2> phi(double z) const;

private:
    double theta_;
    int n_;
};

AiryP2 airy_p2(double theta, int n);

// ---- discrete P_II ladder ---------------------------------------------------------

struct LadderState {
    int n_max = 0;
    double c1 = 1.0;
    double c2 = 0.0;
    std::vector<double> r;
    std::vector<std::vector<double>> phi;   // phi[n][i]
    std::vector<std::vector<double>> dphi;  // from phi_n' = -(n/r) phi_n + (1 - phi_n^2) phi_{n-1}
};

/// phi_0 = 1, phi_1 = (C1 I1 - C2 K1)/(C1 I0 + C2 K0), then
/// phi_{n+1} = (2n/r) phi_n/(1 - phi_n^2) - phi_{n-1}. DomainError naming
/// (n, r) where |1 - phi_n^2| < 1e-12.
LadderState dp2_ladder(int n_max, double c1, double c2, const std::vector<double>& r_grid);

struct LadderCheck {
    int n = 0;
    double res_a = 0.0;    // max |phi_n' + (n/r) phi_n - (1 - phi_n^2) phi_{n-1}|
    double res_b = 0.0;    // max |phi_{n-1}' - ((n-1)/r) phi_{n-1} + (1 - phi_{n-1}^2) phi_n|
    double res_ode = 0.0;  // max |second-order equation for phi_n|
};

struct LadderReport {
    std::vector<LadderCheck> checks;  // n = 1..n_max
    double tol = 1e-6;
    bool pass = false;
};

/// Derivatives are taken from the phi samples alone (local polynomial
/// stencils), so the check is independent of dphi.
LadderReport ladder_verify(const LadderState& s, double tol = 1e-6);

/// Residual of phi'' + phi'/r + phi/(1-phi^2) (phi'^2 - n^2/r^2) + phi (1 - phi^2).
double csg_residual(int n, double r, double phi, double dphi, double d2phi);

}  // namespace painleve::specialsol
