#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace painleve::equations {

enum class EquationId { PI, PII, PIII6, PIII7a, PIII7b, PIII8, PIV, PV, PVDEG, PVI, P34, SI, SII, SIII, SIV, SV, SVI };

std::string to_string(EquationId id);
EquationId equation_from_string(const std::string& name);  // throws ParameterError
const std::vector<EquationId>& all_equations();
bool is_sigma(EquationId id);

/// Named parameter. Only those in an equation's schema may be set.
enum class Param { alpha, beta, gamma, delta, theta0, theta_inf, kappa1, kappa2, kappa3, kappa4 };
inline constexpr int kParamCount = 10;

std::string to_string(Param p);
Param param_from_string(const std::string& name);  // accepts "alpha", "theta_inf", "thetainf", ...

class ParamSet {
public:
    ParamSet() = default;
    ParamSet(std::initializer_list<std::pair<Param, double>> init);

    ParamSet& set(Param p, double v);
    [[nodiscard]] bool has(Param p) const { return values_[static_cast<int>(p)].has_value(); }
    [[nodiscard]] double get(Param p) const;  // throws ParameterError if absent
    [[nodiscard]] double get_or(Param p, double fallback) const;
    void clear(Param p) { values_[static_cast<int>(p)].reset(); }
    [[nodiscard]] std::vector<std::pair<Param, double>> entries() const;

    bool operator==(const ParamSet&) const = default;

private:
    std::array<std::optional<double>, kParamCount> values_{};
};

/// Parameters an equation requires. Every schema field is mandatory.
const std::vector<Param>& schema(EquationId id);

/// Throws ParameterError naming the offending field if p does not match the schema
/// (missing field, extra field, non-finite value, or a case condition such as
/// gamma*delta != 0 for PIII6).
void validate(EquationId id, const ParamSet& p);

struct State2 {
    double z = 0.0;
    double w = 0.0;
    double dw = 0.0;
};

/// w'' - F(z, w, w') for the Painleve equations and P34. Throws SingularInput
/// when a denominator of the equation vanishes.
double residual(EquationId eq, const ParamSet& p, double z, double w, double dw, double d2w);

/// First-order system form: returns (w', w'').
std::pair<double, double> rhs(EquationId eq, const ParamSet& p, const State2& s);

/// Right-hand side F only. Same errors as residual.
double second_derivative(EquationId eq, const ParamSet& p, double z, double w, double dw);

/// Complex-z evaluation for PI, PII and P34.
std::complex<double> second_derivative(EquationId eq, const ParamSet& p, std::complex<double> z,
                                       std::complex<double> w, std::complex<double> dw);
std::complex<double> residual(EquationId eq, const ParamSet& p, std::complex<double> z, std::complex<double> w,
                              std::complex<double> dw, std::complex<double> d2w);

/// LHS - RHS of the sigma-equations SI..SVI.
double sigma_residual(EquationId eq, const ParamSet& p, double z, double s, double ds, double d2s);

/// Solves a sigma-equation for s''. branch = +1 or -1 picks the root. Throws
/// DomainError when the radicand is negative.
double sigma_second_derivative(EquationId eq, const ParamSet& p, double z, double s, double ds, int branch);

// ---- P_III and P_V case analysis --------------------------------------------

enum class PIIICase { P3_6, P3_7, P3_8, QUADRATURE };
enum class PVCase { GENERIC, DEGENERATE, QUADRATURE };

std::string to_string(PIIICase c);
std::string to_string(PVCase c);

PIIICase classify_piii(double alpha, double beta, double gamma, double delta);
PVCase classify_pv(double alpha, double beta, double gamma, double delta);

/// w = lambda_w * W(Z), z = mu_z * Z. W solves the canonical equation.
struct Scaling {
    double lambda_w = 1.0;
    double mu_z = 1.0;

    /// Maps a sample (z, w, w') of the original solution to (Z, W, dW/dZ).
    [[nodiscard]] State2 apply(const State2& s) const;
};

struct Normalized {
    EquationId canonical;
    ParamSet params;
    Scaling scale;
};

/// Rescales a general P_III (alpha, beta, gamma, delta) to the canonical form of
/// its case. Only real scalings are produced: DomainError when the case needs a
/// complex one (e.g. gamma*delta > 0). ParameterError for QUADRATURE.
Normalized normalize_piii(double alpha, double beta, double gamma, double delta);
/// Same, reading alpha..delta from p (absent fields count as 0).
Normalized normalize_piii(const ParamSet& p);

/// P_V: generic case to delta = -1/2, degenerate case to gamma = -1/2 (w unscaled).
Normalized normalize_pv(double alpha, double beta, double gamma, double delta);
Normalized normalize_pv(const ParamSet& p);

}  // namespace painleve::equations
