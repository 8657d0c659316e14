#include "painleve/specialfn.hpp"

#include <cmath>
#include <numbers>

#include "painleve/ddouble.hpp"
#include "painleve/error.hpp"

namespace painleve::specialfn {

using numeric::DD;

namespace {

constexpr DD kAi0{0.3550280538878172, 2.05233632436212e-17};      // Ai(0)
constexpr DD kMinusAi0p{0.2588194037928068, -2.522243111610832e-17};  // -Ai'(0)
constexpr DD kSqrt3{1.7320508075688772, 1.0035084221806903e-16};
constexpr DD kPi{3.141592653589793, 1.2246467991473532e-16};

constexpr double kInvSqrtPi = 0.56418958354775628695;
constexpr double kAiryCrossover = 9.5;
constexpr double kBesselJCrossover = 20.0;
constexpr double kBesselICrossover = 30.0;
constexpr double kBesselKCrossover = 18.0;

void check_finite(double x, const char* fn) {
    if (!std::isfinite(x)) throw DomainError(std::string(fn) + ": non-finite argument");
}

// Maclaurin series of f, g, f', g' (DLMF 9.4), summed in double-double.
AiryPair airy_maclaurin(double x) {
    const DD x3 = DD(x) * DD(x) * DD(x);
    DD f = 1.0, g = x, fp = 0.0, gp = 1.0;
    DD t = 1.0, s = x, u = DD(x) * DD(x) * 0.5, v = 1.0;
    fp = u;
    for (int k = 1; k < 400; ++k) {
        const double kk = 3.0 * k;
        t = t * x3 / ((kk - 1.0) * kk);
        s = s * x3 / (kk * (kk + 1.0));
        v = v * x3 / (kk * (kk - 2.0));
        if (k > 1) {
            u = u * x3 / ((kk - 3.0) * (kk - 1.0));
            fp += u;
        }
        f += t;
        g += s;
        gp += v;
        const double tiny = 1e-34;
        if (std::fabs(t.hi) <= tiny * std::fabs(f.hi) && std::fabs(s.hi) <= tiny * std::fabs(g.hi) + 1e-300 &&
            std::fabs(u.hi) <= tiny * std::fabs(fp.hi) + 1e-300 && std::fabs(v.hi) <= tiny * std::fabs(gp.hi))
            break;
    }
    AiryPair r;
    r.ai = (kAi0 * f - kMinusAi0p * g).value();
    r.bi = (kSqrt3 * (kAi0 * f + kMinusAi0p * g)).value();
    r.ai_deriv = (kAi0 * fp - kMinusAi0p * gp).value();
    r.bi_deriv = (kSqrt3 * (kAi0 * fp + kMinusAi0p * gp)).value();
    return r;
}

// Sums of the u_k, v_k asymptotic coefficients (DLMF 9.7.2) in powers of 1/zeta.
struct AiryAsymSums {
    double su_alt = 0.0, sv_alt = 0.0;  // alternating sums (Ai, x > 0)
    double su = 0.0, sv = 0.0;          // plain sums (Bi, x > 0)
    double su_even = 0.0, su_odd = 0.0, sv_even = 0.0, sv_odd = 0.0;  // x < 0
};

AiryAsymSums airy_asym_sums(double zeta) {
    AiryAsymSums r;
    double uk = 1.0;
    double pw = 1.0;
    double last = 1.0;
    r.su_alt = r.su = 1.0;
    r.sv_alt = r.sv = 1.0;
    r.su_even = r.sv_even = 1.0;
    for (int k = 1; k < 200; ++k) {
        uk *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
        const double vk = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * uk;
        pw /= zeta;
        const double tu = uk * pw, tv = vk * pw;
        const double mag = std::max(std::fabs(tu), std::fabs(tv));
        if (mag > last) break;  // optimal truncation
        last = mag;
        const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        r.su_alt += sgn * tu;
        r.sv_alt += sgn * tv;
        r.su += tu;
        r.sv += tv;
        // (-1)^j u_{2j} zeta^{-2j} and (-1)^j u_{2j+1} zeta^{-2j-1}
        const int j = k / 2;
        const double sj = (j % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) {
            r.su_even += sj * tu;
            r.sv_even += sj * tv;
        } else {
            r.su_odd += sj * tu;
            r.sv_odd += sj * tv;
        }
        if (mag < 1e-18) break;
    }
    return r;
}

// x > 0, scaled by exp(+-zeta).
AiryPair airy_asym_positive_scaled(double x) {
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    const double x14 = std::sqrt(std::sqrt(x));
    const AiryAsymSums s = airy_asym_sums(zeta);
    AiryPair r;
    r.ai = 0.5 * kInvSqrtPi / x14 * s.su_alt;
    r.ai_deriv = -0.5 * kInvSqrtPi * x14 * s.sv_alt;
    r.bi = kInvSqrtPi / x14 * s.su;
    r.bi_deriv = kInvSqrtPi * x14 * s.sv;
    return r;
}

AiryPair airy_asym_negative(double x) {
    const double t = -x;
    const double zeta = 2.0 / 3.0 * t * std::sqrt(t);
    const double t14 = std::sqrt(std::sqrt(t));
    const AiryAsymSums s = airy_asym_sums(zeta);
    const double chi = zeta - 0.25 * std::numbers::pi;
    const double c = std::cos(chi), sn = std::sin(chi);
    AiryPair r;
    r.ai = kInvSqrtPi / t14 * (c * s.su_even + sn * s.su_odd);
    r.bi = kInvSqrtPi / t14 * (-sn * s.su_even + c * s.su_odd);
    r.ai_deriv = kInvSqrtPi * t14 * (sn * s.sv_even - c * s.sv_odd);
    r.bi_deriv = kInvSqrtPi * t14 * (c * s.sv_even + sn * s.sv_odd);
    return r;
}

void check_airy_range(double x) {
    check_finite(x, "airy");
    if (std::fabs(x) > 200.0) throw DomainError("airy: |x| > 200");
}

// Hankel asymptotic P, Q for order nu (DLMF 10.17.3).
void hankel_pq(double nu, double x, double& p, double& q) {
    const double mu = 4.0 * nu * nu;
    p = 1.0;
    q = 0.0;
    double a = 1.0;
    double last = 1e300;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        a *= (mu - odd * odd) / (k * 8.0 * x);
        const double mag = std::fabs(a);
        if (mag == 0.0) break;
        if (mag > last) break;
        last = mag;
        // term (-1)^{floor(k/2)} a_k / x^k goes to P (k even) or Q (k odd)
        const int j = k / 2;
        const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0)
            p += sgn * a;
        else
            q += sgn * a;
        if (mag < 1e-18) break;
    }
}

// Ascending series sum_k (-x^2/4)^k / (k! (nu+1)_k), without the prefactor.
DD bessel_j_series_sum(double nu, double x) {
    const DD y = DD(x) * DD(x) * (-0.25);
    DD t = 1.0, sum = 1.0;
    for (int k = 1; k < 500; ++k) {
        t = t * y / (DD(static_cast<double>(k)) * DD(nu + k));
        sum += t;
        if (std::fabs(t.hi) < 1e-34 * std::fabs(sum.hi)) break;
    }
    return sum;
}

double bessel_j_nonneg_int_or_general(double nu, double x) {
    if (x > kBesselJCrossover) {
        double p, q;
        hankel_pq(nu, x, p, q);
        const double chi = x - (0.5 * nu + 0.25) * std::numbers::pi;
        return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
    }
    const double pref = std::pow(0.5 * x, nu) / std::tgamma(nu + 1.0);
    return pref * bessel_j_series_sum(nu, x).value();
}

// Ascending series of I_nu for nu in {0, 1}: (x/2)^nu / nu! sum (x^2/4)^k / (k! (k+nu)!).
DD bessel_i_series(int nu, double x) {
    const DD y = DD(x) * DD(x) * 0.25;
    DD t = 1.0, sum = 1.0;
    for (int k = 1; k < 500; ++k) {
        t = t * y / (static_cast<double>(k) * static_cast<double>(k + nu));
        sum += t;
        if (t.hi < 1e-34 * sum.hi) break;
    }
    if (nu == 1) sum = sum * (DD(x) * 0.5);
    return sum;
}

// K0 and K1 by their logarithmic ascending series (DLMF 10.31.1).
void bessel_k_series(double x, DD& k0, DD& k1) {
    const DD y = DD(x) * DD(x) * 0.25;
    const DD lnhalf = numeric::log(x) - numeric::kLn2;
    const DD i0 = bessel_i_series(0, x);
    const DD i1 = bessel_i_series(1, x);

    // psi(k+1) = -gamma + H_k
    DD h = 0.0;  // H_k
    DD t0 = 1.0;  // y^k / (k!)^2
    DD t1 = 1.0;  // y^k / (k! (k+1)!)
    DD s0 = -numeric::kEulerGamma;
    DD s1 = DD(1.0) - numeric::kEulerGamma * 2.0;  // psi(1) + psi(2)
    for (int k = 1; k < 500; ++k) {
        const double kd = k;
        h += DD(1.0) / DD(kd);
        t0 = t0 * y / (kd * kd);
        t1 = t1 * y / (kd * (kd + 1.0));
        const DD psi1 = h - numeric::kEulerGamma;
        const DD psi2 = psi1 + DD(1.0) / DD(kd + 1.0);
        const DD a0 = t0 * psi1;
        const DD a1 = t1 * (psi1 + psi2);
        s0 += a0;
        s1 += a1;
        if (std::fabs(a0.hi) < 1e-34 * std::fabs(s0.hi) && std::fabs(a1.hi) < 1e-34 * std::fabs(s1.hi)) break;
    }
    k0 = s0 - lnhalf * i0;
    k1 = DD(1.0) / DD(x) + lnhalf * i1 - s1 * (DD(x) * 0.25);
}

// Large-x expansions: I_nu e^{-x} and K_nu e^{x} (DLMF 10.40.1, 10.40.2).
void bessel_ik_asym_scaled(int nu, double x, double& i_scaled, double& k_scaled) {
    const double mu = 4.0 * nu * nu;
    double a = 1.0, si = 1.0, sk = 1.0, last = 1e300;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        a *= (mu - odd * odd) / (k * 8.0 * x);
        const double mag = std::fabs(a);
        if (mag == 0.0 || mag > last) break;
        last = mag;
        si += (k % 2 == 0 ? a : -a);
        sk += a;
        if (mag < 1e-18) break;
    }
    i_scaled = si / std::sqrt(2.0 * std::numbers::pi * x);
    k_scaled = sk * std::sqrt(std::numbers::pi / (2.0 * x));
}

void check_bessel_x(double x, const char* fn) {
    check_finite(x, fn);
    if (x <= 0.0) throw DomainError(std::string(fn) + ": x must be positive");
    if (x > 100.0) throw DomainError(std::string(fn) + ": x > 100 outside supported range");
}

}  // namespace

AiryPair airy(double x) {
    check_airy_range(x);
    if (x < -kAiryCrossover) return airy_asym_negative(x);
    if (x <= kAiryCrossover) return airy_maclaurin(x);
    AiryPair r = airy_asym_positive_scaled(x);
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    const double em = std::exp(-zeta), ep = std::exp(zeta);
    r.ai *= em;
    r.ai_deriv *= em;
    r.bi *= ep;
    r.bi_deriv *= ep;
    return r;
}

AiryPair airy_scaled(double x) {
    check_airy_range(x);
    if (x <= 0.0) return airy(x);
    if (x > kAiryCrossover) return airy_asym_positive_scaled(x);
    AiryPair r = airy_maclaurin(x);
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    const double em = std::exp(-zeta), ep = std::exp(zeta);
    r.ai *= ep;
    r.ai_deriv *= ep;
    r.bi *= em;
    r.bi_deriv *= em;
    return r;
}

double bessel_j(double nu, double x) {
    check_finite(nu, "bessel_j");
    check_finite(x, "bessel_j");
    if (nu < -1.0 || nu > 1.0) throw DomainError("bessel_j: order outside [-1, 1]");
    const bool integer_order = (nu == std::nearbyint(nu));
    if (x <= 0.0) {
        if (!integer_order) throw DomainError("bessel_j: x must be positive for non-integer order");
        if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
        // J_n(-x) = (-1)^n J_n(x)
        const double v = bessel_j(std::fabs(nu), -x);
        return (nu == 0.0) ? v : -v;
    }
    if (x > 100.0) throw DomainError("bessel_j: x > 100 outside supported range");
    if (nu == -1.0) return -bessel_j_nonneg_int_or_general(1.0, x);
    return bessel_j_nonneg_int_or_general(nu, x);
}

double bessel_y0(double x) {
    check_bessel_x(x, "bessel_y0");
    if (x > kBesselJCrossover) {
        double p, q;
        hankel_pq(0.0, x, p, q);
        const double chi = x - 0.25 * std::numbers::pi;
        return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::sin(chi) + q * std::cos(chi));
    }
    const DD y = DD(x) * DD(x) * 0.25;
    const DD j0 = bessel_j_series_sum(0.0, x);
    DD h = 0.0, t = 1.0, s = 0.0;
    for (int k = 1; k < 500; ++k) {
        const double kd = k;
        h += DD(1.0) / DD(kd);
        t = t * y / (kd * kd);
        const DD term = t * h;
        if (k % 2 == 1)
            s += term;
        else
            s -= term;
        if (std::fabs(term.hi) < 1e-34 * std::fabs(s.hi)) break;
    }
    const DD lnhalf = numeric::log(x) - numeric::kLn2;
    const DD bracket = (lnhalf + numeric::kEulerGamma) * j0 + s;
    return (bracket * 2.0 / kPi).value();
}

ModifiedBessel bessel_mod_scaled(double x) {
    check_bessel_x(x, "bessel_mod");
    ModifiedBessel r;
    const double ex = std::exp(-x);
    if (x > kBesselICrossover) {
        double dummy;
        bessel_ik_asym_scaled(0, x, r.i0, dummy);
        bessel_ik_asym_scaled(1, x, r.i1, dummy);
    } else {
        r.i0 = bessel_i_series(0, x).value() * ex;
        r.i1 = bessel_i_series(1, x).value() * ex;
    }
    if (x > kBesselKCrossover) {
        double dummy;
        bessel_ik_asym_scaled(0, x, dummy, r.k0);
        bessel_ik_asym_scaled(1, x, dummy, r.k1);
    } else {
        DD k0, k1;
        bessel_k_series(x, k0, k1);
        const double e = std::exp(x);
        r.k0 = k0.value() * e;
        r.k1 = k1.value() * e;
    }
    return r;
}

ModifiedBessel bessel_mod(double x) {
    check_bessel_x(x, "bessel_mod");
    ModifiedBessel r;
    if (x > kBesselICrossover) {
        r = bessel_mod_scaled(x);
        const double e = std::exp(x);
        r.i0 *= e;
        r.i1 *= e;
        r.k0 /= e;
        r.k1 /= e;
        return r;
    }
    r.i0 = bessel_i_series(0, x).value();
    r.i1 = bessel_i_series(1, x).value();
    if (x > kBesselKCrossover) {
        double dummy;
        bessel_ik_asym_scaled(0, x, dummy, r.k0);
        bessel_ik_asym_scaled(1, x, dummy, r.k1);
        const double e = std::exp(-x);
        r.k0 *= e;
        r.k1 *= e;
    } else {
        DD k0, k1;
        bessel_k_series(x, k0, k1);
        r.k0 = k0.value();
        r.k1 = k1.value();
    }
    return r;
}

std::complex<double> log_gamma(std::complex<double> z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("log_gamma: non-finite argument");
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::nearbyint(z.real()))
        throw DomainError("log_gamma: pole at non-positive integer");

    // Shift right with lnG(z) = lnG(z+n) - sum log(z+k); principal logs keep the
    // continuation analytic in each half plane.
    std::complex<double> shift = 0.0;
    while (z.real() < 15.0) {
        shift += std::log(z);
        z += 1.0;
    }
    static constexpr double bern[] = {1.0 / 6.0,      -1.0 / 30.0,  1.0 / 42.0,        -1.0 / 30.0,
                                      5.0 / 66.0,     -691.0 / 2730.0, 7.0 / 6.0,      -3617.0 / 510.0,
                                      43867.0 / 798.0, -174611.0 / 330.0};
    const std::complex<double> zinv = 1.0 / z;
    const std::complex<double> zinv2 = zinv * zinv;
    std::complex<double> pw = zinv;
    std::complex<double> series = 0.0;
    for (int k = 1; k <= 10; ++k) {
        series += bern[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * pw;
        pw *= zinv2;
    }
    const double half_log_2pi = 0.91893853320467274178;
    return (z - 0.5) * std::log(z) - z + half_log_2pi + series - shift;
}

}  // namespace painleve::specialfn
