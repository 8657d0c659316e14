#include "painleve/specialsol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "painleve/ddouble.hpp"
#include "painleve/error.hpp"
#include "painleve/numeric.hpp"
#include "painleve/specialfn.hpp"

namespace painleve::specialsol {

namespace mp = boost::multiprecision;
using Big50 = mp::cpp_bin_float_50;
using Big100 = mp::cpp_bin_float_100;
using Cplx100 = mp::cpp_complex_100;

// ---- IntPolynomial -----------------------------------------------------------------

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPolynomial IntPolynomial::monomial(const BigInt& c, int k) {
    std::vector<BigInt> v(static_cast<std::size_t>(k) + 1, 0);
    v[k] = c;
    return IntPolynomial(std::move(v));
}

void IntPolynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

BigInt IntPolynomial::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
    return c_[k];
}

IntPolynomial IntPolynomial::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<BigInt> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
    return IntPolynomial(std::move(d));
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
    std::vector<BigInt> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t k = 0; k < c_.size(); ++k) r[k] += c_[k];
    for (std::size_t k = 0; k < o.c_.size(); ++k) r[k] += o.c_[k];
    return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
    std::vector<BigInt> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t k = 0; k < c_.size(); ++k) r[k] += c_[k];
    for (std::size_t k = 0; k < o.c_.size(); ++k) r[k] -= o.c_[k];
    return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<BigInt> r(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator*(const BigInt& k) const {
    std::vector<BigInt> r = c_;
    for (auto& x : r) x *= k;
    return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::divide(const IntPolynomial& d, bool& exact) const {
    if (d.is_zero()) throw InternalError("IntPolynomial::divide by zero polynomial");
    exact = true;
    if (degree() < d.degree()) {
        exact = is_zero();
        return {};
    }
    std::vector<BigInt> rem = c_;
    std::vector<BigInt> q(static_cast<std::size_t>(degree() - d.degree()) + 1, 0);
    const BigInt& lead = d.c_.back();
    for (int k = degree() - d.degree(); k >= 0; --k) {
        const BigInt& top = rem[k + d.degree()];
        if (top % lead != 0) exact = false;
        const BigInt f = top / lead;
        q[k] = f;
        if (f == 0) continue;
        for (int j = 0; j <= d.degree(); ++j) rem[k + j] -= f * d.c_[j];
    }
    for (const auto& r : rem)
        if (r != 0) exact = false;
    return IntPolynomial(std::move(q));
}

double IntPolynomial::eval(double z) const {
    Big50 acc = 0, x = z;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Big50(*it);
    return static_cast<double>(acc);
}

std::complex<double> IntPolynomial::eval(std::complex<double> z) const {
    Cplx100 acc = 0, x(z.real(), z.imag());
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Cplx100(Big100(*it));
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

std::string IntPolynomial::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const BigInt& a = c_[k];
        if (a == 0) continue;
        const BigInt mag = a < 0 ? BigInt(-a) : a;
        if (first) {
            if (a < 0) os << "-";
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        first = false;
        os << mag;
        if (k >= 2)
            os << "*z^" << k;
        else if (k == 1)
            os << "*z";
    }
    return os.str();
}

// ---- Yablonskii-Vorob'ev ------------------------------------------------------------

std::vector<IntPolynomial> yv_sequence(int n) {
    if (n < 0 || n > kYvMax) throw ParameterError("yv: n must be in [0, " + std::to_string(kYvMax) + "]");
    std::vector<IntPolynomial> q;
    q.emplace_back(std::vector<BigInt>{1});
    if (n >= 1) q.emplace_back(std::vector<BigInt>{0, 1});
    const IntPolynomial z({0, 1});
    for (int k = 1; k < n; ++k) {
        const IntPolynomial& qk = q[k];
        const IntPolynomial d1 = qk.derivative();
        const IntPolynomial d2 = d1.derivative();
        const IntPolynomial num = z * qk * qk - (qk * d2 - d1 * d1) * BigInt(4);
        bool exact = false;
        IntPolynomial next = num.divide(q[k - 1], exact);
        if (!exact) throw InternalError("yv: inexact division at n = " + std::to_string(k + 1));
        q.push_back(std::move(next));
    }
    return q;
}

IntPolynomial yv_poly(int n) { return yv_sequence(n).back(); }

namespace {

using Cplx50 = mp::cpp_complex_50;
using LD = long double;
using CLD = std::complex<LD>;

template <class C, class R>
void horner2(const std::vector<R>& c, const C& x, C& p, C& dp) {
    p = 0;
    dp = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        dp = dp * x + p;
        p = p * x + C(*it);
    }
}

Big100 abs_sum(const std::vector<Big100>& c, const Big100& r) {
    Big100 acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + mp::abs(*it);
    return acc;
}

bool newton_mp(const std::vector<Big50>& c, Cplx50& x) {
    // stops at 45 digits or when rounding noise stalls the iteration
    Big50 prev = 1;
    for (int it = 0; it < 80; ++it) {
        Cplx50 p, dp;
        horner2(c, x, p, dp);
        if (p == Cplx50(0)) return true;
        if (dp == Cplx50(0)) return false;
        const Cplx50 step = p / dp;
        x -= step;
        const Big50 rel = mp::abs(step) / (1 + mp::abs(x));
        if (rel <= Big50(1e-45)) return true;
        if (rel < Big50(1e-18) && rel >= prev) return true;
        prev = rel;
    }
    return false;
}

// Aberth-Ehrlich simultaneous iteration.
bool aberth_mp(const std::vector<Big50>& c, std::vector<Cplx50>& x) {
    const std::size_t m = x.size();
    Big50 prev = 1;
    for (int it = 0; it < 1000; ++it) {
        Big50 worst = 0;
        for (std::size_t i = 0; i < m; ++i) {
            Cplx50 p, dp;
            horner2(c, x[i], p, dp);
            if (p == Cplx50(0)) continue;
            const Cplx50 ratio = p / dp;
            Cplx50 s = 0;
            for (std::size_t j = 0; j < m; ++j)
                if (j != i && x[i] != x[j]) s += Cplx50(1) / (x[i] - x[j]);
            const Cplx50 step = ratio / (Cplx50(1) - ratio * s);
            if (!mp::isfinite(step.real()) || !mp::isfinite(step.imag())) return false;
            x[i] -= step;
            worst = std::max(worst, Big50(mp::abs(step) / (1 + mp::abs(x[i]))));
        }
        if (worst < Big50(1e-40)) return true;
        if (worst < Big50(1e-18) && worst >= prev) return true;  // noise floor
        prev = worst;
    }
    return false;
}

void polish_mp(const std::vector<Big100>& c, Cplx100& x) {
    for (int it = 0; it < 8; ++it) {
        Cplx100 p, dp;
        horner2(c, x, p, dp);
        if (p == Cplx100(0) || dp == Cplx100(0)) return;
        const Cplx100 step = p / dp;
        x -= step;
        if (mp::abs(step) <= Big100(1e-60) * (1 + mp::abs(x))) return;
    }
}

bool distinct(const std::vector<Cplx50>& xs) {
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j)
            if (mp::abs(xs[i] - xs[j]) < Big50(1e-20) * (1 + mp::abs(xs[i]))) return false;
    return true;
}

// Roots of sum cr[k] x^k with cr[0] != 0, refined to 50 digits.
bool simple_roots(const std::vector<Big100>& cr, std::vector<Cplx100>& out) {
    const int M = static_cast<int>(cr.size()) - 1;
    // x = s t with s the geometric mean of the root moduli
    const Big100 s = mp::pow(mp::abs(cr[0] / cr[M]), Big100(1) / M);
    std::vector<LD> sc(M + 1);
    std::vector<Big50> c50(M + 1);
    {
        Big100 sk = 1;
        const Big100 top = cr[M] * mp::pow(s, M);
        for (int k = 0; k <= M; ++k) {
            const Big100 v = cr[k] * sk / top;
            sc[k] = static_cast<LD>(v);
            c50[k] = Big50(v);
            sk *= s;
        }
    }
    // companion eigenvalues give starting points; the monomial basis is badly
    // conditioned for large degree, so refinement is in 50-digit arithmetic
    using MatLD = Eigen::Matrix<LD, Eigen::Dynamic, Eigen::Dynamic>;
    MatLD comp = MatLD::Zero(M, M);
    for (int i = 1; i < M; ++i) comp(i, i - 1) = 1.0L;
    for (int i = 0; i < M; ++i) comp(i, M - 1) = -sc[i];
    Eigen::EigenSolver<MatLD> es(comp, false);
    std::vector<Cplx50> t(M);
    bool ok = es.info() == Eigen::Success;
    if (ok) {
        for (int i = 0; i < M; ++i) {
            const CLD e = es.eigenvalues()[i];
            t[i] = Cplx50(Big50(e.real()), Big50(e.imag()));
        }
        std::vector<Cplx50> start = t;
        for (auto& x : t) ok = newton_mp(c50, x) && ok;
        ok = ok && distinct(t);
        if (!ok) {
            // deterministic jitter so coincident eigenvalue estimates separate
            t = start;
            for (int i = 0; i < M; ++i)
                t[i] += Cplx50(Big50(1e-6 * std::cos(1.0 + i)), Big50(1e-6 * std::sin(2.0 + 3.0 * i)));
            ok = aberth_mp(c50, t) && distinct(t);
        }
    }
    if (!ok) {
        for (int i = 0; i < M; ++i) {
            const double ang = 2.0 * M_PI * (i + 0.25) / M + 0.1;
            t[i] = Cplx50(Big50(std::cos(ang)), Big50(std::sin(ang)));
        }
        ok = aberth_mp(c50, t) && distinct(t);
    }
    out.resize(M);
    for (int i = 0; i < M; ++i) out[i] = Cplx100(Big100(t[i].real()) * s, Big100(t[i].imag()) * s);
    return ok;
}

}  // namespace

std::vector<std::complex<double>> yv_roots(int n) {
    if (n < 0 || n > kYvRootsMax)
        throw ParameterError("yv_roots: n must be in [0, " + std::to_string(kYvRootsMax) + "]");
    const IntPolynomial q = yv_poly(n);
    const int N = q.degree();
    if (N <= 0) return {};
    std::vector<Big100> c(N + 1);
    for (int k = 0; k <= N; ++k) c[k] = Big100(q.coeff(k));
    int low = 0;
    while (c[low] == 0) ++low;  // Q_n(0) = 0 for some n
    std::vector<Big100> cr(c.begin() + low, c.end());
    const int M = N - low;
    std::vector<Cplx100> roots(static_cast<std::size_t>(low), Cplx100(0));
    if (M > 0) {
        // Q_n(z) = z^low P(z^3): solve for x = z^3 when the pattern holds
        bool cubic = M % 3 == 0;
        for (int k = 0; k <= M && cubic; ++k)
            if (k % 3 != 0 && cr[k] != 0) cubic = false;
        std::vector<Cplx100> found;
        bool ok;
        if (cubic) {
            std::vector<Big100> pr(M / 3 + 1);
            for (int j = 0; j <= M / 3; ++j) pr[j] = cr[3 * j];
            std::vector<Cplx100> xs;
            ok = simple_roots(pr, xs);
            const Big100 third = Big100(1) / 3;
            const Big100 tau = 2 * boost::math::constants::pi<Big100>() / 3;
            for (const auto& x : xs) {
                const Big100 r = mp::pow(mp::abs(x), third);
                const Big100 a = mp::atan2(x.imag(), x.real()) / 3;
                for (int j = 0; j < 3; ++j) {
                    Cplx100 z(r * mp::cos(a + j * tau), r * mp::sin(a + j * tau));
                    polish_mp(cr, z);
                    found.push_back(z);
                }
            }
        } else {
            ok = simple_roots(cr, found);
        }
        std::ostringstream bad;
        for (std::size_t i = 0; i < found.size(); ++i) {
            const Cplx100 xd(static_cast<double>(found[i].real()), static_cast<double>(found[i].imag()));
            Cplx100 p, dp;
            horner2(cr, xd, p, dp);
            if (mp::abs(p) > Big100(1e-8) * abs_sum(cr, mp::abs(xd)))
                bad << " #" << i << " (" << static_cast<double>(xd.real()) << ", " << static_cast<double>(xd.imag())
                    << ")";
        }
        if (!ok || !bad.str().empty())
            throw ConvergenceError("yv_roots: root finding failed for n = " + std::to_string(n) +
                                   (bad.str().empty() ? std::string(" (roots not separated)") : ":" + bad.str()));
        roots.insert(roots.end(), found.begin(), found.end());
    }
    // symmetric pairing: snap near-real roots, then emit conjugate pairs
    std::vector<std::complex<double>> reals, upper;
    for (const auto& x : roots) {
        const double re = static_cast<double>(x.real()), im = static_cast<double>(x.imag());
        if (std::fabs(im) <= 1e-12 * std::max(1.0, std::fabs(re))) {
            reals.emplace_back(re, 0.0);
        } else if (im > 0) {
            upper.emplace_back(re, im);
        }
    }
    if (reals.size() + 2 * upper.size() != static_cast<std::size_t>(N))
        throw ConvergenceError("yv_roots: roots of Q_" + std::to_string(n) + " do not pair into conjugates");
    std::vector<std::complex<double>> out = reals;
    for (const auto& u : upper) {
        out.push_back(u);
        out.push_back(std::conj(u));
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() > b.imag();
    });
    return out;
}

std::string roots_csv(int n, const std::vector<std::complex<double>>& roots) {
    std::ostringstream os;
    os << "re,im,n\n";
    char buf[96];
    for (const auto& r : roots) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d\n", r.real(), r.imag(), n);
        os << buf;
    }
    return os.str();
}

// ---- rational solutions -----------------------------------------------------------------

RationalP2::RationalP2(int n) : n_(n), sign_(n >= 0 ? 1 : -1) {
    const int m = std::abs(n);
    if (m > kYvMax) throw ParameterError("rational_p2: |n| must be <= " + std::to_string(kYvMax));
    if (m > 0) {
        auto seq = yv_sequence(m);
        qa_ = seq[m - 1];
        qb_ = seq[m];
    }
}

namespace {

// log-derivative L = Q'/Q and its first two derivatives at real z
std::array<Big50, 3> log_derivs(const IntPolynomial& q, const Big50& z) {
    Big50 p = 0, d1 = 0, d2 = 0, d3 = 0;
    const auto& c = q.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        d3 = d3 * z + d2;
        d2 = d2 * z + d1;
        d1 = d1 * z + p;
        p = p * z + Big50(*it);
    }
    // d2 and d3 hold Q''/2 and Q'''/6
    const Big50 q2 = 2 * d2, q3 = 6 * d3;
    if (p == 0) throw SingularInput("rational_p2: evaluation at a pole");
    const Big50 L = d1 / p;
    const Big50 L1 = q2 / p - L * L;
    const Big50 L2 = q3 / p - 3 * q2 * d1 / (p * p) + 2 * L * L * L;
    return {L, L1, L2};
}

}  // namespace

std::array<double, 3> RationalP2::eval(double z) const {
    if (n_ == 0) return {0.0, 0.0, 0.0};
    const Big50 x = z;
    const auto a = log_derivs(qa_, x);
    const auto b = log_derivs(qb_, x);
    std::array<double, 3> w;
    for (int i = 0; i < 3; ++i) w[i] = sign_ * static_cast<double>(a[i] - b[i]);
    return w;
}

std::vector<double> RationalP2::real_poles() const {
    std::vector<double> out;
    const int m = std::abs(n_);
    if (m == 0) return out;
    for (int k : {m - 1, m}) {
        if (k == 0) continue;
        for (const auto& r : yv_roots(k))
            if (r.imag() == 0.0) out.push_back(r.real());
    }
    std::sort(out.begin(), out.end());
    return out;
}

RationalP2 rational_p2(int n) { return RationalP2(n); }

// ---- Airy-type solutions -------------------------------------------------------------

AiryP2::AiryP2(double theta, int n) : theta_(theta), n_(n) {
    if (n != 1 && n != 2) throw ParameterError("airy_p2: n must be 1 or 2");
    if (!std::isfinite(theta)) throw ParameterError("airy_p2: theta must be finite");
}

std::array<double, 2> AiryP2::phi(double z) const {
    const double c = std::cbrt(0.5);
    const auto a = specialfn::airy(-c * z);
    const double ct = std::cos(theta_), st = std::sin(theta_);
    return {ct * a.ai + st * a.bi, -c * (ct * a.ai_deriv + st * a.bi_deriv)};
}

std::array<double, 3> AiryP2::eval(double z) const {
    const auto [f, f1] = phi(z);
    if (f == 0.0) throw SingularInput("airy_p2: zero of tau at z = " + std::to_string(z));
    // phi'' = -(z/2) phi
    const double f2 = -0.5 * z * f;
    const double f3 = -0.5 * f - 0.5 * z * f1;
    const double r1 = f1 / f, r2 = f2 / f, r3 = f3 / f;
    const double w1 = -r1;
    const double dw1 = -r2 + r1 * r1;
    const double d2w1 = -r3 + 3.0 * r2 * r1 - 2.0 * r1 * r1 * r1;
    if (n_ == 1) return {w1, dw1, d2w1};
    const double D = 2.0 * w1 * w1 + z;
    if (D == 0.0) throw SingularInput("airy_p2: zero of tau at z = " + std::to_string(z));
    const double D1 = 4.0 * w1 * dw1 + 1.0;
    const double D2 = 4.0 * dw1 * dw1 + 4.0 * w1 * d2w1;
    const double w2 = -w1 - 1.0 / D;
    const double dw2 = -dw1 + D1 / (D * D);
    const double d2w2 = -d2w1 + D2 / (D * D) - 2.0 * D1 * D1 / (D * D * D);
    return {w2, dw2, d2w2};
}

AiryP2 airy_p2(double theta, int n) { return AiryP2(theta, n); }

// ---- ladder ---------------------------------------------------------------------------

LadderState dp2_ladder(int n_max, double c1, double c2, const std::vector<double>& r_grid) {
    if (n_max < 0) throw ParameterError("dp2_ladder: n_max must be >= 0");
    if (!std::isfinite(c1) || !std::isfinite(c2) || (c1 == 0.0 && c2 == 0.0))
        throw ParameterError("dp2_ladder: C1, C2 must be finite and not both zero");
    for (double r : r_grid)
        if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("dp2_ladder: r grid must be positive");
    using numeric::DD;
    LadderState s;
    s.n_max = n_max;
    s.c1 = c1;
    s.c2 = c2;
    s.r = r_grid;
    const std::size_t m = r_grid.size();
    std::vector<std::vector<DD>> phi(n_max + 1, std::vector<DD>(m));
    for (std::size_t i = 0; i < m; ++i) {
        phi[0][i] = DD(1.0);
        if (n_max >= 1) {
            const auto b = specialfn::bessel_mod_scaled(r_grid[i]);
            // both numerator and denominator in exp-scaled form: I ~ e^r, K ~ e^-r
            const double e2 = std::exp(-2.0 * r_grid[i]);
            const double den = c1 * b.i0 + c2 * b.k0 * e2;
            if (den == 0.0) throw DomainError("dp2_ladder: seed denominator vanishes at r = " + std::to_string(r_grid[i]));
            phi[1][i] = DD(c1 * b.i1 - c2 * b.k1 * e2) / DD(den);
        }
    }
    for (int n = 1; n < n_max; ++n) {
        for (std::size_t i = 0; i < m; ++i) {
            const DD& p = phi[n][i];
            const DD den = DD(1.0) - p * p;
            if (std::fabs(den.value()) < 1e-12) {
                throw DomainError("dp2_ladder: 1 - phi_n^2 degenerate at n = " + std::to_string(n) +
                                  ", r = " + std::to_string(r_grid[i]));
            }
            phi[n + 1][i] = DD(2.0 * n) * p / (DD(r_grid[i]) * den) - phi[n - 1][i];
        }
    }
    s.phi.assign(n_max + 1, std::vector<double>(m));
    s.dphi.assign(n_max + 1, std::vector<double>(m, 0.0));
    for (int n = 0; n <= n_max; ++n)
        for (std::size_t i = 0; i < m; ++i) {
            s.phi[n][i] = phi[n][i].value();
            if (n >= 1) {
                const DD& p = phi[n][i];
                const DD d = DD(-static_cast<double>(n)) * p / DD(r_grid[i]) + (DD(1.0) - p * p) * phi[n - 1][i];
                s.dphi[n][i] = d.value();
            }
        }
    return s;
}

double csg_residual(int n, double r, double phi, double dphi, double d2phi) {
    const double den = 1.0 - phi * phi;
    if (den == 0.0) throw SingularInput("csg_residual: phi^2 = 1");
    return d2phi + dphi / r + phi / den * (dphi * dphi - double(n) * n / (r * r)) + phi * den;
}

LadderReport ladder_verify(const LadderState& s, double tol) {
    if (s.r.size() < 9) throw ParameterError("ladder_verify: need at least 9 grid points");
    LadderReport rep;
    rep.tol = tol;
    rep.pass = true;
    std::vector<std::vector<double>> d1(s.n_max + 1), d2(s.n_max + 1);
    for (int n = 0; n <= s.n_max; ++n) {
        d1[n] = numeric::differentiate(s.r, s.phi[n], 1, 7);
        d2[n] = numeric::differentiate(s.r, s.phi[n], 2, 9);
    }
    for (int n = 1; n <= s.n_max; ++n) {
        LadderCheck c;
        c.n = n;
        for (std::size_t i = 0; i < s.r.size(); ++i) {
            const double r = s.r[i];
            const double p = s.phi[n][i], q = s.phi[n - 1][i];
            c.res_a = std::max(c.res_a, std::fabs(d1[n][i] + n / r * p - (1.0 - p * p) * q));
            c.res_b = std::max(c.res_b, std::fabs(d1[n - 1][i] - (n - 1) / r * q + (1.0 - q * q) * p));
            c.res_ode = std::max(c.res_ode, std::fabs(csg_residual(n, r, p, d1[n][i], d2[n][i])));
        }
        if (!(c.res_a <= tol && c.res_b <= tol && c.res_ode <= tol)) rep.pass = false;
        rep.checks.push_back(c);
    }
    return rep;
}

}  // namespace painleve::specialsol
