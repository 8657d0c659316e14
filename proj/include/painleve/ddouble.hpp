#pragma once

// Double-double arithmetic used inside series summations. The public API of
// the library stays in plain double precision.

#include <cmath>

namespace painleve::numeric {

struct DD {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DD() = default;
    constexpr DD(double h) : hi(h), lo(0.0) {}  // NOLINT(google-explicit-constructor)
    constexpr DD(double h, double l) : hi(h), lo(l) {}

    [[nodiscard]] double value() const noexcept { return hi + lo; }
};

namespace detail {

inline DD two_sum(double a, double b) noexcept {
    const double s = a + b;
    const double bb = s - a;
    const double e = (a - (s - bb)) + (b - bb);
    return {s, e};
}

inline DD quick_two_sum(double a, double b) noexcept {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) noexcept {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

}  // namespace detail

inline DD operator+(DD a, DD b) noexcept {
    DD s = detail::two_sum(a.hi, b.hi);
    DD t = detail::two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = detail::quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return detail::quick_two_sum(s.hi, s.lo);
}

inline DD operator-(DD a) noexcept { return {-a.hi, -a.lo}; }
inline DD operator-(DD a, DD b) noexcept { return a + (-b); }

inline DD operator*(DD a, DD b) noexcept {
    DD p = detail::two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return detail::quick_two_sum(p.hi, p.lo);
}

inline DD operator*(DD a, double b) noexcept {
    DD p = detail::two_prod(a.hi, b);
    p.lo += a.lo * b;
    return detail::quick_two_sum(p.hi, p.lo);
}

inline DD operator/(DD a, DD b) noexcept {
    const double q1 = a.hi / b.hi;
    DD r = a - b * q1;
    const double q2 = r.hi / b.hi;
    r = r - b * q2;
    const double q3 = r.hi / b.hi;
    DD q = detail::quick_two_sum(q1, q2);
    return q + DD(q3);
}

inline DD operator/(DD a, double b) noexcept { return a / DD(b); }

inline DD& operator+=(DD& a, DD b) noexcept { return a = a + b; }
inline DD& operator-=(DD& a, DD b) noexcept { return a = a - b; }
inline DD& operator*=(DD& a, DD b) noexcept { return a = a * b; }
inline DD& operator/=(DD& a, DD b) noexcept { return a = a / b; }

inline double abs_hi(DD a) noexcept { return std::fabs(a.hi); }

inline constexpr DD kLn2{0.6931471805599453, 2.3190468138462996e-17};
inline constexpr DD kEulerGamma{0.5772156649015329, -4.942915152430645e-18};

/// exp in double-double: argument reduction by ln 2, then a Taylor series.
inline DD exp(DD x) noexcept {
    const double k = std::nearbyint(x.hi / kLn2.hi);
    DD r = x - kLn2 * k;
    // exp(r) = (exp(r/2^8))^(2^8)
    r = r * (1.0 / 256.0);
    DD term = 1.0;
    DD sum = 1.0;
    for (int n = 1; n < 30; ++n) {
        term = term * r / static_cast<double>(n);
        sum += term;
        if (std::fabs(term.hi) < 1e-34) break;
    }
    for (int i = 0; i < 8; ++i) sum = sum * sum;
    return {std::ldexp(sum.hi, static_cast<int>(k)), std::ldexp(sum.lo, static_cast<int>(k))};
}

/// Natural log of a positive double, refined to double-double by one Newton step.
inline DD log(double a) noexcept {
    const DD y0 = std::log(a);
    // y1 = y0 + a*exp(-y0) - 1
    return y0 + DD(a) * exp(-y0) - DD(1.0);
}

}  // namespace painleve::numeric
