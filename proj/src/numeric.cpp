#include "painleve/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "painleve/error.hpp"

namespace painleve::numeric {

std::vector<std::vector<double>> fd_weights(double x0, const std::vector<double>& x, int m) {
    const int n = static_cast<int>(x.size()) - 1;
    std::vector<std::vector<double>> c(m + 1, std::vector<double>(n + 1, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

std::vector<double> differentiate(const std::vector<double>& x, const std::vector<double>& f, int order, int width) {
    const int n = static_cast<int>(x.size());
    if (static_cast<int>(f.size()) != n) throw DomainError("differentiate: size mismatch");
    if (n < width) throw DomainError("differentiate: fewer samples than stencil width");
    std::vector<double> out(n);
    std::vector<double> nodes(width);
    for (int i = 0; i < n; ++i) {
        int start = i - width / 2;
        start = std::clamp(start, 0, n - width);
        for (int j = 0; j < width; ++j) nodes[j] = x[start + j];
        const auto w = fd_weights(x[i], nodes, order);
        double s = 0.0;
        for (int j = 0; j < width; ++j) s += w[order][j] * f[start + j];
        out[i] = s;
    }
    return out;
}

QuinticHermite::QuinticHermite(double za, double zb, double y0, double d0, double dd0, double y1, double d1,
                               double dd1)
    : z0(za), z1(zb) {
    const double h = zb - za;
    c[0] = y0;
    c[1] = d0;
    c[2] = 0.5 * dd0;
    const double a = y1 - (c[0] + h * (c[1] + h * c[2]));
    const double b = (d1 - (c[1] + 2.0 * c[2] * h)) * h;
    const double cc = (dd1 - 2.0 * c[2]) * h * h;
    const double a3 = 10.0 * a - 4.0 * b + 0.5 * cc;
    const double a4 = -15.0 * a + 7.0 * b - cc;
    const double a5 = 6.0 * a - 3.0 * b + 0.5 * cc;
    c[3] = a3 / (h * h * h);
    c[4] = a4 / (h * h * h * h);
    c[5] = a5 / (h * h * h * h * h);
}

void QuinticHermite::eval(double z, double& y, double& dy, double& d2y) const {
    const double s = z - z0;
    y = c[0] + s * (c[1] + s * (c[2] + s * (c[3] + s * (c[4] + s * c[5]))));
    dy = c[1] + s * (2.0 * c[2] + s * (3.0 * c[3] + s * (4.0 * c[4] + s * 5.0 * c[5])));
    d2y = 2.0 * c[2] + s * (6.0 * c[3] + s * (12.0 * c[4] + s * 20.0 * c[5]));
}

double QuinticHermite::value(double z) const {
    double y, dy, d2y;
    eval(z, y, dy, d2y);
    return y;
}

std::vector<double> linspace_step(double a, double b, double h) {
    if (!(h != 0.0) || !std::isfinite(a) || !std::isfinite(b) || !std::isfinite(h))
        throw DomainError("grid: invalid bounds or step");
    if ((b - a) * h < 0.0) h = -h;
    const double span = (b - a) / h;
    const long n = static_cast<long>(std::floor(span + 1e-9));
    if (n > 10000000) throw DomainError("grid: too many points");
    std::vector<double> g(n + 1);
    for (long i = 0; i <= n; ++i) g[i] = a + static_cast<double>(i) * h;
    return g;
}

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> parts;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ':')) {
        try {
            size_t pos = 0;
            parts.push_back(std::stod(tok, &pos));
            if (pos != tok.size()) throw DomainError("grid: bad number '" + tok + "'");
        } catch (const std::invalid_argument&) {
            throw DomainError("grid: bad number '" + tok + "'");
        }
    }
    if (parts.size() != 3) throw DomainError("grid: expected a:b:h, got '" + spec + "'");
    return linspace_step(parts[0], parts[1], parts[2]);
}

}  // namespace painleve::numeric
