#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace painleve::numeric {

/// Finite-difference weights (Fornberg's recursion) for derivatives 0..m at x0
/// from nodes x. Result is w[k][j]: weight of f(x[j]) in the k-th derivative.
std::vector<std::vector<double>> fd_weights(double x0, const std::vector<double>& x, int m);

/// Derivative of sampled data by a local polynomial through `width` nearest
/// nodes (shifted one-sided near the ends). Nodes need not be uniform.
std::vector<double> differentiate(const std::vector<double>& x, const std::vector<double>& f, int order,
                                  int width = 7);

/// Quintic Hermite interpolant on [z0, z1] from values, first and second
/// derivatives at both ends.
struct QuinticHermite {
    double z0 = 0.0, z1 = 0.0;
    double c[6] = {0, 0, 0, 0, 0, 0};  // coefficients in s = (z - z0)

    QuinticHermite() = default;
    QuinticHermite(double za, double zb, double y0, double d0, double dd0, double y1, double d1, double dd1);

    /// value, first, second derivative at z
    void eval(double z, double& y, double& dy, double& d2y) const;
    [[nodiscard]] double value(double z) const;
};

/// Evenly spaced grid a, a+h, ..., up to b inclusive (within h*1e-9).
std::vector<double> linspace_step(double a, double b, double h);

/// Parse "a:b:h" into a grid.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace painleve::numeric
