#include "painleve/hamiltonian.hpp"

#include <string>

#include "painleve/error.hpp"

namespace painleve::hamiltonian {

double h2_value(const HamState& s) {
    return 0.5 * s.p * s.p - (s.q * s.q + 0.5 * s.z) * s.p - (s.alpha + 0.5) * s.q;
}

std::pair<double, double> h2_rhs(const HamState& s) {
    return {s.p - s.q * s.q - 0.5 * s.z, 2.0 * s.q * s.p + s.alpha + 0.5};
}

double p_from_q(double z, double q, double dq) { return dq + q * q + 0.5 * z; }

double dp_from_q(double z, double q, double dq, double alpha) {
    const double d2q = 2.0 * q * q * q + z * q + alpha;
    return d2q + 2.0 * q * dq + 0.5;
}

double q_from_p(double z, double p, double dp, double alpha) {
    if (p == 0.0) throw SingularInput("q_from_p: p vanishes at z = " + std::to_string(z));
    return (dp - alpha - 0.5) / (2.0 * p);
}

double dq_from_p(double z, double p, double dp, double d2p, double alpha) {
    const double q = q_from_p(z, p, dp, alpha);
    return d2p / (2.0 * p) - q * dp / p;
}

std::pair<double, double> qp_from_sigma(double z, double /*s*/, double ds, double d2s, double alpha) {
    if (ds == 0.0) throw SingularInput("qp_from_sigma: sigma' vanishes at z = " + std::to_string(z));
    return {(4.0 * d2s + 2.0 * alpha + 1.0) / (8.0 * ds), -2.0 * ds};
}

}  // namespace painleve::hamiltonian
