#pragma once

#include <utility>

namespace painleve::hamiltonian {

struct HamState {
    double z = 0.0;
    double q = 0.0;
    double p = 0.0;
    double alpha = 0.0;
};

/// H = p^2/2 - (q^2 + z/2) p - (alpha + 1/2) q.
double h2_value(const HamState& s);

/// (q', p') of the Hamiltonian system.
std::pair<double, double> h2_rhs(const HamState& s);

/// p = q' + q^2 + z/2, the P34 partner of a P_II solution.
double p_from_q(double z, double q, double dq);
/// p' given q, q' and P_II for q''.
double dp_from_q(double z, double q, double dq, double alpha);

/// q = (p' - alpha - 1/2) / (2p). SingularInput when p = 0.
double q_from_p(double z, double p, double dp, double alpha);
/// q' from p, p', p''. SingularInput when p = 0.
double dq_from_p(double z, double p, double dp, double d2p, double alpha);

/// q = (4 s'' + 2 alpha + 1) / (8 s'), p = -2 s'. SingularInput when s' = 0.
std::pair<double, double> qp_from_sigma(double z, double s, double ds, double d2s, double alpha);

/// S_II parameter realized by H_II along P_II(alpha) trajectories.
inline double sigma_beta(double alpha) { return alpha + 0.5; }

}  // namespace painleve::hamiltonian
