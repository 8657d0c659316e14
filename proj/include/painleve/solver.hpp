#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "painleve/equations.hpp"
#include "painleve/numeric.hpp"

namespace painleve::solver {

using equations::EquationId;
using equations::ParamSet;

struct StepControl {
    double rel_tol = 1e-12;
    double abs_tol = 1e-12;
    double max_step = 0.25;
    double pole_threshold = 20.0;  // |w| at which the inverse variable takes over
    double initial_step = 1e-3;
    long max_steps = 5'000'000;
};

void validate(const StepControl& c);  // throws ParameterError

// ---- generic first-order systems ---------------------------------------------

using State = std::vector<double>;
using SystemRhs = std::function<void(double z, const State& y, State& dy)>;

struct SystemSolution {
    std::vector<double> z;
    std::vector<State> y;
    long steps = 0;
};

/// Dormand-Prince 5(4) with PI step control. With an empty grid every accepted
/// step is recorded; otherwise steps are clipped so the solution is recorded
/// exactly at the grid points (which must lie between z0 and z1, ordered in the
/// direction of integration). Throws NumericalFailure on step underflow or a
/// non-finite state.
SystemSolution integrate_system(const SystemRhs& f, double z0, const State& y0, double z1, const StepControl& c,
                                const std::vector<double>& grid = {});

// ---- second-order equations with dense output --------------------------------

struct Sample {
    double z = 0.0;
    double w = 0.0;
    double dw = 0.0;
};

struct PoleRecord {
    double z0 = 0.0;
    int order = 1;
    double leading = 0.0;  // leading Laurent coefficient
    double bracket = 0.0;  // width of the final root bracket
};

enum class Mode { direct, inverse };

/// One accepted step. The interpolant is in w (direct) or in the inverse
/// variable v (inverse): v = 1/w for PII, v = w^{-1/2} for PI and P34.
struct Segment {
    numeric::QuinticHermite y;
    Mode mode = Mode::direct;
};

class Trajectory {
public:
    EquationId equation = EquationId::PII;
    ParamSet params;
    StepControl control;
    std::vector<Sample> samples;
    std::vector<Segment> segments;
    std::vector<PoleRecord> poles;
    std::string stop_reason;  // empty when z1 was reached

    /// (w, w', w'') from the dense output at z. DomainError outside the covered
    /// interval, SingularInput exactly at a pole.
    [[nodiscard]] std::array<double, 3> eval(double z) const;

    [[nodiscard]] double z_first() const;
    [[nodiscard]] double z_last() const;
    [[nodiscard]] bool reached_end() const { return stop_reason.empty(); }
};

struct IntegrateOptions {
    std::vector<double> grid;                        // output points, see integrate_system
    std::function<bool(const Sample&)> stop;         // checked after every accepted step
    bool pole_aware = false;
};

/// Integrates w'' = F(z, w, w') from (z0, w0, dw0) to z1.
Trajectory integrate(EquationId eq, const ParamSet& p, double z0, double w0, double dw0, double z1,
                     const StepControl& c, const IntegrateOptions& opt = {});

/// Same, continuing through movable poles (PI, PII, P34 only).
Trajectory integrate_pole_aware(EquationId eq, const ParamSet& p, double z0, double w0, double dw0, double z1,
                                const StepControl& c, IntegrateOptions opt = {});

/// Rebuilds dense output for a trajectory read back from disk (direct mode only).
void rebuild_segments(Trajectory& t);

// ---- Airy-seeded P_II family ------------------------------------------------

/// (k Ai(z), k Ai'(z)); z_start >= 8.
Sample seed_from_airy(double k, double z_start);

struct HMResult {
    double k_lo = 0.0;  // classified UNDER
    double k_hi = 0.0;  // classified OVER
    double k_star = 0.0;
    Trajectory trajectory;        // stitched pole-free run from z_start to z_probe
    std::vector<double> anchors;  // z where each refinement stage restarted
    int bisection_runs = 0;
};

/// Bisection on k for the boundary between pole-forming (OVER) and
/// sign-changing (UNDER) leftward runs. Because perturbations of the separatrix
/// grow like exp((2 sqrt 2 / 3)|z|^{3/2}), a single k resolved in double
/// precision only follows it part of the way; the run is then re-anchored where
/// the bracketing runs separate and bisection continues on a slope offset.
HMResult hastings_mcleod(double z_start, double z_probe, double tol, const StepControl& c = {});

// ---- serialization -----------------------------------------------------------

std::string to_json(const Trajectory& t);
Trajectory trajectory_from_json(const std::string& text);
std::string to_csv(const Trajectory& t);

}  // namespace painleve::solver
