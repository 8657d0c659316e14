#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "painleve/solver.hpp"
#include "painleve/specialsol.hpp"

namespace painleve::transforms {

enum class TransformId {
    P2_TO_P34,
    P34_TO_P2,
    INCEXX_TO_P2,
    TZITZEICA_TO_P3D7,
    CSG_TO_P5,
    CSG_TO_DEGP5,
    P3_TO_CSG,
    CSG_RATIO_TO_P3,
    MJ267_TO_P4,
    P2_TO_MJ34,
    MJ34_TO_P34EQ,
    MJ36_TO_P34EQ
};

std::string to_string(TransformId id);
TransformId transform_from_string(const std::string& name);  // ParameterError on unknown names
const std::vector<TransformId>& all_transforms();

/// Equations that appear as a source or a target. Painleve equations use the
/// conventions of the equations module; the rest are the auxiliary equations
/// the transforms connect to them.
enum class Eq {
    PII,        // alpha
    P34,        // alpha
    PIII6,      // alpha, beta, gamma, delta
    PIII7B,     // alpha, beta, gamma
    PIV,        // alpha, beta
    PV,         // alpha, beta, gamma, delta
    PVDEG,      // alpha, beta, gamma
    INCE_XX,    // u'' = u'^2/(2u) + 4u^2 + zu
    TZITZEICA,  // w'' = w'^2/w - w'/z + w^3 - 1
    CSG,        // n: phi'' + phi'/r + phi/(1-phi^2) (phi'^2 - n^2/r^2) + phi (1-phi^2) = 0
    MJ267,      // kappa, mu: third order
    MJ267_FI,   // kappa, mu, K: its second-order first integral
    MJ34,       // kappa: third order
    MJ36        // kappa: third order
};
std::string to_string(Eq e);
int order(Eq e);

using Params = std::map<std::string, double>;

struct Info {
    TransformId id;
    Eq source;
    Eq target;
    std::string map;           // the substitution
    std::string target_rule;   // target parameters in terms of source parameters
};
const Info& info(TransformId id);

/// Samples of one solution: state = (w, w', w'') at each s (w'' unused for
/// second-order equations).
struct Curve {
    Eq eq = Eq::PII;
    Params params;
    std::vector<double> s;
    std::vector<std::array<double, 3>> state;
};

/// One or more curves on a common grid (CSG_RATIO_TO_P3 takes phi_n and phi_{n+1}).
struct Source {
    std::vector<Curve> parts;
    std::string description;
};

// ---- sources --------------------------------------------------------------------

/// q = 0 for P_II(0).
Source zero_p2(double lo, double hi, double h);
/// p = z/2 for P34(0), the image of q = 0.
Source linear_p34(double lo, double hi, double h);
/// Samples of a solver trajectory of PII, P34 or PIII6 on [lo, hi].
Source from_trajectory(const solver::Trajectory& t, double lo, double hi, double h);
/// phi_n, ..., phi_{n+count-1} from a ladder, with phi' from the differential-difference relation.
Source from_ladder(const specialsol::LadderState& s, int n, int count = 1);
/// Integrates an auxiliary or Painleve source equation from s0 to s1 with output every h.
Source integrate_source(Eq eq, const Params& p, double s0, const std::array<double, 3>& y0, double s1, double h,
                        const solver::StepControl& c = {});
/// The registry's reference source for id.
Source seeded_source(TransformId id);

// ---- apply and verify ----------------------------------------------------------------

struct Mapped {
    TransformId id = TransformId::P2_TO_P34;
    Eq target = Eq::P34;
    Params target_params;
    std::vector<double> t;
    std::vector<std::array<double, 4>> y;  // y, y', y'', y'''
};

/// Maps every sample of the source. Derivatives of the image are exact up to
/// rounding: each source sample is expanded in a Taylor series from its own
/// equation and pushed through the substitution. DomainError where a
/// denominator vanishes or a radicand is negative; ParameterError when the
/// source is not the transform's source equation or params are missing.
/// `extra` supplies parameters that belong to the map itself (kappa for P2_TO_MJ34).
Mapped apply(TransformId id, const Source& src, const Params& extra = {});

/// Residual of eq at t for derivatives y = (y, y', y'', y''').
double residual(Eq eq, const Params& p, double t, const std::array<double, 4>& y);

struct VerificationReport {
    TransformId id = TransformId::P2_TO_P34;
    std::string source;
    std::string target;
    Params target_params;
    double max_residual = 0.0;  // max |target residual| over the grid
    double source_defect = 0.0;  // see source_defect()
    double t_lo = 0.0, t_hi = 0.0;
    int points = 0;
    double tol = 0.0;
    bool pass = false;
    std::string reason;  // set when apply failed

    [[nodiscard]] std::string to_json() const;
};

/// How far the samples are from one solution of their equation: the Taylor
/// series from each sample, stepped to the next sample, against that sample's
/// (w, w'), relative to 1 + |w|. A pointwise residual cannot see this because
/// any (w, w') is admissible initial data.
double source_defect(const Source& src);

/// Applies id and evaluates the target residual at every image point. Passes
/// when the residual and the source defect are both within tol. With `expect`
/// the residual uses those target parameters instead of the mapped ones and
/// the mapped ones must agree with them to tol (negative controls). Errors
/// from apply become a failed report.
VerificationReport verify(TransformId id, const Source& src, double tol, const Params& extra = {},
                          const std::optional<Params>& expect = std::nullopt);

// ---- first integrals of the third-order equations ---------------------------------

struct InvariantTrack {
    std::string name;
    double value = 0.0;      // at the first sample
    double max_drift = 0.0;  // max |value(x) - value(x0)|
};

struct FirstIntegralReport {
    TransformId id = TransformId::MJ34_TO_P34EQ;
    std::vector<InvariantTrack> invariants;
    double tol = 0.0;
    bool pass = false;

    [[nodiscard]] std::string to_json() const;
};

/// For MJ267_TO_P4 tracks K of the second-order first integral; for
/// MJ34_TO_P34EQ tracks C1 (u = exp(int y), u(x0) = 1) and C2; for MJ36_TO_P34EQ
/// tracks the integration constant of the u equation (u' = y) and C. Needs a
/// third-order curve of the matching equation. ParameterError otherwise.
FirstIntegralReport first_integral(TransformId id, const Curve& c, double tol = 1e-7);

}  // namespace painleve::transforms
