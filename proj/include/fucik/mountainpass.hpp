#pragma once

#include "fucik/critical.hpp"
#include "fucik/eigenpair.hpp"

namespace fucik {

/// Discrete path on S joining -phi1 to +phi1 (endpoints fixed).
struct PathOnS {
    std::vector<SphereState> samples; // size m >= 17, levels cached
};

struct MinimaxResult {
    double c_value = 0.0;
    SphereState argmax_state;
    PathOnS path;
    double reduced_grad_at_max = -1.0;
    int iterations = 0;
    bool converged = false;
    CriticalPoint critical; // polished saddle when converged via polish
};

struct DeformOptions {
    double rel_tol = 1e-6;
    double grad_tol = 1e-6;
    int max_sweeps = 4000;
    int top_k = 3;
    bool polish = true;
};

/// Samples project_to_S(t phi1 + (1-|t|) witness), t uniform in [-1,1].
PathOnS initial_path(const NonlocalEnergy& E, const Vector& phi1,
                     const Vector& witness, int m = 41);

/// Mountain-pass deformation: moves the top-k interior samples along the
/// projected negative gradient, reparametrizes by arc length (accepted only
/// when the path max does not increase), and sharpens the argmax by Newton
/// once progress stalls. c(s) is the final path max.
MinimaxResult deform(const PathOnS& start, double s, const NonlocalEnergy& E,
                     const DeformOptions& opts = {});

enum class CanonicalFamily { U1, U2, U3 };

/// Level of the normalized canonical deformation at parameter t in [0,1]:
/// u1 = (u^+ - (1-t) u^-), u2 = ((1-t)(u^+)^p + t (u^-)^p)^{1/p},
/// u3 = ((1-t) u^+ - u^-), each divided by its S-norm. Positive/negative
/// parts are taken pointwise, so the evaluation is exact for the interpolant.
double canonical_level(const NonlocalEnergy& E, const Vector& u, double s,
                       CanonicalFamily fam, double t);

/// Nodal snapshot of the same path point (nodewise parts, then projected).
Vector canonical_snapshot(const Mesh& mesh, const Vector& u, CanonicalFamily fam,
                          double t);

struct PathLevelReport {
    double mu = 0.0;             // level of the critical point
    double max_level[3] = {};    // max over samples for u1, u2, u3
    double arg_t[3] = {};        // offending / maximizing t
    bool ok = false;             // all maxima <= mu + tol
};

/// Checks Theorem-style level bounds along u1/u2/u3 from a critical point u.
PathLevelReport verify_path_levels(const NonlocalEnergy& E, const Vector& u,
                                   double s, int samples = 101, double tol = 1e-6);

} // namespace fucik
