#pragma once

#include "fucik/mountainpass.hpp"

#include <string>

namespace fucik {

struct CurvePoint {
    double s = 0.0;
    double c = 0.0;     // minimax level c(s); curve point is (s + c, c)
    bool converged = false;
};

/// First nontrivial curve: {(s+c(s), c(s))} together with its mirror
/// across the diagonal.
struct FucikCurve {
    std::vector<CurvePoint> points; // ordered by s
    double lambda1 = 0.0;

    /// (a, b) pairs closed under the mirror (a,b) -> (b,a).
    std::vector<std::array<double, 2>> mirrored() const;
};

struct SweepOptions {
    int path_samples = 41;
    DeformOptions deform;
    bool warm_start = true; // reuse the final path of the previous s
};

/// Runs the minimax for every s in the (ascending, s[0] = 0) grid.
FucikCurve sweep(const std::vector<double>& s_grid, const NonlocalEnergy& E,
                 const SweepOptions& opts = {});

struct CurveCheck {
    bool above_lambda1 = false;  // c(s) > lambda1 for every converged s
    bool decreasing = false;     // c strictly decreasing
    bool shifted_increasing = false; // s + c(s) strictly increasing
    bool lipschitz = false;      // |dc| <= ds * (1 + 1e-6)
    bool tail = false;           // c(s_max) - l1 < c(s_mid) - l1
    std::string detail;          // first offending pair, when any
    bool all() const {
        return above_lambda1 && decreasing && shifted_increasing && lipschitz && tail;
    }
};

/// Property checks of the curve (monotonicity, Lipschitz bound, asymptote
/// trend) over the converged points only.
CurveCheck check_properties(const FucikCurve& curve);

struct TrivialLineReport {
    double max_vertical = 0.0;   // residual of (phi1, l1, b), b <= l1
    double max_horizontal = 0.0; // residual of (-phi1, a, l1), a >= l1
    double control = 0.0;        // residual of the perturbed pair (off the line)
    bool ok = false;
};

/// Membership of the trivial lines through (lambda1, lambda1): phi1 solves
/// the (l1, b) problem for any b and -phi1 the (a, l1) problem for any a.
TrivialLineReport trivial_lines_check(const NonlocalEnergy& E, double tol = 1e-7);

} // namespace fucik
