#pragma once

#include "fucik/functionals.hpp"

namespace fucik {

/// Autonomous nonlinearity f(s) with closed-form primitive F and slope f',
/// from the built-in catalog. The (x, s) signature of the continuous problem
/// degenerates to s only: every catalog entry is uniform in x.
struct Nonlinearity {
    enum class Kind { Linear, LinearArctan, PiecewiseLinear };
    Kind kind = Kind::Linear;
    double c = 0.0;   // linear slope (Linear, LinearArctan)
    double amp = 0.0; // arctan amplitude (LinearArctan)
    double a = 0.0;   // positive-side slope (PiecewiseLinear)
    double b = 0.0;   // negative-side slope (PiecewiseLinear)

    static Nonlinearity linear(double c) { return {Kind::Linear, c, 0, 0, 0}; }
    static Nonlinearity linear_arctan(double c, double amp) {
        return {Kind::LinearArctan, c, amp, 0, 0};
    }
    static Nonlinearity piecewise_linear(double a, double b) {
        return {Kind::PiecewiseLinear, 0, 0, a, b};
    }

    double f(double s) const;
    double F(double s) const; // primitive with F(0) = 0
    double fprime(double s) const;
};

/// First eigenvalue of the problem with collar weight m (nodal, p = 2):
/// inf [Lambda(1-a)[u]^2 + ||u||^2_{L^2(Omega)}] / ((1/eps) int_collar m u^2).
double weighted_lambda1(const Vector& m, const NonlocalEnergy& E);

/// Psi(u) = (1/2)Lambda(1-a)[u]^2 + (1/2)||u||^2 - (1/eps) int_collar F(u).
double psi(const Vector& u, const Nonlinearity& f, const NonlocalEnergy& E);

/// Weak-form gradient of Psi against every nodal basis function.
Vector grad_psi(const Vector& u, const Nonlinearity& f, const NonlocalEnergy& E);

struct NonresSolution {
    Vector u;
    double psi_value = 0.0;
    double residual = 0.0; // || grad_psi ||
    double endpoint_scale = 0.0; // final R of the mountain-pass endpoints
    int iterations = 0;
    bool converged = false;
};

/// Mountain pass on Psi between -R phi1 and +R phi1, R doubled until both
/// endpoint values drop below the interior path maximum; the argmax is then
/// sharpened by a damped Newton iteration on grad_psi = 0.
NonresSolution solve_041(const Nonlinearity& f, const NonlocalEnergy& E,
                         int path_samples = 41, double tol = 1e-8);

struct TrivialSearchReport {
    double min_residual = 0.0; // over all restarts, of S-normalized iterates
    Vector argmin;
    int starts = 0;
};

/// Heuristic evidence for the only-trivial-solution statement: minimizes the
/// weighted-problem residual over S from fixed-seed random starts (plus any
/// caller-supplied extra starts) and reports the smallest residual found.
/// A floor bounded away from zero is evidence, not proof, of nonexistence.
TrivialSearchReport only_trivial_check(const Vector& m, const Vector& bw,
                                       const NonlocalEnergy& E, int starts = 20,
                                       unsigned seed = 20240901,
                                       const std::vector<Vector>& extra = {});

} // namespace fucik
