#pragma once

#include "fucik/functionals.hpp"

namespace fucik {

struct EigenResult {
    double value = 0.0;
    Vector function; // on S, sign-normalized where applicable
    double residual = 0.0;
    double gap = 0.0; // distance to the next computed eigenvalue (p=2 only)
};

/// Iterative solver gave up; carries the last iterate for diagnosis.
struct SolverFailure : std::runtime_error {
    Vector last;
    double residual;
    SolverFailure(const std::string& msg, Vector u, double r)
        : std::runtime_error(msg), last(std::move(u)), residual(r) {}
};

/// First eigenvalue/eigenfunction of the collar-weighted problem:
/// minimize Lambda(1-a)[u]^p + ||u||^p_{L^p(Omega)} over S.
EigenResult lambda1(const NonlocalEnergy& E);

/// Same minimization with the constraint taken over a collar sub-region
/// (a list of collar element indices with positive total measure).
EigenResult lambda1_subset(const NonlocalEnergy& E, const std::vector<int>& elems);

/// lambda1 via projected gradient descent regardless of p (the p=2 pencil
/// cross-check uses this as the independent second algorithm).
EigenResult lambda1_descent(const NonlocalEnergy& E);

/// Second smallest finite eigenvalue of the dense pencil (p = 2 only).
EigenResult lambda2_dense(const NonlocalEnergy& E);

} // namespace fucik
