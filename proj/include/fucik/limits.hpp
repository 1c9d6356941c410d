#pragma once

#include "fucik/eigenpair.hpp"

#include <functional>
#include <utility>

namespace fucik {

/// Exact first two eigenvalues (tanh 1, coth 1) of the local limit problem
/// -u'' + u = 0 on (-1,1) with the spectral parameter on the boundary.
/// Only p = 2 on Omega = (-1,1) has this closed form.
std::pair<double, double> steklov_exact_1d(double p, double a, double b);

/// First two eigenvalues of the local problem -u'' + u = (lambda/eps)
/// chi_{collar} u on (-1,1) with natural boundary conditions: the finite
/// collar-width counterpart of the boundary-weighted problem above. Solved
/// from the closed-form matching conditions tan(k eps) = tanh(1-eps)/k
/// (even branch) and tan(k eps) = coth(1-eps)/k (odd), lambda = eps(k^2+1).
std::pair<double, double> steklov_collar_1d(double eps);

/// Ratio [Lambda(1-alpha)[Eu]^p + ||Eu||^p_{L^p(Omega)}] /
/// [(1/(1-alpha)) ||Eu||^p_{L^p(collar)}] at collar width 1 - alpha, for the
/// nodal interpolant of u on Omega extended to the truncation box by linear
/// decay to zero (1D only). Approaches (||u'||^p + ||u||^p) / ||u||^p_{dOmega}
/// as alpha -> 1.
double lemma_f4_ratio(const DomainSpec& base, int resolution,
                      const std::function<double(double)>& u, double alpha);

struct LimitRow {
    double alpha = 0.0, epsilon = 0.0;
    double lambda1 = 0.0, lambda1_target = 0.0, rel_err1 = 0.0;
    double lambda2 = 0.0, lambda2_target = 0.0, rel_err2 = 0.0;
};

/// For each alpha, sets eps = 1 - alpha, rebuilds the mesh with resolution
/// scaled as 1/(1 - alpha) from (alphas[0], base_resolution), and records
/// both eigenvalues against the boundary-limit targets. p = 2, 1D.
std::vector<LimitRow> eigen_limit_study(const std::vector<double>& alphas,
                                        const DomainSpec& base, int base_resolution);

} // namespace fucik
