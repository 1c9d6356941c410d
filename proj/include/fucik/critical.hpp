#pragma once

#include "fucik/functionals.hpp"

namespace fucik {

struct CriticalPoint {
    Vector u;          // on S
    double multiplier; // Lagrange multiplier; equals the level at criticality
    double level;      // J_s(u)
    double res_norm;   // || grad J_s - t I' ||
    int iterations = 0;
    bool converged = false;
};

/// Semismooth Newton on the KKT system grad J_s(u) = t I'(u), I(u) = 1,
/// started from u0 (projected to S). Sharpens a mountain-pass argmax or an
/// eigen iterate to machine-level stationarity.
CriticalPoint newton_polish(const NonlocalEnergy& E, const Vector& u0, double s,
                            int max_iter = 60, double tol = 1e-9);

/// Weighted mass accumulation used for the Hessian blocks:
/// out += coeff * int_region f(u) hat_i hat_j, f = |u|^{p-2} (part None)
/// or (u^+)^{p-2} 1_{u>0} (part Plus) or (u^-)^{p-2} 1_{u<0} (part Minus).
void add_weighted_mass(const Mesh& mesh, const Vector& u, double p, double coeff,
                       bool collar_only, SignPart part, Eigen::MatrixXd& out);

} // namespace fucik
