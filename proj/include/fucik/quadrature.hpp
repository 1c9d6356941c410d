#pragma once

#include <cmath>
#include <vector>

namespace fucik {

/// Gauss-Legendre rule on [0,1].
struct GaussRule {
    std::vector<double> x, w;
};

/// Cached Gauss-Legendre nodes/weights on [0,1], computed once per order.
const GaussRule& gauss_rule(int order);

// ---- exact 1D integrals of powers of a linear function ------------------
// u(t) = a + (b-a)t on [0,1]; integrals are per unit length (multiply by h).
// All handle the sign change inside the element exactly (the antiderivatives
// below are C^1 across u = 0).

namespace detail {
inline double pow_abs(double u, double q) { return std::pow(std::abs(u), q); }
// d/du chi = |u|^{p-2} u
inline double chi(double u, double p) { return pow_abs(u, p) / p; }
// d/du psi = |u|^p
inline double psi(double u, double p) { return pow_abs(u, p) * u / (p + 1.0); }
// d/du chi_pos = (u^+)^{p-1}
inline double chi_pos(double u, double p) { return u > 0 ? std::pow(u, p) / p : 0.0; }
// d/du psi_pos = (u^+)^p
inline double psi_pos(double u, double p) { return u > 0 ? std::pow(u, p + 1.0) / (p + 1.0) : 0.0; }
// d/du chi_neg = -((-u)^+)^{p-1}   (so that integrals of (u^-)^{p-1} use -chi_neg)
inline double chi_neg(double u, double p) { return u < 0 ? -std::pow(-u, p) / p : 0.0; }
inline double psi_neg(double u, double p) { return u < 0 ? std::pow(-u, p + 1.0) / (p + 1.0) : 0.0; }
} // namespace detail

/// \int_0^1 |u|^p dt for linear u: a -> b.
double int_abs_pow(double a, double b, double p);
/// \int_0^1 (u^+)^p dt.
double int_pos_pow(double a, double b, double p);
/// \int_0^1 (u^-)^p dt, with u^- = max(-u, 0).
double int_neg_pow(double a, double b, double p);

/// Weak-form loads: out0 = \int_0^1 f(u) (1-t) dt, out1 = \int_0^1 f(u) t dt,
/// for f(u) = |u|^{p-2} u, (u^+)^{p-1} and (u^-)^{p-1} respectively.
void load_signed_pow(double a, double b, double p, double& out0, double& out1);
void load_pos_pow(double a, double b, double p, double& out0, double& out1);
void load_neg_pow(double a, double b, double p, double& out0, double& out1);

} // namespace fucik
