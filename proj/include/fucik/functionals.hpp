#pragma once

#include "fucik/kernel.hpp"

namespace fucik {

struct NotProjectable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FucikParams {
    double a = 0.0, b = 0.0;
    double s() const { return a - b; }
};

/// A point on the constraint sphere S = { I(u) = (1/eps) int_{collar} |u|^p = 1 }.
struct SphereState {
    Vector u;
    double level = 0.0;     // cached J_s value (valid after evaluation)
    double red_grad = -1.0; // cached reduced gradient norm (< 0: not computed)
};

// ---- region integrals of the piecewise-linear interpolant ----------------
// 1D elements use closed-form antiderivatives (exact across sign changes);
// 2D triangles use a fixed symmetric rule.

/// int over the region of |T(u)|^p, T = id / positive part / negative part.
double region_integral_pow(const Mesh& mesh, const Vector& u, double p,
                           bool collar_only, SignPart part = SignPart::None);

/// g[i] += coeff * int over the region of f(u) hat_i, with f = |u|^{p-2}u,
/// (u^+)^{p-1} or (u^-)^{p-1} according to `part`.
void add_region_load(const Mesh& mesh, const Vector& u, double p, double coeff,
                     bool collar_only, SignPart part, Vector& g);

/// Same integrals over an explicit element subset (collar sub-regions).
double subset_integral_pow(const Mesh& mesh, const Vector& u, double p,
                           const std::vector<int>& elems, SignPart part = SignPart::None);
void add_subset_load(const Mesh& mesh, const Vector& u, double p, double coeff,
                     const std::vector<int>& elems, SignPart part, Vector& g);

/// Constraint I(u) = (1/eps) int_{collar} |u|^p.
double constraint_value(const Mesh& mesh, const Vector& u);

/// Nodal gradient of I: <I'(u), phi> = (p/eps) int_{collar} |u|^{p-2} u phi.
Vector constraint_gradient(const Mesh& mesh, const Vector& u);

// ---- the Fucik functionals ------------------------------------------------

/// J_s(u) = Lambda (1-alpha) [u]^p + int_Omega |u|^p - (s/eps) int_{collar} (u^+)^p.
double J_s(const Vector& u, double s, const NonlocalEnergy& E);

/// Nodal gradient: <g, phi> = p [ Lambda(1-a) H(u,phi) + int |u|^{p-2}u phi
///                               - (s/eps) int_{collar} (u^+)^{p-1} phi ].
Vector grad_J_s(const Vector& u, double s, const NonlocalEnergy& E);

/// eps^{1/p} u / ||u||_{L^p(collar)}; throws NotProjectable if u vanishes there.
SphereState project_to_S(const Mesh& mesh, const Vector& u);

/// min over scalar t of || grad_J_s(u) - t I'(u) ||_2 (Euclidean dual norm).
double reduced_grad_norm(const Vector& u, double s, const NonlocalEnergy& E);

/// Dual norm of the weak-form residual of the Fucik equation at (a, b):
/// v -> Lambda(1-a)H(u,v) + int |u|^{p-2}u v - (a/eps) int (u^+)^{p-1} v
///      + (b/eps) int (u^-)^{p-1} v.
double fucik_residual(const Vector& u, double a, double b, const NonlocalEnergy& E);
Vector fucik_residual_vector(const Vector& u, double a, double b, const NonlocalEnergy& E);

} // namespace fucik
