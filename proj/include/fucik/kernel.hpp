#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "fucik/domain.hpp"

namespace fucik {

using Vector = Eigen::VectorXd;

/// The BBM normalisation constant p*Gamma((n+p)/2) / (2 pi^{(n-1)/2} Gamma((p+1)/2)).
double lambda_np(int n, double p);

struct KernelParams {
    int n = 1;
    double alpha = 0.5;
    double p = 2.0;
    double lambda = 1.0; // lambda_np(n, p)
    double truncation_radius = 0.0;

    static KernelParams from(const DomainSpec& spec);
    /// Kernel exponent: |x-y|^{-(n + p*alpha)}.
    double kernel_power() const { return -(n + p * alpha); }
};

/// One quadrature point pair for the Q-integral. Function values are
/// u(x) = sx0*u[x0] + sx1*u[x1] + sx2*u[x2] (x2 < 0 in 1D).
struct QuadPair {
    int32_t x0, x1, x2, y0, y1, y2;
    double sx0, sx1, sx2, sy0, sy1, sy2;
    double w;            // includes kernel value and the ordered-pair factor
    bool omega_only;     // both points in Omega (for the BBM restriction)
};

enum class SignPart { None, Plus, Minus };
enum class PairSet { Full, OmegaOnly };

/// Streams the quadrature pairs of the Q-domain (all element pairs with at
/// least one element in Omega) in a deterministic order.
void generate_pairs(const Mesh& mesh, const KernelParams& params,
                    const std::function<void(const QuadPair&)>& sink);

struct MeshMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Discretized nonlocal energy: realizes the seminorm [u]^p_{alpha,p},
/// the form H_{alpha,p}(u,v) and its weak-form gradient on nodal vectors.
/// For p = 2 a dense symmetric matrix A with v^T A u = H(u,v) is kept.
class NonlocalEnergy {
public:
    static NonlocalEnergy assemble(const Mesh& mesh, const KernelParams& params,
                                   bool store_pairs = true);

    const Mesh& mesh() const { return *mesh_; }
    const KernelParams& params() const { return params_; }
    int size() const { return n_; }
    bool has_pairs() const { return !pairs_.empty(); }
    bool has_matrix() const { return matrix_.size() > 0; }

    /// [T(u)]^p_{alpha,p} where T is the identity or the pointwise
    /// positive/negative part of the piecewise-linear interpolant.
    double seminorm_p(const Vector& u, SignPart part = SignPart::None,
                      PairSet set = PairSet::Full) const;

    /// [T(u)]^p for an arbitrary pointwise map T applied at the quadrature
    /// points (used for composite functions of u^+ / u^- along paths).
    double seminorm_mapped(const Vector& u, const std::function<double(double)>& T) const;

    /// H_{alpha,p}(u, v) over Q.
    double gateaux(const Vector& u, const Vector& v) const;

    /// g[i] += coeff * H_{alpha,p}(u, hat_i) for every node i.
    void add_h_gradient(const Vector& u, double coeff, Vector& g) const;

    /// Symmetric rank-structure of the second derivative of the seminorm:
    /// out += coeff * sum_q w (p-1)|du|^{p-2} (dphi)(dphi)^T. (p=2: out += coeff*A.)
    void add_h_hessian(const Vector& u, double coeff, Eigen::MatrixXd& out) const;

    const Eigen::MatrixXd& matrix() const;       // p = 2 only, full Q
    const Eigen::MatrixXd& matrix_omega() const; // p = 2 only, Omega x Omega part
    const Eigen::SparseMatrix<double>& mass_omega() const { return mass_omega_; }
    const Eigen::SparseMatrix<double>& mass_collar() const { return mass_collar_; }

    /// Plain-text coordinate triplets "row col value" of the p=2 matrix.
    void export_matrix(std::ostream& os) const;

    void check(const Vector& u) const;

private:
    const Mesh* mesh_ = nullptr;
    KernelParams params_;
    int n_ = 0;
    std::vector<QuadPair> pairs_;
    Eigen::MatrixXd matrix_, matrix_omega_;
    Eigen::SparseMatrix<double> mass_omega_, mass_collar_;

    template <typename F>
    void for_each_pair(F&& f) const; // stored pairs or regeneration
};

/// Piecewise-linear mass matrix over a set of elements (exact, p=2 semantics).
Eigen::SparseMatrix<double> mass_matrix(const Mesh& mesh, const std::vector<int>& elems);
Eigen::SparseMatrix<double> mass_matrix_region(const Mesh& mesh, bool collar_only);

/// Local gradient energy \int_Omega |grad u|^p of the interpolant.
double local_gradient_energy(const Mesh& mesh, const Vector& u, double p);

/// Lambda_{n,p}(1-alpha) * (Omega x Omega part of [u]^p) for each alpha.
std::vector<double> bbm_sequence(const Mesh& mesh, const Vector& u, double p,
                                 const std::vector<double>& alphas);

// 2D assembly backend (kernel2d.cpp); dispatched from generate_pairs.
void generate_pairs_2d(const Mesh& mesh, const KernelParams& params,
                       const std::function<void(const QuadPair&)>& sink);

} // namespace fucik
