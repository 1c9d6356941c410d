#include "fucik/eigenpair.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "fucik/critical.hpp"

namespace fucik {

namespace {

std::vector<int> omega_collar_elems(const Mesh& mesh) { return mesh.collar_elements(); }

Vector project_subset(const Mesh& mesh, const Vector& u, const std::vector<int>& elems) {
    const double p = mesh.spec.p;
    const double mass = subset_integral_pow(mesh, u, p, elems);
    if (!(mass > 0.0)) throw NotProjectable("not projectable: u vanishes on the subset");
    return std::pow(mesh.spec.epsilon / mass, 1.0 / p) * u;
}

// Clamp the sign-normalized ground state: tiny negative overshoots from the
// solver would break the exact identity J_s(phi1) = lambda1 - s.
Vector positivize(const Mesh& mesh, Vector u, const std::vector<int>& elems) {
    if (u.sum() < 0) u = -u;
    for (int i = 0; i < u.size(); ++i)
        if (u[i] < 0 && u[i] > -1e-8 * u.cwiseAbs().maxCoeff()) u[i] = 0.0;
    return project_subset(mesh, u, elems);
}

double subset_residual(const NonlocalEnergy& E, const Vector& u, double lambda,
                       const std::vector<int>& elems) {
    const Mesh& mesh = E.mesh();
    const KernelParams& k = E.params();
    Vector r = Vector::Zero(mesh.node_count());
    E.add_h_gradient(u, k.lambda * (1.0 - k.alpha), r);
    add_region_load(mesh, u, k.p, 1.0, false, SignPart::None, r);
    add_subset_load(mesh, u, k.p, -lambda / mesh.spec.epsilon, elems, SignPart::None, r);
    return r.norm();
}

// Dense pencil (p = 2): M_sub u = mu (Lambda(1-a)A + M_Omega) u; the finite
// eigenvalues of the problem are eps/mu for mu > 0, so lambda_k comes from
// the k-th largest mu. Avoids the spurious infinite part of the singular-M
// pencil entirely.
struct PencilResult {
    std::vector<double> lambdas; // ascending lambda_1, lambda_2, ...
    std::vector<Vector> vecs;
};

PencilResult solve_pencil(const NonlocalEnergy& E, const std::vector<int>& elems,
                          int count) {
    const Mesh& mesh = E.mesh();
    const KernelParams& k = E.params();
    const int n = mesh.node_count();
    Eigen::MatrixXd K = k.lambda * (1.0 - k.alpha) * E.matrix();
    K += Eigen::MatrixXd(mass_matrix_region(mesh, false));
    Eigen::MatrixXd M = Eigen::MatrixXd(mass_matrix(mesh, elems));
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(M, K);
    if (es.info() != Eigen::Success)
        throw SolverFailure("dense pencil solve failed", Vector::Zero(n), 1.0);
    PencilResult out;
    for (int j = 0; j < count; ++j) {
        const double mu = es.eigenvalues()[n - 1 - j];
        if (!(mu > 0))
            throw SolverFailure("pencil has no further finite eigenvalues",
                                Vector::Zero(n), 1.0);
        out.lambdas.push_back(mesh.spec.epsilon / mu);
        out.vecs.push_back(project_subset(mesh, es.eigenvectors().col(n - 1 - j), elems));
    }
    return out;
}

double j0(const NonlocalEnergy& E, const Vector& u) { return J_s(u, 0.0, E); }

// Projected gradient descent on the subset sphere: Barzilai-Borwein steps
// with a nonmonotone Armijo safeguard.
Vector descend(const NonlocalEnergy& E, const std::vector<int>& elems, double tol) {
    const Mesh& mesh = E.mesh();
    const double p = E.params().p;
    Vector u = project_subset(mesh, Vector::Ones(mesh.node_count()), elems);
    double J = j0(E, u);

    auto proj_grad = [&](const Vector& uu) {
        Vector g = grad_J_s(uu, 0.0, E);
        Vector nrm = Vector::Zero(mesh.node_count());
        add_subset_load(mesh, uu, p, p / mesh.spec.epsilon, elems, SignPart::None, nrm);
        const double nn = nrm.squaredNorm();
        return Vector(g - (nn > 0 ? g.dot(nrm) / nn : 0.0) * nrm);
    };

    Vector d = proj_grad(u);
    std::vector<double> recent{J};
    double step = 1.0 / (1.0 + d.norm());
    const int max_iter = 20000;
    for (int it = 0; it < max_iter; ++it) {
        const double dn2 = d.squaredNorm();
        if (std::sqrt(dn2) < tol * (1.0 + std::abs(J))) return u;
        const double Jref = *std::max_element(recent.begin(), recent.end());
        double tau = std::clamp(step, 1e-12, 1e4);
        bool accepted = false;
        Vector unew, dnew;
        double Jnew = 0.0;
        for (int bt = 0; bt < 60; ++bt) {
            unew = project_subset(mesh, u - tau * d, elems);
            Jnew = j0(E, unew);
            if (Jnew <= Jref - 1e-4 * tau * dn2) {
                accepted = true;
                break;
            }
            tau *= 0.5;
        }
        if (!accepted) return u; // stalled at stationarity scale
        dnew = proj_grad(unew);
        const Vector du = unew - u;
        const Vector dg = dnew - d;
        const double dgdg = dg.squaredNorm();
        step = dgdg > 0 ? std::abs(du.dot(dg)) / dgdg : 2.0 * tau;
        u = std::move(unew);
        d = std::move(dnew);
        J = Jnew;
        recent.push_back(J);
        if (recent.size() > 10) recent.erase(recent.begin());
    }
    return u;
}

EigenResult first_eigen(const NonlocalEnergy& E, const std::vector<int>& elems,
                        bool full_collar) {
    const Mesh& mesh = E.mesh();
    if (elems.empty()) throw ConfigError("constraint region has no elements");
    EigenResult res;
    Vector u;
    double gap = 0.0;
    if (E.params().p == 2.0) {
        PencilResult pr = solve_pencil(E, elems, 2);
        u = pr.vecs[0];
        gap = pr.lambdas[1] - pr.lambdas[0];
    } else {
        u = descend(E, elems, full_collar ? 1e-6 : 1e-8);
        if (full_collar) {
            // sharpen to machine stationarity on the full-collar constraint
            CriticalPoint cp = newton_polish(E, u, 0.0);
            if (cp.converged && cp.level <= j0(E, u) + 1e-8) u = cp.u;
        }
    }
    u = positivize(mesh, u, elems);
    res.function = u;
    res.value = j0(E, u); // exact on the discrete problem; matches the pencil
    res.gap = gap;
    res.residual = full_collar ? fucik_residual(u, res.value, res.value, E)
                               : subset_residual(E, u, res.value, elems);
    return res;
}

} // namespace

EigenResult lambda1(const NonlocalEnergy& E) {
    return first_eigen(E, omega_collar_elems(E.mesh()), true);
}

EigenResult lambda1_descent(const NonlocalEnergy& E) {
    const auto elems = omega_collar_elems(E.mesh());
    Vector u = descend(E, elems, 1e-8);
    auto finish = [&](Vector w) {
        w = positivize(E.mesh(), w, elems);
        EigenResult res;
        res.function = std::move(w);
        res.value = j0(E, res.function);
        res.residual = fucik_residual(res.function, res.value, res.value, E);
        return res;
    };
    EigenResult best = finish(u);
    // accept the polished point whenever it is at least as stationary and no
    // higher: the Newton iteration may bottom out above its own tolerance
    CriticalPoint cp = newton_polish(E, u, 0.0);
    if (cp.level <= best.value + 1e-8) {
        EigenResult polished = finish(cp.u);
        if (polished.residual < best.residual) best = std::move(polished);
    }
    return best;
}

EigenResult lambda1_subset(const NonlocalEnergy& E, const std::vector<int>& elems) {
    double measure = 0.0;
    for (int ei : elems) {
        if (E.mesh().elements[ei].region != Region::Collar)
            throw ConfigError("subset must consist of collar elements");
        measure += E.mesh().elements[ei].measure;
    }
    if (!(measure > 0.0)) throw ConfigError("subset has zero measure");
    const bool full = static_cast<int>(elems.size()) ==
                      static_cast<int>(E.mesh().collar_elements().size());
    return first_eigen(E, elems, full);
}

EigenResult lambda2_dense(const NonlocalEnergy& E) {
    if (E.params().p != 2.0) throw ConfigError("dense second eigenvalue requires p = 2");
    const auto elems = omega_collar_elems(E.mesh());
    PencilResult pr = solve_pencil(E, elems, 3);
    EigenResult res;
    res.function = pr.vecs[1];
    res.value = pr.lambdas[1];
    res.gap = std::min(pr.lambdas[1] - pr.lambdas[0], pr.lambdas[2] - pr.lambdas[1]);
    res.residual = fucik_residual(res.function, res.value, res.value, E);
    return res;
}

} // namespace fucik
