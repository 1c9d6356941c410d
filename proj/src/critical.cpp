#include "fucik/critical.hpp"

#include <Eigen/LU>
#include <cmath>

#include "fucik/quadrature.hpp"

namespace fucik {

namespace {

double hess_weight(double v, double p, SignPart part) {
    switch (part) {
        case SignPart::Plus: return v > 0 ? std::pow(v, p - 2.0) : 0.0;
        case SignPart::Minus: return v < 0 ? std::pow(-v, p - 2.0) : 0.0;
        default: return std::pow(std::abs(v), p - 2.0);
    }
}

} // namespace

void add_weighted_mass(const Mesh& mesh, const Vector& u, double p, double coeff,
                       bool collar_only, SignPart part, Eigen::MatrixXd& out) {
    const auto& g = gauss_rule(10);
    static const double a1 = 0.816847572980459, b1 = 0.091576213509771,
                        w1 = 0.109951743655322;
    static const double a2 = 0.108103018168070, b2 = 0.445948490915965,
                        w2 = 0.223381589678011;
    static const double tq[6][4] = {{a1, b1, b1, w1}, {b1, a1, b1, w1}, {b1, b1, a1, w1},
                                    {a2, b2, b2, w2}, {b2, a2, b2, w2}, {b2, b2, a2, w2}};
    for (const auto& e : mesh.elements) {
        if (collar_only ? e.region != Region::Collar : e.region == Region::Exterior)
            continue;
        if (mesh.dim == 1) {
            const int i0 = e.v[0], i1 = e.v[1];
            for (std::size_t q = 0; q < g.x.size(); ++q) {
                const double t = g.x[q];
                const double v = (1 - t) * u[i0] + t * u[i1];
                const double f = coeff * e.measure * g.w[q] * hess_weight(v, p, part);
                out(i0, i0) += f * (1 - t) * (1 - t);
                out(i0, i1) += f * (1 - t) * t;
                out(i1, i0) += f * t * (1 - t);
                out(i1, i1) += f * t * t;
            }
        } else {
            for (const auto& q : tq) {
                const double v = q[0] * u[e.v[0]] + q[1] * u[e.v[1]] + q[2] * u[e.v[2]];
                const double f = coeff * e.measure * q[3] * hess_weight(v, p, part);
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b)
                        out(e.v[a], e.v[b]) += f * q[a] * q[b];
            }
        }
    }
}

CriticalPoint newton_polish(const NonlocalEnergy& E, const Vector& u0, double s,
                            int max_iter, double tol) {
    const Mesh& mesh = E.mesh();
    const KernelParams& k = E.params();
    const double p = k.p;
    const int n = mesh.node_count();

    Vector u = project_to_S(mesh, u0).u;
    double t = J_s(u, s, E);

    auto residual = [&](const Vector& uu, double tt, Vector& F, double& c) {
        F = grad_J_s(uu, s, E) - tt * constraint_gradient(mesh, uu);
        c = constraint_value(mesh, uu) - 1.0;
    };

    Vector F;
    double c;
    residual(u, t, F, c);
    double merit = F.squaredNorm() + c * c;

    CriticalPoint out;
    int restarts = 0;
    int nonmono = 0;
    for (int it = 1; it <= max_iter; ++it) {
        if (F.norm() <= tol * (1.0 + std::abs(t)) && std::abs(c) <= tol) {
            out.converged = true;
            out.iterations = it - 1;
            break;
        }
        // KKT Jacobian: [H_J - t H_I, -I'(u); I'(u)^T, 0]
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
        E.add_h_hessian(u, p * k.lambda * (1.0 - k.alpha), H);
        add_weighted_mass(mesh, u, p, p * (p - 1.0), false, SignPart::None, H);
        if (s != 0.0)
            add_weighted_mass(mesh, u, p, -s * p * (p - 1.0) / mesh.spec.epsilon, true,
                              SignPart::Plus, H);
        add_weighted_mass(mesh, u, p, -t * p * (p - 1.0) / mesh.spec.epsilon, true,
                          SignPart::None, H);
        const Vector nrm = constraint_gradient(mesh, u);

        Eigen::MatrixXd KKT = Eigen::MatrixXd::Zero(n + 1, n + 1);
        KKT.topLeftCorner(n, n) = H;
        KKT.topRightCorner(n, 1) = -nrm;
        KKT.bottomLeftCorner(1, n) = nrm.transpose();
        Eigen::VectorXd rhs(n + 1);
        rhs.head(n) = -F;
        rhs[n] = -c;
        const auto lu = KKT.partialPivLu();
        Eigen::VectorXd step = lu.solve(rhs);
        // one round of iterative refinement: the dense fractional stiffness
        // block is ill-conditioned enough to cost several digits otherwise
        step += lu.solve(rhs - KKT * step);

        double damp = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 25; ++bt) {
            Vector utry = u + damp * step.head(n);
            const double ttry = t + damp * step[n];
            Vector Ftry;
            double ctry;
            residual(utry, ttry, Ftry, ctry);
            const double mtry = Ftry.squaredNorm() + ctry * ctry;
            const bool strict = mtry < merit * (1.0 - 1e-4 * damp) || mtry < tol * tol;
            // non-monotone allowance: near the residual floor a full step can
            // raise the merit marginally while the next one collapses it, so
            // damping such a step into oblivion only makes the iteration crawl
            const bool lenient = bt == 0 && nonmono < 3 && mtry <= 10.0 * merit;
            if (strict || lenient) {
                u = std::move(utry);
                t = ttry;
                F = std::move(Ftry);
                c = ctry;
                merit = mtry;
                nonmono = strict ? 0 : nonmono + 1;
                accepted = true;
                break;
            }
            damp *= 0.5;
        }
        out.iterations = it;
        if (!accepted) {
            // the line search can bottom out with a drifted multiplier while
            // the iterate itself is still improvable; re-seeding t from the
            // level restores a productive Newton direction
            if (restarts < 3 && F.norm() > tol * (1.0 + std::abs(t))) {
                ++restarts;
                t = J_s(u, s, E);
                residual(u, t, F, c);
                merit = F.squaredNorm() + c * c;
                continue;
            }
            break; // stalled; report best so far
        }
    }
    if (!out.converged)
        out.converged = F.norm() <= tol * (1.0 + std::abs(t)) && std::abs(c) <= tol;
    out.u = u;
    out.multiplier = t;
    out.level = J_s(u, s, E);
    out.res_norm = F.norm();
    return out;
}

} // namespace fucik
