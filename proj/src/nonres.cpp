#include "fucik/nonres.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "fucik/critical.hpp"
#include "fucik/eigenpair.hpp"
#include "fucik/quadrature.hpp"

namespace fucik {

double Nonlinearity::f(double s) const {
    switch (kind) {
        case Kind::Linear: return c * s;
        case Kind::LinearArctan: return c * s + amp * std::atan(s);
        case Kind::PiecewiseLinear: return s > 0 ? a * s : b * s;
    }
    return 0.0;
}

double Nonlinearity::F(double s) const {
    switch (kind) {
        case Kind::Linear: return 0.5 * c * s * s;
        case Kind::LinearArctan:
            return 0.5 * c * s * s +
                   amp * (s * std::atan(s) - 0.5 * std::log1p(s * s));
        case Kind::PiecewiseLinear:
            return 0.5 * (s > 0 ? a : b) * s * s;
    }
    return 0.0;
}

double Nonlinearity::fprime(double s) const {
    switch (kind) {
        case Kind::Linear: return c;
        case Kind::LinearArctan: return c + amp / (1.0 + s * s);
        case Kind::PiecewiseLinear: return s > 0 ? a : b;
    }
    return 0.0;
}

namespace {

void require_p2(const NonlocalEnergy& E) {
    if (E.params().p != 2.0)
        throw ConfigError("the weighted / non-resonance layer is p = 2 only");
}

// Standard 6-point triangle rule (degree 4), barycentric + weight.
constexpr double kA1 = 0.816847572980459, kB1 = 0.091576213509771,
                 kW1 = 0.109951743655322;
constexpr double kA2 = 0.108103018168070, kB2 = 0.445948490915965,
                 kW2 = 0.223381589678011;
constexpr double kTri6[6][4] = {{kA1, kB1, kB1, kW1}, {kB1, kA1, kB1, kW1},
                                {kB1, kB1, kA1, kW1}, {kA2, kB2, kB2, kW2},
                                {kB2, kA2, kB2, kW2}, {kB2, kB2, kA2, kW2}};

// Integrates G(u(x), m(x)) over the collar; m may be empty (passed as 0).
template <typename G>
double collar_integral(const Mesh& mesh, const Vector& u, const Vector* m, G g) {
    const auto& gr = gauss_rule(10);
    double total = 0.0;
    for (const auto& e : mesh.elements) {
        if (e.region != Region::Collar) continue;
        if (mesh.dim == 1) {
            const int i0 = e.v[0], i1 = e.v[1];
            for (std::size_t q = 0; q < gr.x.size(); ++q) {
                const double t = gr.x[q];
                const double uu = (1 - t) * u[i0] + t * u[i1];
                const double mm = m ? (1 - t) * (*m)[i0] + t * (*m)[i1] : 0.0;
                total += e.measure * gr.w[q] * g(uu, mm);
            }
        } else {
            for (const auto& q : kTri6) {
                const double uu = q[0] * u[e.v[0]] + q[1] * u[e.v[1]] + q[2] * u[e.v[2]];
                const double mm =
                    m ? q[0] * (*m)[e.v[0]] + q[1] * (*m)[e.v[1]] + q[2] * (*m)[e.v[2]]
                      : 0.0;
                total += e.measure * q[3] * g(uu, mm);
            }
        }
    }
    return total;
}

// out[i] += coeff * int_collar g(u(x), m(x)) hat_i(x) dx.
template <typename G>
void add_collar_load(const Mesh& mesh, const Vector& u, const Vector* m, double coeff,
                     G g, Vector& out) {
    const auto& gr = gauss_rule(10);
    for (const auto& e : mesh.elements) {
        if (e.region != Region::Collar) continue;
        if (mesh.dim == 1) {
            const int i0 = e.v[0], i1 = e.v[1];
            for (std::size_t q = 0; q < gr.x.size(); ++q) {
                const double t = gr.x[q];
                const double uu = (1 - t) * u[i0] + t * u[i1];
                const double mm = m ? (1 - t) * (*m)[i0] + t * (*m)[i1] : 0.0;
                const double f = coeff * e.measure * gr.w[q] * g(uu, mm);
                out[i0] += f * (1 - t);
                out[i1] += f * t;
            }
        } else {
            for (const auto& q : kTri6) {
                const double uu = q[0] * u[e.v[0]] + q[1] * u[e.v[1]] + q[2] * u[e.v[2]];
                const double mm =
                    m ? q[0] * (*m)[e.v[0]] + q[1] * (*m)[e.v[1]] + q[2] * (*m)[e.v[2]]
                      : 0.0;
                const double f = coeff * e.measure * q[3] * g(uu, mm);
                for (int a = 0; a < 3; ++a) out[e.v[a]] += f * q[a];
            }
        }
    }
}

// out(i,j) += coeff * int_collar g(u(x), m(x)) hat_i hat_j dx.
template <typename G>
void add_collar_mass(const Mesh& mesh, const Vector& u, const Vector* m, double coeff,
                     G g, Eigen::MatrixXd& out) {
    const auto& gr = gauss_rule(10);
    for (const auto& e : mesh.elements) {
        if (e.region != Region::Collar) continue;
        if (mesh.dim == 1) {
            const int i0 = e.v[0], i1 = e.v[1];
            for (std::size_t q = 0; q < gr.x.size(); ++q) {
                const double t = gr.x[q];
                const double uu = (1 - t) * u[i0] + t * u[i1];
                const double mm = m ? (1 - t) * (*m)[i0] + t * (*m)[i1] : 0.0;
                const double f = coeff * e.measure * gr.w[q] * g(uu, mm);
                out(i0, i0) += f * (1 - t) * (1 - t);
                out(i0, i1) += f * (1 - t) * t;
                out(i1, i0) += f * t * (1 - t);
                out(i1, i1) += f * t * t;
            }
        } else {
            for (const auto& q : kTri6) {
                const double uu = q[0] * u[e.v[0]] + q[1] * u[e.v[1]] + q[2] * u[e.v[2]];
                const double mm =
                    m ? q[0] * (*m)[e.v[0]] + q[1] * (*m)[e.v[1]] + q[2] * (*m)[e.v[2]]
                      : 0.0;
                const double f = coeff * e.measure * q[3] * g(uu, mm);
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b) out(e.v[a], e.v[b]) += f * q[a] * q[b];
            }
        }
    }
}

// Quadratic part Lambda(1-a)A + M_Omega shared by all p = 2 operators here.
Eigen::MatrixXd quadratic_matrix(const NonlocalEnergy& E) {
    const KernelParams& k = E.params();
    Eigen::MatrixXd K = k.lambda * (1.0 - k.alpha) * E.matrix();
    K += Eigen::MatrixXd(mass_matrix_region(E.mesh(), false));
    return K;
}

// Residual of the weighted problem: K u - (1/eps)(m u+ - bw u-) on the collar.
Vector weighted_residual(const Eigen::MatrixXd& K, const Vector& m, const Vector& bw,
                         const NonlocalEnergy& E, const Vector& u) {
    Vector r = K * u;
    const double eps = E.mesh().spec.epsilon;
    add_collar_load(E.mesh(), u, &m, -1.0 / eps,
                    [](double uu, double mm) { return uu > 0 ? mm * uu : 0.0; }, r);
    add_collar_load(E.mesh(), u, &bw, 1.0 / eps,
                    [](double uu, double mm) { return uu < 0 ? -mm * uu : 0.0; }, r);
    return r;
}

} // namespace

double weighted_lambda1(const Vector& m, const NonlocalEnergy& E) {
    require_p2(E);
    const Mesh& mesh = E.mesh();
    if (m.size() != mesh.node_count()) throw MeshMismatch("weight size mismatch");
    for (const auto& e : mesh.elements)
        if (e.region == Region::Collar)
            for (int a = 0; a < mesh.dim + 1; ++a)
                if (!(m[e.v[a]] > 0.0))
                    throw ConfigError("weight must be positive on the collar");
    const int n = mesh.node_count();
    Eigen::MatrixXd K = quadratic_matrix(E);
    Eigen::MatrixXd Mw = Eigen::MatrixXd::Zero(n, n);
    add_collar_mass(mesh, m, &m, 1.0, [](double, double mm) { return mm; }, Mw);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Mw, K);
    if (es.info() != Eigen::Success)
        throw SolverFailure("weighted pencil solve failed", Vector::Zero(n), 1.0);
    const double mu = es.eigenvalues()[n - 1];
    if (!(mu > 0)) throw SolverFailure("weighted pencil degenerate", Vector::Zero(n), 1.0);
    return mesh.spec.epsilon / mu;
}

double psi(const Vector& u, const Nonlinearity& f, const NonlocalEnergy& E) {
    require_p2(E);
    const KernelParams& k = E.params();
    const double quad = 0.5 * k.lambda * (1.0 - k.alpha) * E.seminorm_p(u) +
                        0.5 * region_integral_pow(E.mesh(), u, 2.0, false, SignPart::None);
    const double pot = collar_integral(E.mesh(), u, nullptr,
                                       [&](double uu, double) { return f.F(uu); });
    return quad - pot / E.mesh().spec.epsilon;
}

Vector grad_psi(const Vector& u, const Nonlinearity& f, const NonlocalEnergy& E) {
    require_p2(E);
    const KernelParams& k = E.params();
    Vector g = Vector::Zero(E.size());
    E.add_h_gradient(u, k.lambda * (1.0 - k.alpha), g);
    add_region_load(E.mesh(), u, 2.0, 1.0, false, SignPart::None, g);
    add_collar_load(E.mesh(), u, nullptr, -1.0 / E.mesh().spec.epsilon,
                    [&](double uu, double) { return f.f(uu); }, g);
    return g;
}

NonresSolution solve_041(const Nonlinearity& f, const NonlocalEnergy& E,
                         int path_samples, double tol) {
    require_p2(E);
    const Mesh& mesh = E.mesh();
    const int n = mesh.node_count();
    const int m = std::max(17, path_samples);
    const Vector phi1 = lambda1(E).function;

    auto straight = [&](double R) {
        std::vector<Vector> path(m);
        for (int i = 0; i < m; ++i)
            path[i] = (-1.0 + 2.0 * i / (m - 1)) * R * phi1;
        return path;
    };
    auto level = [&](const Vector& u) { return psi(u, f, E); };

    // Endpoint scale: double R until both endpoint values sit below the
    // interior maximum of the straight path (mountain geometry).
    double R = 1.0;
    std::vector<Vector> path;
    for (int grow = 0; grow < 40; ++grow) {
        path = straight(R);
        double interior = -1e300, ends = std::max(level(path.front()), level(path.back()));
        for (int i = 1; i + 1 < m; ++i) interior = std::max(interior, level(path[i]));
        if (ends < interior - 1e-12 * (1.0 + std::abs(interior))) break;
        R *= 2.0;
    }

    std::vector<double> lv(m);
    for (int i = 0; i < m; ++i) lv[i] = level(path[i]);

    auto newton = [&](Vector u) {
        NonresSolution sol;
        Vector g = grad_psi(u, f, E);
        for (int it = 0; it < 60; ++it) {
            const double scale = 1.0 + std::abs(level(u));
            if (g.norm() <= tol * scale) {
                sol.converged = true;
                break;
            }
            Eigen::MatrixXd H = quadratic_matrix(E);
            add_collar_mass(mesh, u, nullptr, -1.0 / mesh.spec.epsilon,
                            [&](double uu, double) { return f.fprime(uu); }, H);
            const Vector d = H.partialPivLu().solve(Vector(-g));
            double damp = 1.0;
            const double g0 = g.norm();
            for (int bt = 0; bt < 25; ++bt) {
                Vector utry = u + damp * d;
                Vector gtry = grad_psi(utry, f, E);
                if (gtry.norm() < g0) {
                    u = std::move(utry);
                    g = std::move(gtry);
                    break;
                }
                damp *= 0.5;
                if (bt == 24) it = 60; // stalled
            }
            sol.iterations = it + 1;
        }
        sol.u = std::move(u);
        sol.psi_value = level(sol.u);
        sol.residual = grad_psi(sol.u, f, E).norm();
        sol.endpoint_scale = R;
        return sol;
    };

    // Deform: move the top-k interior samples down the gradient of Psi,
    // then try a Newton sharpening of the argmax once progress stalls.
    int stall = 0;
    double prev_max = *std::max_element(lv.begin(), lv.end());
    for (int sweep = 0; sweep < 600; ++sweep) {
        std::vector<int> idx(m - 2);
        std::iota(idx.begin(), idx.end(), 1);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](int a, int b) { return lv[a] > lv[b]; });
        for (int r = 0; r < std::min<int>(3, idx.size()); ++r) {
            const int i = idx[r];
            const Vector g = grad_psi(path[i], f, E);
            const double gn2 = g.squaredNorm();
            if (gn2 == 0.0) continue;
            double step = 1.0 / (1.0 + std::sqrt(gn2));
            for (int bt = 0; bt < 40; ++bt) {
                Vector utry = path[i] - step * g;
                const double ltry = level(utry);
                if (ltry <= lv[i] - 1e-4 * step * gn2) {
                    path[i] = std::move(utry);
                    lv[i] = ltry;
                    break;
                }
                step *= 0.5;
            }
        }
        const int am = static_cast<int>(
            std::max_element(lv.begin() + 1, lv.end() - 1) - lv.begin());
        const double cur_max = std::max({lv[am], lv.front(), lv.back()});
        const double scale = 1.0 + std::abs(cur_max);
        stall = (prev_max - cur_max < 1e-7 * scale) ? stall + 1 : 0;
        prev_max = cur_max;
        if (stall >= 3) {
            NonresSolution sol = newton(path[am]);
            if (sol.converged && sol.psi_value <= cur_max + 0.05 * scale) return sol;
            stall = 0; // polish rejected; keep deforming
        }
    }
    NonresSolution sol = newton(path[static_cast<int>(
        std::max_element(lv.begin() + 1, lv.end() - 1) - lv.begin())]);
    if (!sol.converged)
        throw SolverFailure("non-resonance mountain pass did not converge", sol.u,
                            sol.residual);
    return sol;
}

TrivialSearchReport only_trivial_check(const Vector& m, const Vector& bw,
                                       const NonlocalEnergy& E, int starts,
                                       unsigned seed, const std::vector<Vector>& extra) {
    require_p2(E);
    const Mesh& mesh = E.mesh();
    const int n = mesh.node_count();
    const Eigen::MatrixXd K = quadratic_matrix(E);
    const double eps = mesh.spec.epsilon;

    auto refine = [&](Vector u) {
        u = project_to_S(mesh, u).u;
        Vector r = weighted_residual(K, m, bw, E, u);
        double best = r.norm();
        Vector best_u = u;
        for (int it = 0; it < 60; ++it) {
            Eigen::MatrixXd J = K;
            add_collar_mass(mesh, u, &m, -1.0 / eps,
                            [](double uu, double mm) { return uu > 0 ? mm : 0.0; }, J);
            add_collar_mass(mesh, u, &bw, -1.0 / eps,
                            [](double uu, double mm) { return uu < 0 ? mm : 0.0; }, J);
            const Vector d = J.partialPivLu().solve(Vector(-r));
            double damp = 1.0;
            bool accepted = false;
            for (int bt = 0; bt < 20; ++bt) {
                Vector utry;
                try {
                    utry = project_to_S(mesh, Vector(u + damp * d)).u;
                } catch (const NotProjectable&) {
                    damp *= 0.5;
                    continue;
                }
                const Vector rtry = weighted_residual(K, m, bw, E, utry);
                if (rtry.norm() < r.norm() * (1.0 - 1e-6)) {
                    u = std::move(utry);
                    r = rtry;
                    accepted = true;
                    break;
                }
                damp *= 0.5;
            }
            if (r.norm() < best) {
                best = r.norm();
                best_u = u;
            }
            if (!accepted || best < 1e-12) break;
        }
        return std::make_pair(best, best_u);
    };

    TrivialSearchReport rep;
    rep.min_residual = 1e300;
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Vector> trials = extra;
    for (int k = 0; k < starts; ++k) {
        Vector u(n);
        for (int i = 0; i < n; ++i) u[i] = gauss(rng);
        trials.push_back(std::move(u));
    }
    for (const Vector& u0 : trials) {
        auto [res, u] = refine(u0);
        ++rep.starts;
        if (res < rep.min_residual) {
            rep.min_residual = res;
            rep.argmin = std::move(u);
        }
    }
    return rep;
}

} // namespace fucik
