#include "fucik/kernel.hpp"

#include <cmath>
#include <ostream>

#include "fucik/quadrature.hpp"

namespace fucik {

double lambda_np(int n, double p) {
    if (n < 1 || p < 2.0) throw ConfigError("lambda_np requires n >= 1, p >= 2");
    return p * std::exp(std::lgamma(0.5 * (n + p)) - std::lgamma(0.5 * (p + 1.0))) /
           (2.0 * std::pow(M_PI, 0.5 * (n - 1)));
}

KernelParams KernelParams::from(const DomainSpec& spec) {
    KernelParams k;
    k.n = spec.dim;
    k.alpha = spec.alpha;
    k.p = spec.p;
    k.lambda = lambda_np(spec.dim, spec.p);
    k.truncation_radius = spec.radius();
    return k;
}

namespace {

// ---- 1D pair generation --------------------------------------------------
//
// Element pairs are classified as identical, touching (shared node) or
// disjoint. Identical pairs are exact for the interpolant; touching pairs
// use a cone transform whose radial direction is integrated exactly by
// homogeneity; disjoint pairs use tensor Gauss with distance-scaled order.

struct Elem1 {
    int n0, n1;
    double a, b, h;
    bool in_omega;
};

void emit(const std::function<void(const QuadPair&)>& sink, int x0, int x1,
          double sx1, int y0, int y1, double sy1, double w, bool omega_only) {
    QuadPair q;
    q.x0 = x0; q.x1 = x1; q.x2 = -1;
    q.y0 = y0; q.y1 = y1; q.y2 = -1;
    q.sx0 = 1.0 - sx1; q.sx1 = sx1; q.sx2 = 0.0;
    q.sy0 = 1.0 - sy1; q.sy1 = sy1; q.sy2 = 0.0;
    q.w = w;
    q.omega_only = omega_only;
    sink(q);
}

int disjoint_order(double gap, double hmax) {
    const double r = gap / hmax;
    if (r <= 1.5) return 7;
    if (r <= 3.0) return 5;
    if (r <= 8.0) return 4;
    return 3;
}

void pairs_1d(const Mesh& mesh, const KernelParams& params,
              const std::function<void(const QuadPair&)>& sink) {
    const double gamma = params.kernel_power(); // = -(1 + p*alpha)
    const double p = params.p;
    const int ne = mesh.element_count();

    std::vector<Elem1> el(ne);
    for (int i = 0; i < ne; ++i) {
        const auto& e = mesh.elements[i];
        el[i] = {e.v[0], e.v[1], mesh.nodes[e.v[0]][0], mesh.nodes[e.v[1]][0],
                 e.measure, e.region != Region::Exterior};
    }

    const double rad_exact = 1.0 / (p + gamma + 2.0); // \int_0^1 rho^{p+gamma+1} drho

    for (int i = 0; i < ne; ++i) {
        // identical pair: one exact point at the element endpoints
        if (el[i].in_omega) {
            const double h = el[i].h;
            const double C = 2.0 * std::pow(h, p + gamma + 2.0) /
                             ((p + gamma + 1.0) * (p + gamma + 2.0));
            emit(sink, el[i].n0, el[i].n1, 0.0, el[i].n0, el[i].n1, 1.0,
                 C / std::pow(h, p), true);
        }
        for (int j = i + 1; j < ne; ++j) {
            if (!el[i].in_omega && !el[j].in_omega) continue;
            const bool omega_only = el[i].in_omega && el[j].in_omega;
            const double gap = el[j].a - el[i].b;
            if (gap <= 0.0) {
                // touching at node b = el[i].b == el[j].a
                const double H1 = el[i].h, H2 = el[j].h;
                const auto& g = gauss_rule(12);
                // cone with the left element radial: x at the far-left node
                {
                    const double M = H2 / H1;
                    const double scale = 2.0 * std::pow(H1, gamma + 2.0) * rad_exact * M;
                    for (std::size_t k = 0; k < g.x.size(); ++k) {
                        const double mu = M * g.x[k];
                        emit(sink, el[i].n0, el[i].n1, 0.0,
                             el[j].n0, el[j].n1, H1 * mu / H2,
                             scale * g.w[k] * std::pow(1.0 + mu, gamma), omega_only);
                    }
                }
                // cone with the right element radial: y at the far-right node
                {
                    const double M = H1 / H2;
                    const double scale = 2.0 * std::pow(H2, gamma + 2.0) * rad_exact * M;
                    for (std::size_t k = 0; k < g.x.size(); ++k) {
                        const double nu = M * g.x[k];
                        emit(sink, el[i].n0, el[i].n1, 1.0 - H2 * nu / H1,
                             el[j].n0, el[j].n1, 1.0,
                             scale * g.w[k] * std::pow(1.0 + nu, gamma), omega_only);
                    }
                }
            } else {
                const auto& g = gauss_rule(disjoint_order(gap, std::max(el[i].h, el[j].h)));
                const double area2 = 2.0 * el[i].h * el[j].h;
                for (std::size_t kx = 0; kx < g.x.size(); ++kx) {
                    const double x = el[i].a + el[i].h * g.x[kx];
                    for (std::size_t ky = 0; ky < g.x.size(); ++ky) {
                        const double y = el[j].a + el[j].h * g.x[ky];
                        emit(sink, el[i].n0, el[i].n1, g.x[kx],
                             el[j].n0, el[j].n1, g.x[ky],
                             area2 * g.w[kx] * g.w[ky] * std::pow(y - x, gamma),
                             omega_only);
                    }
                }
            }
        }
    }
}

inline double clip_part(double v, SignPart part) {
    switch (part) {
        case SignPart::Plus: return v > 0 ? v : 0.0;
        case SignPart::Minus: return v < 0 ? -v : 0.0;
        default: return v;
    }
}

inline double value_at(const Vector& u, int32_t a, int32_t b, int32_t c,
                       double sa, double sb, double sc) {
    double v = sa * u[a] + sb * u[b];
    if (c >= 0) v += sc * u[c];
    return v;
}

} // namespace

void generate_pairs(const Mesh& mesh, const KernelParams& params,
                    const std::function<void(const QuadPair&)>& sink) {
    if (mesh.dim == 1)
        pairs_1d(mesh, params, sink);
    else
        generate_pairs_2d(mesh, params, sink);
}

template <typename F>
void NonlocalEnergy::for_each_pair(F&& f) const {
    if (!pairs_.empty()) {
        for (const auto& q : pairs_) f(q);
    } else {
        generate_pairs(*mesh_, params_, [&](const QuadPair& q) { f(q); });
    }
}

NonlocalEnergy NonlocalEnergy::assemble(const Mesh& mesh, const KernelParams& params,
                                        bool store_pairs) {
    NonlocalEnergy E;
    E.mesh_ = &mesh;
    E.params_ = params;
    E.n_ = mesh.node_count();

    const bool build_matrix = params.p == 2.0;
    if (build_matrix) {
        E.matrix_ = Eigen::MatrixXd::Zero(E.n_, E.n_);
        E.matrix_omega_ = Eigen::MatrixXd::Zero(E.n_, E.n_);
    }
    auto consume = [&](const QuadPair& q) {
        if (store_pairs) E.pairs_.push_back(q);
        if (build_matrix) {
            int idx[6] = {q.x0, q.x1, q.x2, q.y0, q.y1, q.y2};
            double coef[6] = {q.sx0, q.sx1, q.sx2, -q.sy0, -q.sy1, -q.sy2};
            for (int a = 0; a < 6; ++a) {
                if (idx[a] < 0 || coef[a] == 0.0) continue;
                for (int b = 0; b < 6; ++b) {
                    if (idx[b] < 0 || coef[b] == 0.0) continue;
                    const double v = q.w * coef[a] * coef[b];
                    E.matrix_(idx[a], idx[b]) += v;
                    if (q.omega_only) E.matrix_omega_(idx[a], idx[b]) += v;
                }
            }
        }
    };
    generate_pairs(mesh, params, consume);
    E.mass_omega_ = mass_matrix_region(mesh, false);
    E.mass_collar_ = mass_matrix_region(mesh, true);
    return E;
}

void NonlocalEnergy::check(const Vector& u) const {
    if (u.size() != n_) throw MeshMismatch("nodal vector does not match the mesh");
}

double NonlocalEnergy::seminorm_p(const Vector& u, SignPart part, PairSet set) const {
    check(u);
    if (part == SignPart::None && has_matrix()) {
        const auto& A = (set == PairSet::Full) ? matrix_ : matrix_omega_;
        return u.dot(A * u);
    }
    const double p = params_.p;
    double acc = 0.0;
    for_each_pair([&](const QuadPair& q) {
        if (set == PairSet::OmegaOnly && !q.omega_only) return;
        const double ux = clip_part(value_at(u, q.x0, q.x1, q.x2, q.sx0, q.sx1, q.sx2), part);
        const double uy = clip_part(value_at(u, q.y0, q.y1, q.y2, q.sy0, q.sy1, q.sy2), part);
        acc += q.w * std::pow(std::abs(ux - uy), p);
    });
    return acc;
}

double NonlocalEnergy::seminorm_mapped(const Vector& u,
                                       const std::function<double(double)>& T) const {
    check(u);
    const double p = params_.p;
    double acc = 0.0;
    for_each_pair([&](const QuadPair& q) {
        const double ux = T(value_at(u, q.x0, q.x1, q.x2, q.sx0, q.sx1, q.sx2));
        const double uy = T(value_at(u, q.y0, q.y1, q.y2, q.sy0, q.sy1, q.sy2));
        acc += q.w * std::pow(std::abs(ux - uy), p);
    });
    return acc;
}

double NonlocalEnergy::gateaux(const Vector& u, const Vector& v) const {
    check(u);
    check(v);
    if (has_matrix()) return v.dot(matrix_ * u);
    const double p = params_.p;
    double acc = 0.0;
    for_each_pair([&](const QuadPair& q) {
        const double du = value_at(u, q.x0, q.x1, q.x2, q.sx0, q.sx1, q.sx2) -
                          value_at(u, q.y0, q.y1, q.y2, q.sy0, q.sy1, q.sy2);
        const double dv = value_at(v, q.x0, q.x1, q.x2, q.sx0, q.sx1, q.sx2) -
                          value_at(v, q.y0, q.y1, q.y2, q.sy0, q.sy1, q.sy2);
        acc += q.w * std::pow(std::abs(du), p - 2.0) * du * dv;
    });
    return acc;
}

void NonlocalEnergy::add_h_gradient(const Vector& u, double coeff, Vector& g) const {
    check(u);
    check(g);
    if (has_matrix()) {
        g.noalias() += coeff * (matrix_ * u);
        return;
    }
    const double p = params_.p;
    for_each_pair([&](const QuadPair& q) {
        const double du = value_at(u, q.x0, q.x1, q.x2, q.sx0, q.sx1, q.sx2) -
                          value_at(u, q.y0, q.y1, q.y2, q.sy0, q.sy1, q.sy2);
        const double f = coeff * q.w * std::pow(std::abs(du), p - 2.0) * du;
        g[q.x0] += f * q.sx0;
        g[q.x1] += f * q.sx1;
        if (q.x2 >= 0) g[q.x2] += f * q.sx2;
        g[q.y0] -= f * q.sy0;
        g[q.y1] -= f * q.sy1;
        if (q.y2 >= 0) g[q.y2] -= f * q.sy2;
    });
}

void NonlocalEnergy::add_h_hessian(const Vector& u, double coeff, Eigen::MatrixXd& out) const {
    check(u);
    if (params_.p == 2.0) {
        out += coeff * matrix();
        return;
    }
    const double p = params_.p;
    for_each_pair([&](const QuadPair& q) {
        const double du = value_at(u, q.x0, q.x1, q.x2, q.sx0, q.sx1, q.sx2) -
                          value_at(u, q.y0, q.y1, q.y2, q.sy0, q.sy1, q.sy2);
        const double f = coeff * q.w * (p - 1.0) * std::pow(std::abs(du), p - 2.0);
        if (f == 0.0) return;
        int idx[6] = {q.x0, q.x1, q.x2, q.y0, q.y1, q.y2};
        double c[6] = {q.sx0, q.sx1, q.sx2, -q.sy0, -q.sy1, -q.sy2};
        for (int a = 0; a < 6; ++a) {
            if (idx[a] < 0 || c[a] == 0.0) continue;
            for (int b = 0; b < 6; ++b) {
                if (idx[b] < 0 || c[b] == 0.0) continue;
                out(idx[a], idx[b]) += f * c[a] * c[b];
            }
        }
    });
}

const Eigen::MatrixXd& NonlocalEnergy::matrix() const {
    if (!has_matrix()) throw ConfigError("dense nonlocal matrix is only kept for p = 2");
    return matrix_;
}

const Eigen::MatrixXd& NonlocalEnergy::matrix_omega() const {
    if (!has_matrix()) throw ConfigError("dense nonlocal matrix is only kept for p = 2");
    return matrix_omega_;
}

void NonlocalEnergy::export_matrix(std::ostream& os) const {
    const auto& A = matrix();
    os.precision(17);
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            if (A(i, j) != 0.0) os << i << " " << j << " " << A(i, j) << "\n";
}

Eigen::SparseMatrix<double> mass_matrix(const Mesh& mesh, const std::vector<int>& elems) {
    std::vector<Eigen::Triplet<double>> trips;
    for (int ei : elems) {
        const auto& e = mesh.elements[ei];
        if (mesh.dim == 1) {
            const double h6 = e.measure / 6.0;
            const int a = e.v[0], b = e.v[1];
            trips.emplace_back(a, a, 2.0 * h6);
            trips.emplace_back(b, b, 2.0 * h6);
            trips.emplace_back(a, b, h6);
            trips.emplace_back(b, a, h6);
        } else {
            const double m = e.measure / 12.0;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    trips.emplace_back(e.v[a], e.v[b], (a == b ? 2.0 : 1.0) * m);
        }
    }
    Eigen::SparseMatrix<double> M(mesh.node_count(), mesh.node_count());
    M.setFromTriplets(trips.begin(), trips.end());
    return M;
}

Eigen::SparseMatrix<double> mass_matrix_region(const Mesh& mesh, bool collar_only) {
    std::vector<int> elems;
    for (int i = 0; i < mesh.element_count(); ++i) {
        const Region r = mesh.elements[i].region;
        if (collar_only ? (r == Region::Collar) : (r != Region::Exterior))
            elems.push_back(i);
    }
    return mass_matrix(mesh, elems);
}

double local_gradient_energy(const Mesh& mesh, const Vector& u, double p) {
    double acc = 0.0;
    for (const auto& e : mesh.elements) {
        if (e.region == Region::Exterior) continue;
        if (mesh.dim == 1) {
            const double s = (u[e.v[1]] - u[e.v[0]]) / e.measure;
            acc += std::pow(std::abs(s), p) * e.measure;
        } else {
            const auto& a = mesh.nodes[e.v[0]];
            const auto& b = mesh.nodes[e.v[1]];
            const auto& c = mesh.nodes[e.v[2]];
            const double det = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
            const double gx = ((u[e.v[1]] - u[e.v[0]]) * (c[1] - a[1]) -
                               (u[e.v[2]] - u[e.v[0]]) * (b[1] - a[1])) / det;
            const double gy = ((u[e.v[2]] - u[e.v[0]]) * (b[0] - a[0]) -
                               (u[e.v[1]] - u[e.v[0]]) * (c[0] - a[0])) / det;
            acc += std::pow(std::hypot(gx, gy), p) * e.measure;
        }
    }
    return acc;
}

std::vector<double> bbm_sequence(const Mesh& mesh, const Vector& u, double p,
                                 const std::vector<double>& alphas) {
    std::vector<double> out;
    out.reserve(alphas.size());
    for (double alpha : alphas) {
        KernelParams k;
        k.n = mesh.dim;
        k.alpha = alpha;
        k.p = p;
        k.lambda = lambda_np(mesh.dim, p);
        k.truncation_radius = mesh.spec.radius();
        double acc = 0.0;
        generate_pairs(mesh, k, [&](const QuadPair& q) {
            if (!q.omega_only) return;
            const double du = value_at(u, q.x0, q.x1, q.x2, q.sx0, q.sx1, q.sx2) -
                              value_at(u, q.y0, q.y1, q.y2, q.sy0, q.sy1, q.sy2);
            acc += q.w * std::pow(std::abs(du), p);
        });
        out.push_back(k.lambda * (1.0 - alpha) * acc);
    }
    return out;
}

} // namespace fucik
