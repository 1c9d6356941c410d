#include "fucik/limits.hpp"

#include <cmath>

namespace fucik {

std::pair<double, double> steklov_exact_1d(double p, double a, double b) {
    if (p != 2.0 || a != -1.0 || b != 1.0)
        throw ConfigError("closed-form boundary eigenvalues require p = 2 on (-1,1)");
    return {std::tanh(1.0), 1.0 / std::tanh(1.0)};
}

namespace {

// Solves tan(k*eps) = rhs(k) for the first root with k*eps in (0, pi/2).
double match_k(double eps, const std::function<double(double)>& rhs) {
    double lo = 1e-9, hi = 0.5 * M_PI / eps - 1e-9;
    auto g = [&](double k) { return std::tan(k * eps) - rhs(k); };
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

std::pair<double, double> steklov_collar_1d(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("collar width must lie in (0,1)");
    const double d = 1.0 - eps;
    // even branch u = cosh on the interior, oscillatory in the collar
    const double k1 = match_k(eps, [&](double k) { return std::tanh(d) / k; });
    // odd branch u = sinh on the interior
    const double k2 = match_k(eps, [&](double k) { return 1.0 / (std::tanh(d) * k); });
    return {eps * (k1 * k1 + 1.0), eps * (k2 * k2 + 1.0)};
}

double lemma_f4_ratio(const DomainSpec& base, int resolution,
                      const std::function<double(double)>& u, double alpha) {
    if (base.dim != 1) throw ConfigError("limit ratio implemented in 1D only");
    DomainSpec spec = base;
    spec.alpha = alpha;
    spec.epsilon = 1.0 - alpha;
    Mesh mesh = build_mesh(spec, resolution);
    if (spec.epsilon < (spec.omega_max[0] - spec.omega_min[0]) / (resolution - 1))
        throw ConfigError("collar coarser than the mesh");

    const double a = spec.omega_min[0], b = spec.omega_max[0];
    const double c = 0.5 * (a + b), R = spec.radius();
    Vector v(mesh.node_count());
    for (int i = 0; i < mesh.node_count(); ++i) {
        const double x = mesh.nodes[i][0];
        if (x >= a && x <= b) v[i] = u(x);
        else if (x > b) v[i] = u(b) * (c + R - x) / (c + R - b);
        else v[i] = u(a) * (x - (c - R)) / (a - (c - R));
    }

    NonlocalEnergy E = NonlocalEnergy::assemble(mesh, KernelParams::from(spec), false);
    const double p = spec.p;
    const double num = E.params().lambda * (1.0 - alpha) * E.seminorm_p(v) +
                       region_integral_pow(mesh, v, p, false, SignPart::None);
    const double den = region_integral_pow(mesh, v, p, true, SignPart::None) /
                       (1.0 - alpha);
    return num / den;
}

std::vector<LimitRow> eigen_limit_study(const std::vector<double>& alphas,
                                        const DomainSpec& base, int base_resolution) {
    if (base.dim != 1 || base.p != 2.0)
        throw ConfigError("eigen limit study requires p = 2 in 1D");
    if (alphas.empty()) throw ConfigError("alpha list is empty");
    const auto [t1, t2] = steklov_exact_1d(2.0, base.omega_min[0], base.omega_max[0]);
    std::vector<LimitRow> table;
    for (double alpha : alphas) {
        DomainSpec spec = base;
        spec.alpha = alpha;
        spec.epsilon = 1.0 - alpha;
        const int res = static_cast<int>(
            std::lround(base_resolution * (1.0 - alphas.front()) / (1.0 - alpha)));
        Mesh mesh = build_mesh(spec, res);
        NonlocalEnergy E = NonlocalEnergy::assemble(mesh, KernelParams::from(spec), false);
        LimitRow row;
        row.alpha = alpha;
        row.epsilon = spec.epsilon;
        row.lambda1 = lambda1(E).value;
        row.lambda2 = lambda2_dense(E).value;
        row.lambda1_target = t1;
        row.lambda2_target = t2;
        row.rel_err1 = std::abs(row.lambda1 - t1) / t1;
        row.rel_err2 = std::abs(row.lambda2 - t2) / t2;
        table.push_back(row);
    }
    return table;
}

} // namespace fucik
