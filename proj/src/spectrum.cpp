#include "fucik/spectrum.hpp"

#include <cmath>
#include <sstream>

namespace fucik {

std::vector<std::array<double, 2>> FucikCurve::mirrored() const {
    std::vector<std::array<double, 2>> out;
    out.reserve(2 * points.size());
    for (const auto& pt : points) out.push_back({pt.s + pt.c, pt.c});
    for (const auto& pt : points)
        if (pt.s > 0.0) out.push_back({pt.c, pt.s + pt.c}); // s = 0 is on the diagonal
    return out;
}

namespace {

// Deterministic sign-changing witness: the second eigenfunction when the
// dense pencil is available (p = 2), otherwise the odd coordinate about the
// domain center (sign-changing on both collar components).
Vector default_witness(const NonlocalEnergy& E) {
    if (E.params().p == 2.0) return lambda2_dense(E).function;
    const Mesh& mesh = E.mesh();
    const double cx = 0.5 * (mesh.spec.omega_min[0] + mesh.spec.omega_max[0]);
    Vector w(mesh.node_count());
    for (int i = 0; i < mesh.node_count(); ++i) w[i] = mesh.nodes[i][0] - cx;
    return project_to_S(mesh, w).u;
}

} // namespace

FucikCurve sweep(const std::vector<double>& s_grid, const NonlocalEnergy& E,
                 const SweepOptions& opts) {
    if (s_grid.empty() || s_grid.front() != 0.0)
        throw ConfigError("s grid must start at 0");
    for (std::size_t i = 1; i < s_grid.size(); ++i)
        if (!(s_grid[i] > s_grid[i - 1]))
            throw ConfigError("s grid must be strictly ascending");

    FucikCurve curve;
    curve.lambda1 = lambda1(E).value;
    const Vector phi1 = lambda1(E).function;
    PathOnS path = initial_path(E, phi1, default_witness(E), opts.path_samples);

    for (double s : s_grid) {
        MinimaxResult r = deform(path, s, E, opts.deform);
        curve.points.push_back({s, r.c_value, r.converged});
        if (opts.warm_start)
            path = std::move(r.path); // levels are refreshed by the next deform
    }
    return curve;
}

CurveCheck check_properties(const FucikCurve& curve) {
    std::vector<CurvePoint> pts;
    for (const auto& pt : curve.points)
        if (pt.converged) pts.push_back(pt);
    if (pts.size() < 3) throw ConfigError("need at least 3 converged curve points");

    CurveCheck r;
    r.above_lambda1 = r.decreasing = r.shifted_increasing = r.lipschitz = true;
    std::ostringstream detail;
    const double strict = 1e-10;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!(pts[i].c > curve.lambda1)) {
            r.above_lambda1 = false;
            detail << "c(" << pts[i].s << ") <= lambda1; ";
        }
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const double ds = pts[j].s - pts[i].s;
            const double dc = pts[i].c - pts[j].c; // expected positive
            if (!(dc > strict)) {
                r.decreasing = false;
                detail << "c not decreasing on (" << pts[i].s << "," << pts[j].s << "); ";
            }
            if (!(pts[j].s + pts[j].c - pts[i].s - pts[i].c > strict)) {
                r.shifted_increasing = false;
                detail << "s+c not increasing on (" << pts[i].s << "," << pts[j].s << "); ";
            }
            if (!(std::abs(dc) <= ds * (1.0 + 1e-6))) {
                r.lipschitz = false;
                detail << "Lipschitz bound fails on (" << pts[i].s << "," << pts[j].s << "); ";
            }
        }
    }
    const CurvePoint& mid = pts[pts.size() / 2];
    const CurvePoint& last = pts.back();
    r.tail = last.c - curve.lambda1 < mid.c - curve.lambda1;
    if (!r.tail) detail << "tail not approaching lambda1; ";
    r.detail = detail.str();
    return r;
}

TrivialLineReport trivial_lines_check(const NonlocalEnergy& E, double tol) {
    const EigenResult eig = lambda1(E);
    const double l1 = eig.value;
    TrivialLineReport rep;
    for (double b : {0.0, 0.5 * l1, l1})
        rep.max_vertical = std::max(rep.max_vertical,
                                    fucik_residual(eig.function, l1, b, E));
    for (double a : {l1, l1 + 1.0, l1 + 5.0})
        rep.max_horizontal = std::max(rep.max_horizontal,
                                      fucik_residual(Vector(-eig.function), a, l1, E));
    rep.control = fucik_residual(eig.function, l1 + 0.1, 0.0, E);
    rep.ok = rep.max_vertical < tol && rep.max_horizontal < tol &&
             rep.control > 100.0 * tol;
    return rep;
}

} // namespace fucik
