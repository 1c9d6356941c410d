#include <array>
#include <cmath>

#include "fucik/kernel.hpp"
#include "fucik/quadrature.hpp"

// 2D quadrature pairs for the Q-integral on triangle meshes.
//
// * identical triangle pairs: polar covariogram form. For x, y in the same
//   triangle the interpolant difference is linear in z = x - y, so the pair
//   integral reduces to int |grad u . z|^p |z|^gamma cov_T(z) dz with
//   cov_T(z) = |T cap (T - z)|. The radial singularity is removed exactly by
//   the substitution r = L s^{1/(p(1-alpha))}.
// * edge- and vertex-adjacent pairs: dyadic subdivision; separated child
//   pairs get a symmetric triangle rule, still-touching pairs recurse. The
//   dropped tail below the depth cut-off scales like 2^{-depth p(1-alpha)}.
// * disjoint pairs: tensor triangle rules with distance-based degree.

namespace fucik {

namespace {

using P = std::array<double, 2>;

struct Tri {
    P a, b, c;    // current (possibly subdivided) corners
    P ra, rb, rc; // corners of the original element (barycentric reference)
    int n0, n1, n2;
    bool in_omega;
};

double cross(const P& o, const P& u, const P& v) {
    return (u[0] - o[0]) * (v[1] - o[1]) - (u[1] - o[1]) * (v[0] - o[0]);
}

double tri_area(const Tri& t) { return 0.5 * std::abs(cross(t.a, t.b, t.c)); }

P centroid3(const P& a, const P& b, const P& c) {
    return {(a[0] + b[0] + c[0]) / 3.0, (a[1] + b[1] + c[1]) / 3.0};
}

// Barycentric coordinates of q with respect to the reference corners of t.
void bary(const Tri& t, const P& q, double& s0, double& s1, double& s2) {
    const double det = cross(t.ra, t.rb, t.rc);
    s1 = cross(t.ra, q, t.rc) / det;
    s2 = cross(t.ra, t.rb, q) / det;
    s0 = 1.0 - s1 - s2;
}

struct Sink {
    const std::function<void(const QuadPair&)>& f;
    void operator()(const Tri& tx, const P& x, const Tri& ty, const P& y,
                    double w, bool omega_only) const {
        QuadPair q;
        q.x0 = tx.n0; q.x1 = tx.n1; q.x2 = tx.n2;
        q.y0 = ty.n0; q.y1 = ty.n1; q.y2 = ty.n2;
        bary(tx, x, q.sx0, q.sx1, q.sx2);
        bary(ty, y, q.sy0, q.sy1, q.sy2);
        q.w = w;
        q.omega_only = omega_only;
        f(q);
    }
};

// Symmetric triangle rules (barycentric, weights sum to 1).
struct TriRule {
    std::vector<std::array<double, 4>> pts; // {b0, b1, b2, w}
};

const TriRule& tri_rule(bool fine) {
    static const TriRule coarse{{{2.0 / 3, 1.0 / 6, 1.0 / 6, 1.0 / 3},
                                 {1.0 / 6, 2.0 / 3, 1.0 / 6, 1.0 / 3},
                                 {1.0 / 6, 1.0 / 6, 2.0 / 3, 1.0 / 3}}};
    static const TriRule six = [] {
        TriRule r;
        const double a1 = 0.816847572980459, b1 = 0.091576213509771, w1 = 0.109951743655322;
        const double a2 = 0.108103018168070, b2 = 0.445948490915965, w2 = 0.223381589678011;
        for (auto [a, b, w] : {std::tuple{a1, b1, w1}, std::tuple{a2, b2, w2}}) {
            r.pts.push_back({a, b, b, w});
            r.pts.push_back({b, a, b, w});
            r.pts.push_back({b, b, a, w});
        }
        return r;
    }();
    return fine ? six : coarse;
}

P map_bary(const Tri& t, double b0, double b1, double b2) {
    return {b0 * t.a[0] + b1 * t.b[0] + b2 * t.c[0],
            b0 * t.a[1] + b1 * t.b[1] + b2 * t.c[1]};
}

int shared_vertices(const Tri& s, const Tri& t, double tol) {
    int cnt = 0;
    for (const P* u : {&s.a, &s.b, &s.c})
        for (const P* v : {&t.a, &t.b, &t.c})
            if (std::abs((*u)[0] - (*v)[0]) < tol && std::abs((*u)[1] - (*v)[1]) < tol) ++cnt;
    return cnt;
}

double tri_dist(const Tri& s, const Tri& t) {
    // centroid distance minus circumscribing reach; cheap, only steers orders
    const P cs = centroid3(s.a, s.b, s.c), ct = centroid3(t.a, t.b, t.c);
    double rs = 0.0, rt = 0.0;
    for (const P* u : {&s.a, &s.b, &s.c}) rs = std::max(rs, std::hypot((*u)[0] - cs[0], (*u)[1] - cs[1]));
    for (const P* u : {&t.a, &t.b, &t.c}) rt = std::max(rt, std::hypot((*u)[0] - ct[0], (*u)[1] - ct[1]));
    return std::max(0.0, std::hypot(ct[0] - cs[0], ct[1] - cs[1]) - rs - rt);
}

void separated_pair(const Tri& s, const Tri& t, double gamma, bool fine,
                    const Sink& sink, bool omega_only) {
    const auto& rs = tri_rule(fine);
    const double as = tri_area(s), at = tri_area(t);
    for (const auto& px : rs.pts) {
        const P x = map_bary(s, px[0], px[1], px[2]);
        for (const auto& py : rs.pts) {
            const P y = map_bary(t, py[0], py[1], py[2]);
            const double d = std::hypot(x[0] - y[0], x[1] - y[1]);
            sink(s, x, t, y, 2.0 * px[3] * py[3] * as * at * std::pow(d, gamma), omega_only);
        }
    }
}

void split(const Tri& t, Tri out[4]) {
    const P mab{0.5 * (t.a[0] + t.b[0]), 0.5 * (t.a[1] + t.b[1])};
    const P mbc{0.5 * (t.b[0] + t.c[0]), 0.5 * (t.b[1] + t.c[1])};
    const P mca{0.5 * (t.c[0] + t.a[0]), 0.5 * (t.c[1] + t.a[1])};
    out[0] = t; out[0].b = mab; out[0].c = mca;
    out[1] = t; out[1].a = mab; out[1].c = mbc;
    out[2] = t; out[2].a = mca; out[2].b = mbc;
    out[3] = t; out[3].a = mab; out[3].b = mbc; out[3].c = mca;
}

void adjacent_pair(const Tri& s, const Tri& t, double gamma, double tol,
                   int depth, int level, const Sink& sink, bool omega_only) {
    if (depth == 0) return; // tail cut-off
    Tri cs[4], ct[4];
    split(s, cs);
    split(t, ct);
    for (const Tri& u : cs)
        for (const Tri& v : ct) {
            if (shared_vertices(u, v, tol) > 0)
                adjacent_pair(u, v, gamma, tol, depth - 1, level + 1, sink, omega_only);
            else
                separated_pair(u, v, gamma, level < 3, sink, omega_only);
        }
}

// Sutherland-Hodgman clip of convex polygon poly by the half-plane left of
// the directed edge (e0, e1).
void clip_edge(std::vector<P>& poly, const P& e0, const P& e1) {
    std::vector<P> out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const P& cur = poly[i];
        const P& nxt = poly[(i + 1) % n];
        const double dc = cross(e0, e1, cur);
        const double dn = cross(e0, e1, nxt);
        if (dc >= 0) out.push_back(cur);
        if ((dc > 0 && dn < 0) || (dc < 0 && dn > 0)) {
            const double t = dc / (dc - dn);
            out.push_back({cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1])});
        }
    }
    poly = std::move(out);
}

// Area and centroid of T cap (T - z).
bool covariogram(const Tri& t, const P& z, double& area, P& cen) {
    std::vector<P> poly{t.a, t.b, t.c};
    const P a{t.a[0] - z[0], t.a[1] - z[1]};
    const P b{t.b[0] - z[0], t.b[1] - z[1]};
    const P c{t.c[0] - z[0], t.c[1] - z[1]};
    const bool ccw = cross(t.a, t.b, t.c) > 0;
    auto clip = [&](const P& u, const P& v) { ccw ? clip_edge(poly, u, v) : clip_edge(poly, v, u); };
    clip(a, b);
    if (poly.size() >= 3) clip(b, c);
    if (poly.size() >= 3) clip(c, a);
    if (poly.size() < 3) return false;
    double A = 0.0, cx = 0.0, cy = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const P& u = poly[i];
        const P& v = poly[(i + 1) % poly.size()];
        const double w = u[0] * v[1] - v[0] * u[1];
        A += w;
        cx += (u[0] + v[0]) * w;
        cy += (u[1] + v[1]) * w;
    }
    area = 0.5 * std::abs(A);
    if (area <= 0.0) return false;
    cen = {cx / (3.0 * A), cy / (3.0 * A)};
    return true;
}

void identical_pair(const Tri& t, double p, double gamma, const Sink& sink) {
    const double q = p + gamma + 2.0; // = p(1 - alpha)
    const auto& gth = gauss_rule(12);
    const auto& gs = gauss_rule(8);
    for (std::size_t k = 0; k < gth.x.size(); ++k) {
        const double th = M_PI * gth.x[k];
        const P dir{std::cos(th), std::sin(th)};
        double L = 0.0; // directional width of the triangle
        for (const P* u : {&t.a, &t.b, &t.c})
            for (const P* v : {&t.a, &t.b, &t.c})
                L = std::max(L, ((*u)[0] - (*v)[0]) * dir[0] + ((*u)[1] - (*v)[1]) * dir[1]);
        // 2 * from the symmetric half-circle; weight carries s^{-p/q} so that
        // together with |du|^p ~ r^p the radial integral is handled exactly.
        const double base = 2.0 * M_PI * gth.w[k] * std::pow(L, gamma + 2.0) / q;
        for (std::size_t m = 0; m < gs.x.size(); ++m) {
            const double s = gs.x[m];
            const double r = L * std::pow(s, 1.0 / q);
            const P z{r * dir[0], r * dir[1]};
            double cov;
            P x;
            if (!covariogram(t, z, cov, x)) continue;
            const P y{x[0] + z[0], x[1] + z[1]};
            sink(t, x, t, y, base * gs.w[m] * std::pow(s, -p / q) * cov, true);
        }
    }
}

} // namespace

void generate_pairs_2d(const Mesh& mesh, const KernelParams& params,
                       const std::function<void(const QuadPair&)>& sink) {
    const double gamma = params.kernel_power();
    const double p = params.p;
    const int ne = mesh.element_count();
    const int depth = std::min(10, std::max(4, static_cast<int>(
                          std::ceil(8.0 / (p * (1.0 - params.alpha))))));

    std::vector<Tri> tri(ne);
    double hmin = 1e300, hmax = 0.0;
    for (int i = 0; i < ne; ++i) {
        const auto& e = mesh.elements[i];
        const P a = mesh.nodes[e.v[0]], b = mesh.nodes[e.v[1]], c = mesh.nodes[e.v[2]];
        tri[i] = {a, b, c, a, b, c, e.v[0], e.v[1], e.v[2], e.region != Region::Exterior};
        const double h = std::sqrt(e.measure);
        hmin = std::min(hmin, h);
        hmax = std::max(hmax, h);
    }
    const double tol = 1e-9 * hmin;
    const Sink out{sink};

    for (int i = 0; i < ne; ++i) {
        if (tri[i].in_omega) identical_pair(tri[i], p, gamma, out);
        for (int j = i + 1; j < ne; ++j) {
            if (!tri[i].in_omega && !tri[j].in_omega) continue;
            const bool omega_only = tri[i].in_omega && tri[j].in_omega;
            if (shared_vertices(tri[i], tri[j], tol) > 0) {
                adjacent_pair(tri[i], tri[j], gamma, tol, depth, 1, out, omega_only);
            } else {
                const double d = tri_dist(tri[i], tri[j]);
                const double size = std::sqrt(std::max(tri_area(tri[i]), tri_area(tri[j])));
                separated_pair(tri[i], tri[j], gamma, d <= 3.0 * size, out, omega_only);
            }
        }
    }
}

} // namespace fucik
