#include "fucik/domain.hpp"

#include <algorithm>
#include <cmath>

namespace fucik {

double DomainSpec::diameter() const {
    if (dim == 1) return omega_max[0] - omega_min[0];
    const double dx = omega_max[0] - omega_min[0];
    const double dy = omega_max[1] - omega_min[1];
    return std::hypot(dx, dy);
}

double DomainSpec::radius() const {
    return truncation_radius > 0.0 ? truncation_radius : 4.0 * diameter();
}

std::vector<std::string> validate(const DomainSpec& spec) {
    if (spec.dim != 1 && spec.dim != 2)
        throw ConfigError("dimension must be 1 or 2");
    if (!(spec.epsilon > 0.0 && spec.epsilon < 1.0))
        throw ConfigError("epsilon must lie in (0,1)");
    if (!(spec.alpha > 0.0 && spec.alpha < 1.0))
        throw ConfigError("alpha must lie in (0,1)");
    if (!(spec.p >= 2.0))
        throw ConfigError("p must be >= 2");
    for (int d = 0; d < spec.dim; ++d)
        if (!(spec.omega_max[d] > spec.omega_min[d]))
            throw ConfigError("omega_max must exceed omega_min");
    // Collar must stay strictly inside Omega: width < half the thinnest side.
    for (int d = 0; d < spec.dim; ++d)
        if (!(2.0 * spec.epsilon < spec.omega_max[d] - spec.omega_min[d]))
            throw ConfigError("collar width 2*epsilon must be smaller than Omega");
    const double half_extent = [&] {
        double m = 0.0;
        for (int d = 0; d < spec.dim; ++d)
            m = std::max(m, std::max(std::abs(spec.omega_min[d]), std::abs(spec.omega_max[d])));
        return m;
    }();
    if (!(spec.radius() > half_extent))
        throw ConfigError("truncation box must strictly contain closure of Omega");

    std::vector<std::string> warnings;
    if (spec.dim <= spec.p * spec.alpha)
        warnings.push_back("n <= p*alpha: the embedding hypothesis n > p*alpha fails; "
                           "the discrete computation proceeds regardless");
    return warnings;
}

namespace {

// Uniform subdivision of [a,b] into k elements, appended without the first node.
void subdivide(std::vector<double>& xs, double a, double b, int k) {
    for (int i = 1; i <= k; ++i)
        xs.push_back(a + (b - a) * static_cast<double>(i) / k);
}

// Geometric grading from |from| outward to target, first step ~h0, ratio r.
std::vector<double> graded_steps(double length, double h0, double ratio) {
    std::vector<double> steps;
    double h = h0, acc = 0.0;
    while (acc + h < length) {
        steps.push_back(h);
        acc += h;
        h *= ratio;
    }
    steps.push_back(length - acc); // land exactly on the box boundary
    if (steps.size() >= 2 && steps.back() < 0.25 * steps[steps.size() - 2]) {
        // fold a sliver step into its neighbour
        double last = steps.back();
        steps.pop_back();
        steps.back() += last;
    }
    return steps;
}

/// 1D coordinate array covering [lo_box, hi_box] with Omega = [a,b],
/// collar breakpoints snapped, and region breakpoints returned by value.
struct Axis {
    std::vector<double> coords; // sorted, includes a, a+eps, b-eps, b
};

Axis build_axis(double a, double b, double eps, double R_lo, double R_hi,
                int resolution) {
    const double h = (b - a) / (resolution - 1);
    if (eps < h)
        throw ConfigError("resolution too coarse for epsilon (collar thinner than one element)");
    const int k_collar = std::max(1, static_cast<int>(std::llround(eps / h)));
    const int k_core = std::max(1, static_cast<int>(std::llround((b - a - 2 * eps) / h)));

    Axis ax;
    // exterior, left of a (graded away from Omega, built outward then reversed)
    {
        auto steps = graded_steps(a - R_lo, h, 1.3);
        double x = a;
        std::vector<double> left{a};
        for (double s : steps) {
            x -= s;
            left.push_back(x);
        }
        left.back() = R_lo;
        std::reverse(left.begin(), left.end());
        ax.coords = std::move(left);
    }
    subdivide(ax.coords, a, a + eps, k_collar);
    subdivide(ax.coords, a + eps, b - eps, k_core);
    subdivide(ax.coords, b - eps, b, k_collar);
    {
        auto steps = graded_steps(R_hi - b, h, 1.3);
        double x = b;
        for (double s : steps) {
            x += s;
            ax.coords.push_back(x);
        }
        ax.coords.back() = R_hi;
    }
    return ax;
}

Region classify_1d(double mid, double a, double b, double eps) {
    if (mid < a || mid > b) return Region::Exterior;
    if (mid <= a + eps || mid >= b - eps) return Region::Collar;
    return Region::Interior;
}

Mesh build_mesh_1d(const DomainSpec& spec, int resolution) {
    const double a = spec.omega_min[0], b = spec.omega_max[0];
    const double c = 0.5 * (a + b), R = spec.radius();
    Axis ax = build_axis(a, b, spec.epsilon, c - R, c + R, resolution);

    Mesh mesh;
    mesh.dim = 1;
    mesh.spec = spec;
    mesh.nodes.reserve(ax.coords.size());
    for (double x : ax.coords) mesh.nodes.push_back({x, 0.0});
    for (std::size_t i = 0; i + 1 < ax.coords.size(); ++i) {
        Mesh::Element e;
        e.v = {static_cast<int>(i), static_cast<int>(i + 1), -1};
        e.measure = ax.coords[i + 1] - ax.coords[i];
        e.region = classify_1d(0.5 * (ax.coords[i] + ax.coords[i + 1]), a, b, spec.epsilon);
        mesh.elements.push_back(e);
    }
    return mesh;
}

Region classify_2d(double mx, double my, const DomainSpec& s) {
    const double a0 = s.omega_min[0], b0 = s.omega_max[0];
    const double a1 = s.omega_min[1], b1 = s.omega_max[1];
    if (mx < a0 || mx > b0 || my < a1 || my > b1) return Region::Exterior;
    const double d = std::min(std::min(mx - a0, b0 - mx), std::min(my - a1, b1 - my));
    return d <= s.epsilon ? Region::Collar : Region::Interior;
}

Mesh build_mesh_2d(const DomainSpec& spec, int resolution) {
    const double cx = 0.5 * (spec.omega_min[0] + spec.omega_max[0]);
    const double cy = 0.5 * (spec.omega_min[1] + spec.omega_max[1]);
    const double R = spec.radius();
    Axis ax = build_axis(spec.omega_min[0], spec.omega_max[0], spec.epsilon, cx - R, cx + R, resolution);
    Axis ay = build_axis(spec.omega_min[1], spec.omega_max[1], spec.epsilon, cy - R, cy + R, resolution);

    Mesh mesh;
    mesh.dim = 2;
    mesh.spec = spec;
    const int nx = static_cast<int>(ax.coords.size());
    const int ny = static_cast<int>(ay.coords.size());
    mesh.nodes.reserve(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            mesh.nodes.push_back({ax.coords[i], ay.coords[j]});
    auto id = [nx](int i, int j) { return j * nx + i; };
    for (int j = 0; j + 1 < ny; ++j) {
        for (int i = 0; i + 1 < nx; ++i) {
            const double hx = ax.coords[i + 1] - ax.coords[i];
            const double hy = ay.coords[j + 1] - ay.coords[j];
            const double mx = ax.coords[i] + 0.5 * hx, my = ay.coords[j] + 0.5 * hy;
            const Region reg = classify_2d(mx, my, spec);
            Mesh::Element e1, e2; // split each cell along its main diagonal
            e1.v = {id(i, j), id(i + 1, j), id(i + 1, j + 1)};
            e2.v = {id(i, j), id(i + 1, j + 1), id(i, j + 1)};
            e1.measure = e2.measure = 0.5 * hx * hy;
            e1.region = e2.region = reg;
            mesh.elements.push_back(e1);
            mesh.elements.push_back(e2);
        }
    }
    return mesh;
}

} // namespace

Mesh build_mesh(const DomainSpec& spec, int resolution) {
    if (resolution < 8) throw ConfigError("resolution must be >= 8");
    validate(spec);
    return spec.dim == 1 ? build_mesh_1d(spec, resolution) : build_mesh_2d(spec, resolution);
}

double Mesh::omega_measure() const {
    double m = 0.0;
    for (const auto& e : elements)
        if (e.region != Region::Exterior) m += e.measure;
    return m;
}

double Mesh::collar_measure() const {
    double m = 0.0;
    for (const auto& e : elements)
        if (e.region == Region::Collar) m += e.measure;
    return m;
}

std::vector<int> Mesh::collar_elements() const {
    std::vector<int> out;
    for (int i = 0; i < element_count(); ++i)
        if (elements[i].region == Region::Collar) out.push_back(i);
    return out;
}

} // namespace fucik
