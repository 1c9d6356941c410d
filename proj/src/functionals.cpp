#include "fucik/functionals.hpp"

#include <cmath>

#include "fucik/quadrature.hpp"

namespace fucik {

namespace {

bool in_region(const Mesh::Element& e, bool collar_only) {
    return collar_only ? e.region == Region::Collar : e.region != Region::Exterior;
}

double part_pow(double v, double p, SignPart part) {
    switch (part) {
        case SignPart::Plus: return v > 0 ? std::pow(v, p) : 0.0;
        case SignPart::Minus: return v < 0 ? std::pow(-v, p) : 0.0;
        default: return std::pow(std::abs(v), p);
    }
}

double part_f(double v, double p, SignPart part) {
    // f = |u|^{p-2}u / (u^+)^{p-1} / (u^-)^{p-1}
    switch (part) {
        case SignPart::Plus: return v > 0 ? std::pow(v, p - 1.0) : 0.0;
        case SignPart::Minus: return v < 0 ? std::pow(-v, p - 1.0) : 0.0;
        default: return std::pow(std::abs(v), p - 1.0) * (v >= 0 ? 1.0 : -1.0);
    }
}

const std::array<std::array<double, 4>, 6>& tri6() {
    static const std::array<std::array<double, 4>, 6> r = [] {
        const double a1 = 0.816847572980459, b1 = 0.091576213509771, w1 = 0.109951743655322;
        const double a2 = 0.108103018168070, b2 = 0.445948490915965, w2 = 0.223381589678011;
        return std::array<std::array<double, 4>, 6>{{{a1, b1, b1, w1}, {b1, a1, b1, w1},
                                                     {b1, b1, a1, w1}, {a2, b2, b2, w2},
                                                     {b2, a2, b2, w2}, {b2, b2, a2, w2}}};
    }();
    return r;
}

} // namespace

namespace {

double element_integral_pow(const Mesh& mesh, const Mesh::Element& e,
                            const Vector& u, double p, SignPart part) {
    double acc = 0.0;
    if (mesh.dim == 1) {
        const double a = u[e.v[0]], b = u[e.v[1]];
        switch (part) {
            case SignPart::Plus: acc += e.measure * int_pos_pow(a, b, p); break;
            case SignPart::Minus: acc += e.measure * int_neg_pow(a, b, p); break;
            default: acc += e.measure * int_abs_pow(a, b, p); break;
        }
    } else {
        for (const auto& q : tri6()) {
            const double v = q[0] * u[e.v[0]] + q[1] * u[e.v[1]] + q[2] * u[e.v[2]];
            acc += e.measure * q[3] * part_pow(v, p, part);
        }
    }
    return acc;
}

void element_load(const Mesh& mesh, const Mesh::Element& e, const Vector& u,
                  double p, double coeff, SignPart part, Vector& g) {
    if (mesh.dim == 1) {
        const double a = u[e.v[0]], b = u[e.v[1]];
        double l0, l1;
        switch (part) {
            case SignPart::Plus: load_pos_pow(a, b, p, l0, l1); break;
            case SignPart::Minus: load_neg_pow(a, b, p, l0, l1); break;
            default: load_signed_pow(a, b, p, l0, l1); break;
        }
        g[e.v[0]] += coeff * e.measure * l0;
        g[e.v[1]] += coeff * e.measure * l1;
    } else {
        for (const auto& q : tri6()) {
            const double v = q[0] * u[e.v[0]] + q[1] * u[e.v[1]] + q[2] * u[e.v[2]];
            const double f = coeff * e.measure * q[3] * part_f(v, p, part);
            g[e.v[0]] += f * q[0];
            g[e.v[1]] += f * q[1];
            g[e.v[2]] += f * q[2];
        }
    }
}

} // namespace

double region_integral_pow(const Mesh& mesh, const Vector& u, double p,
                           bool collar_only, SignPart part) {
    double acc = 0.0;
    for (const auto& e : mesh.elements)
        if (in_region(e, collar_only)) acc += element_integral_pow(mesh, e, u, p, part);
    return acc;
}

void add_region_load(const Mesh& mesh, const Vector& u, double p, double coeff,
                     bool collar_only, SignPart part, Vector& g) {
    for (const auto& e : mesh.elements)
        if (in_region(e, collar_only)) element_load(mesh, e, u, p, coeff, part, g);
}

double subset_integral_pow(const Mesh& mesh, const Vector& u, double p,
                           const std::vector<int>& elems, SignPart part) {
    double acc = 0.0;
    for (int ei : elems) acc += element_integral_pow(mesh, mesh.elements[ei], u, p, part);
    return acc;
}

void add_subset_load(const Mesh& mesh, const Vector& u, double p, double coeff,
                     const std::vector<int>& elems, SignPart part, Vector& g) {
    for (int ei : elems) element_load(mesh, mesh.elements[ei], u, p, coeff, part, g);
}

double constraint_value(const Mesh& mesh, const Vector& u) {
    return region_integral_pow(mesh, u, mesh.spec.p, true) / mesh.spec.epsilon;
}

Vector constraint_gradient(const Mesh& mesh, const Vector& u) {
    Vector g = Vector::Zero(mesh.node_count());
    const double p = mesh.spec.p;
    add_region_load(mesh, u, p, p / mesh.spec.epsilon, true, SignPart::None, g);
    return g;
}

double J_s(const Vector& u, double s, const NonlocalEnergy& E) {
    const Mesh& mesh = E.mesh();
    const KernelParams& k = E.params();
    double v = k.lambda * (1.0 - k.alpha) * E.seminorm_p(u) +
               region_integral_pow(mesh, u, k.p, false);
    if (s != 0.0)
        v -= s / mesh.spec.epsilon * region_integral_pow(mesh, u, k.p, true, SignPart::Plus);
    return v;
}

Vector grad_J_s(const Vector& u, double s, const NonlocalEnergy& E) {
    const Mesh& mesh = E.mesh();
    const KernelParams& k = E.params();
    Vector g = Vector::Zero(mesh.node_count());
    E.add_h_gradient(u, k.p * k.lambda * (1.0 - k.alpha), g);
    add_region_load(mesh, u, k.p, k.p, false, SignPart::None, g);
    if (s != 0.0)
        add_region_load(mesh, u, k.p, -k.p * s / mesh.spec.epsilon, true, SignPart::Plus, g);
    return g;
}

SphereState project_to_S(const Mesh& mesh, const Vector& u) {
    const double p = mesh.spec.p;
    const double mass = region_integral_pow(mesh, u, p, true);
    if (!(mass > 0.0)) throw NotProjectable("not projectable: u vanishes on the collar");
    SphereState st;
    st.u = std::pow(mesh.spec.epsilon / mass, 1.0 / p) * u;
    return st;
}

double reduced_grad_norm(const Vector& u, double s, const NonlocalEnergy& E) {
    const Vector g = grad_J_s(u, s, E);
    const Vector n = constraint_gradient(E.mesh(), u);
    const double nn = n.squaredNorm();
    if (nn == 0.0) return g.norm();
    const double t = g.dot(n) / nn;
    return (g - t * n).norm();
}

Vector fucik_residual_vector(const Vector& u, double a, double b, const NonlocalEnergy& E) {
    const Mesh& mesh = E.mesh();
    const KernelParams& k = E.params();
    Vector r = Vector::Zero(mesh.node_count());
    E.add_h_gradient(u, k.lambda * (1.0 - k.alpha), r);
    add_region_load(mesh, u, k.p, 1.0, false, SignPart::None, r);
    add_region_load(mesh, u, k.p, -a / mesh.spec.epsilon, true, SignPart::Plus, r);
    add_region_load(mesh, u, k.p, b / mesh.spec.epsilon, true, SignPart::Minus, r);
    return r;
}

double fucik_residual(const Vector& u, double a, double b, const NonlocalEnergy& E) {
    return fucik_residual_vector(u, a, b, E).norm();
}

} // namespace fucik
