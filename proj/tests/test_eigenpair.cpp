#include <doctest.h>

#include "fucik/eigenpair.hpp"

#include <cmath>

using namespace fucik;

namespace {

struct Fixture {
    Mesh mesh;
    NonlocalEnergy E;
    explicit Fixture(double p, double alpha, int res) {
        DomainSpec spec;
        spec.alpha = alpha;
        spec.p = p;
        mesh = build_mesh(spec, res);
        E = NonlocalEnergy::assemble(mesh, KernelParams::from(spec));
    }
};

std::vector<int> half_collar(const Mesh& mesh) {
    std::vector<int> out;
    for (int ei : mesh.collar_elements()) {
        const auto& e = mesh.elements[ei];
        if (0.5 * (mesh.nodes[e.v[0]][0] + mesh.nodes[e.v[1]][0]) > 0.0)
            out.push_back(ei);
    }
    return out;
}

} // namespace

TEST_CASE("first eigenpair: two algorithms agree (p = 2)") {
    Fixture fx(2.0, 0.4, 61);
    EigenResult pencil = lambda1(fx.E);
    EigenResult descent = lambda1_descent(fx.E);
    CHECK(std::abs(pencil.value - descent.value) <= 1e-6 * pencil.value);
    CHECK(pencil.residual < 1e-7);
    CHECK(descent.residual < 1e-6);
    CHECK(pencil.gap > 0.0);
    // eigenfunction lives on S and does not change sign
    CHECK(constraint_value(fx.mesh, pencil.function) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(pencil.function.minCoeff() >= -1e-10);
    CHECK(descent.function.minCoeff() >= -1e-10);
}

TEST_CASE("first eigenpair for p = 3 is stationary and positive") {
    Fixture fx(3.0, 0.3, 33);
    EigenResult r = lambda1(fx.E);
    CHECK(r.value > 0.0);
    CHECK(r.residual < 1e-7);
    CHECK(r.function.minCoeff() >= -1e-10);
    CHECK(constraint_value(fx.mesh, r.function) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(J_s(r.function, 0.0, fx.E) == doctest::Approx(r.value).epsilon(1e-10));
}

TEST_CASE("constraint sub-regions only raise the first eigenvalue") {
    for (double p : {2.0, 3.0}) {
        Fixture fx(p, 0.3, 33);
        EigenResult full = lambda1(fx.E);

        // the full collar reproduces lambda1
        EigenResult same = lambda1_subset(fx.E, fx.mesh.collar_elements());
        CHECK(same.value == doctest::Approx(full.value).epsilon(1e-8));

        // half the collar gives a strictly larger value
        EigenResult half = lambda1_subset(fx.E, half_collar(fx.mesh));
        CHECK(half.value > full.value + 1e-6);
    }
}

TEST_CASE("second eigenvalue: simple gap and sign change on the collar") {
    Fixture fx(2.0, 0.4, 61);
    EigenResult l1 = lambda1(fx.E);
    EigenResult l2 = lambda2_dense(fx.E);
    CHECK(l2.value > l1.value + 1e-6);
    CHECK(l2.residual < 1e-7);

    // restricted to the collar the second eigenfunction changes sign
    double lo = 1e300, hi = -1e300;
    for (int ei : fx.mesh.collar_elements())
        for (int k = 0; k < 2; ++k) {
            const double v = l2.function[fx.mesh.elements[ei].v[k]];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    CHECK(lo < -1e-3);
    CHECK(hi > 1e-3);
}

TEST_CASE("first eigenvalue is stable under refinement") {
    Fixture coarse(2.0, 0.4, 41), fine(2.0, 0.4, 81);
    const double a = lambda1(coarse.E).value, b = lambda1(fine.E).value;
    CHECK(std::abs(a - b) / b < 5e-3);
}
