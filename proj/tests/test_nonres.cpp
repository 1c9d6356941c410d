#include <doctest.h>

#include "fucik/nonres.hpp"
#include "fucik/spectrum.hpp"

#include <cmath>
#include <random>

using namespace fucik;

namespace {

struct Fixture {
    Mesh mesh;
    NonlocalEnergy E;
    double l1 = 0.0;
    explicit Fixture(int res = 41, double alpha = 0.4) {
        DomainSpec spec;
        spec.alpha = alpha;
        mesh = build_mesh(spec, res);
        E = NonlocalEnergy::assemble(mesh, KernelParams::from(spec));
        l1 = lambda1(E).value;
    }
};

} // namespace

TEST_CASE("nonlinearity catalog: slopes, primitives, derivatives") {
    const Nonlinearity lin = Nonlinearity::linear(2.0);
    const Nonlinearity at = Nonlinearity::linear_arctan(1.0, 0.1);
    const Nonlinearity pw = Nonlinearity::piecewise_linear(2.0, 3.0);

    CHECK(lin.f(1.5) == doctest::Approx(3.0));
    CHECK(lin.F(1.5) == doctest::Approx(2.25));
    CHECK(pw.f(2.0) == doctest::Approx(4.0));
    CHECK(pw.f(-2.0) == doctest::Approx(-6.0));

    for (const Nonlinearity& f : {lin, at, pw}) {
        CHECK(f.F(0.0) == 0.0);
        for (double s : {-1.7, -0.3, 0.4, 2.2}) {
            const double h = 1e-6;
            CHECK((f.F(s + h) - f.F(s - h)) / (2 * h) ==
                  doctest::Approx(f.f(s)).epsilon(1e-6));
            if (f.kind != Nonlinearity::Kind::PiecewiseLinear)
                CHECK((f.f(s + h) - f.f(s - h)) / (2 * h) ==
                      doctest::Approx(f.fprime(s)).epsilon(1e-5));
        }
    }
}

TEST_CASE("weighted first eigenvalue") {
    Fixture fx;
    const int n = fx.E.size();
    const Vector at_l1 = Vector::Constant(n, fx.l1);

    CHECK(weighted_lambda1(at_l1, fx.E) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(weighted_lambda1(Vector(2.0 * at_l1), fx.E) ==
          doctest::Approx(0.5).epsilon(1e-10));

    // increasing the weight anywhere on the collar strictly lowers the value
    Vector bumped = at_l1;
    for (int i = 0; i < n; ++i)
        if (fx.mesh.nodes[i][0] > 0.75) bumped[i] *= 1.5;
    const double w = weighted_lambda1(bumped, fx.E);
    CHECK(w < 1.0 - 1e-6);
    CHECK(w > weighted_lambda1(Vector(1.5 * at_l1), fx.E) - 1e-12);

    CHECK_THROWS_AS(weighted_lambda1(Vector::Zero(n), fx.E), ConfigError);
    CHECK_THROWS_AS(weighted_lambda1(Vector::Ones(3), fx.E), MeshMismatch);
}

TEST_CASE("energy of the semilinear problem") {
    Fixture fx;
    const int n = fx.E.size();
    std::mt19937 rng(5);
    std::normal_distribution<double> g(0.0, 1.0);
    Vector u(n), v(n);
    for (int i = 0; i < n; ++i) {
        u[i] = g(rng);
        v[i] = g(rng);
    }

    // F = 0: the energy is a positive quadratic form
    const Nonlinearity zero = Nonlinearity::linear(0.0);
    CHECK(psi(u, zero, fx.E) > 0.0);
    CHECK(psi(Vector(Vector::Zero(n)), zero, fx.E) == 0.0);

    // gradient against central differences for the arctan entry
    const Nonlinearity f = Nonlinearity::linear_arctan(fx.l1, 0.1);
    const double h = 1e-5;
    const double fd = (psi(u + h * v, f, fx.E) - psi(u - h * v, f, fx.E)) / (2 * h);
    CHECK(grad_psi(u, f, fx.E).dot(v) == doctest::Approx(fd).epsilon(1e-6));

    // f(s) = l1 s: phi1 is a zero-energy critical point
    const Nonlinearity res = Nonlinearity::linear(fx.l1);
    const Vector phi1 = lambda1(fx.E).function;
    CHECK(std::abs(psi(phi1, res, fx.E)) < 1e-10);
    CHECK(grad_psi(phi1, res, fx.E).norm() < 1e-8);

    // odd f makes the energy even
    CHECK(psi(Vector(-u), f, fx.E) == doctest::Approx(psi(u, f, fx.E)).epsilon(1e-12));
}

TEST_CASE("mountain pass for the perturbed resonant problem") {
    Fixture fx;
    const Nonlinearity f = Nonlinearity::linear_arctan(fx.l1, 0.1);
    NonresSolution sol = solve_041(f, fx.E, 21);
    CHECK(sol.converged);
    CHECK(sol.residual < 1e-6);
    CHECK(std::isfinite(sol.psi_value));
    CHECK(sol.endpoint_scale >= 1.0);
}

TEST_CASE("residual floor of the weighted search tells lines from gaps") {
    Fixture fx(41, 0.4);
    const int n = fx.E.size();

    // on the trivial line a = b = l1 the residual floor is numerically zero
    const Vector line = Vector::Constant(n, fx.l1);
    TrivialSearchReport on = only_trivial_check(line, line, fx.E, 6);
    CHECK(on.min_residual < 1e-8);
    CHECK(on.starts == 6);

    // strictly between the trivial lines and the first curve nothing solves
    const double l2 = lambda2_dense(fx.E).value;
    const double mid = 0.5 * (fx.l1 + l2);
    const Vector gap = Vector::Constant(n, mid);
    TrivialSearchReport off = only_trivial_check(gap, gap, fx.E, 6);
    CHECK(off.min_residual > 1e-4);
}
