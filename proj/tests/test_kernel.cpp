#include <doctest.h>

#include "fucik/kernel.hpp"

#include <cmath>
#include <random>

using namespace fucik;

namespace {

NonlocalEnergy make_energy(double alpha, double p, int res, int dim = 1,
                           double eps = 0.25) {
    DomainSpec spec;
    spec.dim = dim;
    spec.alpha = alpha;
    spec.p = p;
    spec.epsilon = eps;
    static std::vector<Mesh> keep; // meshes must outlive the energies
    keep.push_back(build_mesh(spec, res));
    return NonlocalEnergy::assemble(keep.back(), KernelParams::from(spec));
}

Vector random_vector(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Vector u(n);
    for (int i = 0; i < n; ++i) u[i] = g(rng);
    return u;
}

} // namespace

TEST_CASE("normalization constant") {
    CHECK(std::abs(lambda_np(1, 2.0) - 1.0) < 1e-12);
    CHECK(std::abs(lambda_np(2, 2.0) - 2.0 / M_PI) < 1e-12);
    // n = 1, general p: p Gamma((1+p)/2) / (2 Gamma((p+1)/2)) = p/2
    CHECK(std::abs(lambda_np(1, 3.0) - 1.5) < 1e-12);
    CHECK(std::abs(lambda_np(1, 4.0) - 2.0) < 1e-12);
}

TEST_CASE("seminorm basics") {
    NonlocalEnergy E = make_energy(0.4, 2.0, 33);
    const int n = E.size();

    CHECK(E.seminorm_p(Vector::Zero(n)) == 0.0);

    const Vector u = random_vector(n, 11);
    const double base = E.seminorm_p(u);
    CHECK(base > 0.0);

    // p-homogeneity
    CHECK(E.seminorm_p(Vector(2.5 * u)) == doctest::Approx(std::pow(2.5, 2.0) * base).epsilon(1e-12));

    // sign decomposition never exceeds the full seminorm
    const double split =
        E.seminorm_p(u, SignPart::Plus) + E.seminorm_p(u, SignPart::Minus);
    CHECK(split <= base + 1e-12 * (1.0 + base));

    // the Omega-only pair set is a subset of Q
    CHECK(E.seminorm_p(u, SignPart::None, PairSet::OmegaOnly) <= base + 1e-14);

    // mapped evaluation with the identity reproduces the seminorm
    CHECK(E.seminorm_mapped(u, [](double v) { return v; }) ==
          doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("gateaux derivative of the seminorm") {
    for (double p : {2.0, 3.0}) {
        NonlocalEnergy E = make_energy(0.3, p, 25);
        const int n = E.size();
        const Vector u = random_vector(n, 3), v = random_vector(n, 4);

        // symmetry of H in the p = 2 case: H(u,v) = v^T A u
        if (p == 2.0) {
            CHECK(E.gateaux(u, v) == doctest::Approx(E.gateaux(v, u)).epsilon(1e-10));
            CHECK(E.gateaux(u, v) ==
                  doctest::Approx(v.dot(E.matrix() * u)).epsilon(1e-10));
        }

        // p H(u, v) is the directional derivative of the seminorm
        const double h = 1e-6;
        const double fd =
            (E.seminorm_p(u + h * v) - E.seminorm_p(u - h * v)) / (2 * h);
        CHECK(p * E.gateaux(u, v) == doctest::Approx(fd).epsilon(1e-5));

        // accumulated weak gradient agrees with gateaux against basis vectors
        Vector g = Vector::Zero(n);
        E.add_h_gradient(u, 1.0, g);
        CHECK(g.dot(v) == doctest::Approx(E.gateaux(u, v)).epsilon(1e-10));
    }
}

TEST_CASE("scaled energy approaches the local gradient energy") {
    DomainSpec spec;
    spec.alpha = 0.9;
    spec.p = 2.0;
    Mesh mesh = build_mesh(spec, 201);
    Vector u(mesh.node_count());
    for (int i = 0; i < mesh.node_count(); ++i) u[i] = mesh.nodes[i][0];

    // u = x: closed form of the Omega x Omega double integral
    auto closed_form = [](double alpha) {
        const double beta = 1.0 - 2.0 * alpha;
        return (1.0 - alpha) * lambda_np(1, 2.0) * 2.0 *
               std::pow(2.0, beta + 2.0) / ((beta + 1.0) * (beta + 2.0));
    };

    const std::vector<double> alphas = {0.9, 0.95, 0.99};
    const auto scaled = bbm_sequence(mesh, u, 2.0, alphas);
    REQUIRE(scaled.size() == alphas.size());
    for (std::size_t i = 0; i < alphas.size(); ++i)
        CHECK(scaled[i] == doctest::Approx(closed_form(alphas[i])).epsilon(5e-3));

    // local target for u = x on (-1,1) is 2; the sequence trends toward it
    const double target = local_gradient_energy(mesh, u, 2.0);
    CHECK(target == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(std::abs(scaled[2] - target) < std::abs(scaled[0] - target));
}

TEST_CASE("2d assembly sanity") {
    NonlocalEnergy E = make_energy(0.4, 2.0, /*res*/ 9, /*dim*/ 2);
    // constant function has zero seminorm (up to quadrature roundoff)
    CHECK(std::abs(E.seminorm_p(Vector::Ones(E.size()))) < 1e-8);

    const Vector u = random_vector(E.size(), 5), v = random_vector(E.size(), 6);
    CHECK(E.gateaux(u, v) == doctest::Approx(E.gateaux(v, u)).epsilon(1e-10));
    CHECK(E.seminorm_p(u) > 0.0);
    const double split =
        E.seminorm_p(u, SignPart::Plus) + E.seminorm_p(u, SignPart::Minus);
    CHECK(split <= E.seminorm_p(u) + 1e-10);
}
