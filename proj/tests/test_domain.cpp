#include <doctest.h>

#include "fucik/domain.hpp"

#include <cmath>

using namespace fucik;

TEST_CASE("1d mesh tiles the interval and tags the collar") {
    DomainSpec spec; // (-1,1), eps = 0.25
    Mesh mesh = build_mesh(spec, 17);

    REQUIRE(mesh.dim == 1);
    CHECK(mesh.omega_measure() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(mesh.collar_measure() == doctest::Approx(2.0 * spec.epsilon).epsilon(1e-12));

    // elements sorted left to right, regions contiguous, measures positive
    double prev = -1e300, total = 0.0;
    for (const auto& e : mesh.elements) {
        const double x0 = mesh.nodes[e.v[0]][0], x1 = mesh.nodes[e.v[1]][0];
        CHECK(x0 < x1);
        CHECK(x0 >= prev - 1e-14);
        prev = x0;
        CHECK(e.measure == doctest::Approx(x1 - x0).epsilon(1e-12));
        if (e.region != Region::Exterior) total += e.measure;
    }
    CHECK(total == doctest::Approx(2.0).epsilon(1e-12));

    // collar boundaries snapped to nodes at +-0.75
    bool found_left = false, found_right = false;
    for (const auto& node : mesh.nodes) {
        if (std::abs(node[0] + 0.75) < 1e-13) found_left = true;
        if (std::abs(node[0] - 0.75) < 1e-13) found_right = true;
    }
    CHECK(found_left);
    CHECK(found_right);

    // collar elements touch the boundary side of Omega
    for (int ei : mesh.collar_elements()) {
        const auto& e = mesh.elements[ei];
        CHECK(e.region == Region::Collar);
        const double mid = 0.5 * (mesh.nodes[e.v[0]][0] + mesh.nodes[e.v[1]][0]);
        CHECK(std::abs(mid) > 0.75);
        CHECK(std::abs(mid) < 1.0);
    }
}

TEST_CASE("mesh construction validates its inputs") {
    DomainSpec spec;
    CHECK_THROWS_AS(build_mesh(spec, 7), ConfigError);

    DomainSpec thin = spec;
    thin.epsilon = 0.001; // collar thinner than one element at this resolution
    CHECK_THROWS_AS(build_mesh(thin, 9), ConfigError);

    DomainSpec bad = spec;
    bad.alpha = 1.5;
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad = spec;
    bad.p = 1.5;
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad = spec;
    bad.epsilon = 1.5;
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad = spec;
    bad.omega_max = {-2.0, 1.0};
    CHECK_THROWS_AS(validate(bad), ConfigError);
}

TEST_CASE("embedding hypothesis failure is a warning, not an error") {
    DomainSpec spec;
    spec.p = 3.0;
    spec.alpha = 0.5; // p * alpha = 1.5 > n = 1
    const auto warnings = validate(spec);
    CHECK(!warnings.empty());
    spec.alpha = 0.3;
    CHECK(validate(spec).empty());
}

TEST_CASE("2d mesh covers the rectangle and grades the exterior") {
    DomainSpec spec;
    spec.dim = 2;
    Mesh mesh = build_mesh(spec, 9);
    REQUIRE(mesh.dim == 2);
    CHECK(mesh.omega_measure() == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(mesh.collar_measure() ==
          doctest::Approx(4.0 - 1.5 * 1.5).epsilon(1e-10));

    double exterior = 0.0;
    for (const auto& e : mesh.elements)
        if (e.region == Region::Exterior) exterior += e.measure;
    const double R = spec.radius();
    CHECK(exterior == doctest::Approx(4.0 * R * R - 4.0).epsilon(1e-8));
}
