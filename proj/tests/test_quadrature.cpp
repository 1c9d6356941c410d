#include <doctest.h>

#include "fucik/quadrature.hpp"

#include <cmath>

using namespace fucik;

namespace {

// brute-force reference on [0,1]
template <typename F>
double riemann(F f, int n = 200000) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += f((i + 0.5) / n);
    return s / n;
}

} // namespace

TEST_CASE("gauss rules integrate polynomials exactly") {
    for (int order : {2, 4, 6, 10}) {
        const GaussRule& g = gauss_rule(order);
        REQUIRE(static_cast<int>(g.x.size()) == order);
        for (int deg = 0; deg <= 2 * order - 1; ++deg) {
            double s = 0.0;
            for (std::size_t k = 0; k < g.x.size(); ++k)
                s += g.w[k] * std::pow(g.x[k], deg);
            CHECK(s == doctest::Approx(1.0 / (deg + 1)).epsilon(1e-13));
        }
    }
}

TEST_CASE("power integrals of a linear function match brute force") {
    const double cases[][3] = {
        {1.0, 2.0, 2.0},  {-1.0, 2.0, 2.0},  {2.0, -3.0, 2.5},
        {-1.0, -2.0, 3.0}, {0.0, 1.0, 2.2},  {-0.7, 0.3, 4.0},
    };
    for (const auto& c : cases) {
        const double a = c[0], b = c[1], p = c[2];
        auto u = [&](double t) { return a + (b - a) * t; };
        CHECK(int_abs_pow(a, b, p) ==
              doctest::Approx(riemann([&](double t) { return std::pow(std::abs(u(t)), p); }))
                  .epsilon(1e-6));
        CHECK(int_pos_pow(a, b, p) ==
              doctest::Approx(riemann([&](double t) { return std::pow(std::max(u(t), 0.0), p); }))
                  .epsilon(1e-6));
        CHECK(int_neg_pow(a, b, p) ==
              doctest::Approx(riemann([&](double t) { return std::pow(std::max(-u(t), 0.0), p); }))
                  .epsilon(1e-6));

        // decomposition |u|^p = (u^+)^p + (u^-)^p
        CHECK(int_abs_pow(a, b, p) ==
              doctest::Approx(int_pos_pow(a, b, p) + int_neg_pow(a, b, p)).epsilon(1e-12));
    }
}

TEST_CASE("weak-form loads match brute force across a sign change") {
    const double a = -1.0, b = 2.0, p = 2.5;
    auto u = [&](double t) { return a + (b - a) * t; };
    double l0, l1;

    load_signed_pow(a, b, p, l0, l1);
    auto fs = [&](double t) {
        const double v = u(t);
        return std::pow(std::abs(v), p - 2.0) * v;
    };
    CHECK(l0 == doctest::Approx(riemann([&](double t) { return fs(t) * (1 - t); })).epsilon(1e-6));
    CHECK(l1 == doctest::Approx(riemann([&](double t) { return fs(t) * t; })).epsilon(1e-6));

    load_pos_pow(a, b, p, l0, l1);
    auto fp = [&](double t) { return std::pow(std::max(u(t), 0.0), p - 1.0); };
    CHECK(l0 == doctest::Approx(riemann([&](double t) { return fp(t) * (1 - t); })).epsilon(1e-6));
    CHECK(l1 == doctest::Approx(riemann([&](double t) { return fp(t) * t; })).epsilon(1e-6));

    load_neg_pow(a, b, p, l0, l1);
    auto fn = [&](double t) { return std::pow(std::max(-u(t), 0.0), p - 1.0); };
    CHECK(l0 == doctest::Approx(riemann([&](double t) { return fn(t) * (1 - t); })).epsilon(1e-6));
    CHECK(l1 == doctest::Approx(riemann([&](double t) { return fn(t) * t; })).epsilon(1e-6));
}
