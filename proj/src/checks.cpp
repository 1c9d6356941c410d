#include "fucik/checks.hpp"

#include <cmath>
#include <random>

namespace fucik {

namespace {

double pm(double v, double p) { return std::pow(std::abs(v), p - 2.0) * v; }

} // namespace

BatteryReport inequality_battery(const NonlocalEnergy& E, int draws, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const int n = E.size();
    const double p_mesh = E.params().p;

    BatteryReport rep;
    rep.draws = draws;
    for (int k = 0; k < draws; ++k) {
        const double p = 2.0 + 2.0 * uni(rng);

        // (a) 2^p monotonicity
        {
            const double a = 3.0 * gauss(rng), b = 3.0 * gauss(rng);
            const double lhs = std::pow(std::abs(a - b), p);
            const double rhs = std::pow(2.0, p) * (pm(a, p) - pm(b, p)) * (a - b);
            rep.worst_monotone = std::max(rep.worst_monotone,
                                          lhs - rhs); // absolute slack
        }
        // (b) g(t) <= g(1) for U.V <= 0
        {
            const double U = 2.0 * gauss(rng);
            const double V = -std::copysign(std::abs(2.0 * gauss(rng)), U);
            const double t = -2.0 + 4.0 * uni(rng);
            const double head = pm(U - V, p) * V;
            const double g = std::pow(std::abs(U - t * V), p) +
                             head * std::pow(std::abs(t), p);
            const double g1 = pm(U - V, p) * U;
            rep.worst_g = std::max(rep.worst_g, g - g1);
        }
        // (c) seminorm convexity along the p-geodesic
        {
            Vector u(n), v(n);
            for (int i = 0; i < n; ++i) {
                u[i] = uni(rng);
                v[i] = uni(rng);
            }
            const double su = std::pow(E.seminorm_p(u), 1.0 / p_mesh);
            const double sv = std::pow(E.seminorm_p(v), 1.0 / p_mesh);
            const double t = 0.25 * (k % 5);
            Vector sig(n);
            for (int i = 0; i < n; ++i)
                sig[i] = std::pow((1.0 - t) * std::pow(v[i], p_mesh) +
                                      t * std::pow(u[i], p_mesh),
                                  1.0 / p_mesh);
            const double ss = std::pow(E.seminorm_p(sig), 1.0 / p_mesh);
            rep.worst_convexity =
                std::max(rep.worst_convexity, ss - ((1.0 - t) * sv + t * su));
        }
        // (d) sign decomposition of the seminorm
        {
            Vector u(n);
            for (int i = 0; i < n; ++i) u[i] = gauss(rng);
            const double full = E.seminorm_p(u);
            const double split = E.seminorm_p(u, SignPart::Plus) +
                                 E.seminorm_p(u, SignPart::Minus);
            rep.worst_split = std::max(rep.worst_split,
                                       (split - full) / (1.0 + std::abs(full)));
        }
    }
    return rep;
}

} // namespace fucik
