#pragma once

#include "fucik/kernel.hpp"

namespace fucik {

/// Worst signed violations (positive = violated by that much) over random
/// draws of the four elementary inequalities the curve construction rests on:
///  a) |a-b|^p <= 2^p (|a|^{p-2}a - |b|^{p-2}b)(a-b),
///  b) for U.V <= 0: g(t) = |U-tV|^p + |U-V|^{p-2}(U-V)V|t|^p has g(t) <= g(1),
///  c) seminorm convexity [((1-t)v^p + t u^p)^{1/p}] <= (1-t)[v] + t[u]
///     for nonnegative nodal u, v,
///  d) sign decomposition [u]^p >= [u+]^p + [u-]^p for nodal u.
struct BatteryReport {
    double worst_monotone = -1e300;  // (a)
    double worst_g = -1e300;         // (b)
    double worst_convexity = -1e300; // (c)
    double worst_split = -1e300;     // (d)
    int draws = 0;
    bool ok(double slack = 1e-12) const {
        return worst_monotone <= slack && worst_g <= slack &&
               worst_convexity <= slack && worst_split <= slack;
    }
};

/// Scalar draws for (a)/(b); nodal draws on E's mesh for (c)/(d).
BatteryReport inequality_battery(const NonlocalEnergy& E, int draws, unsigned seed);

} // namespace fucik
