#pragma once

#include "fucik/config.hpp"
#include "fucik/limits.hpp"
#include "fucik/spectrum.hpp"

#include <iosfwd>

namespace fucik {

/// "# config <hex hash> version <semver>" — first line of every output file.
void write_header(std::ostream& os, std::uint64_t hash);

/// "s, c_s, a, b, converged" rows for the recorded points.
void write_curve_csv(std::ostream& os, const FucikCurve& curve, std::uint64_t hash);

/// "alpha, epsilon, lambda1, lambda1_target, rel_err, lambda2, lambda2_target,
/// rel_err" rows.
void write_limit_csv(std::ostream& os, const std::vector<LimitRow>& table,
                     std::uint64_t hash);

/// Standalone SVG 1.1, 800x600: both curve branches, the diagonal and the
/// trivial lines through (lambda1, lambda1).
void write_curve_svg(std::ostream& os, const FucikCurve& curve, std::uint64_t hash);

} // namespace fucik
