#pragma once

#include "fucik/domain.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fucik {

inline constexpr const char* kVersion = "1.0.0";

/// One reproducible run: geometry, discretization, solver knobs, outputs.
struct RunConfig {
    DomainSpec domain;
    int resolution = 401;
    double rel_tol = 1e-6;
    double grad_tol = 1e-6;
    int path_samples = 41;
    int max_sweeps = 4000;
    std::vector<double> s_grid;     // default filled by normalize()
    std::vector<double> alpha_list; // default filled by normalize()
    std::string nonlinearity = "linear_arctan"; // catalog name
    double nl_c = 0.0;   // 0 -> lambda1 of the run (resolved late)
    double nl_amp = 0.1;
    double nl_a = 0.0, nl_b = 0.0;
    std::string output_dir = ".";
    unsigned seed = 1;
    int threads = 1;

    void normalize(); // fills defaulted lists, validates ranges
};

/// Parses "key = value" lines ('#' comments, blank lines ignored).
RunConfig parse_config(std::istream& in);
RunConfig parse_config_file(const std::string& path);

/// Applies one "key=value" override (same keys as the file).
void apply_override(RunConfig& cfg, const std::string& key, const std::string& value);

/// Canonical serialization (sorted fixed key order) used for hashing.
std::string canonical_text(const RunConfig& cfg);

/// FNV-1a over the canonical text; stamped into every output header.
std::uint64_t config_hash(const RunConfig& cfg);

} // namespace fucik
