#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace fucik {

/// Error in problem setup (bad parameters, unusable resolution, ...).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Region { Interior, Collar, Exterior };

/// Computational geometry: Omega, the boundary collar of width epsilon,
/// and the exterior truncation box of half-width truncation_radius.
struct DomainSpec {
    int dim = 1;                                 // 1 or 2
    std::array<double, 2> omega_min{-1.0, -1.0}; // interval / rectangle corners
    std::array<double, 2> omega_max{1.0, 1.0};
    double epsilon = 0.25;   // collar width, in (0,1)
    double alpha = 0.5;      // fractional order, in (0,1)
    double p = 2.0;          // exponent, >= 2
    double truncation_radius = 0.0; // 0 -> default 4*diameter(Omega)

    double diameter() const;
    /// Effective truncation radius (default applied).
    double radius() const;
};

/// Hard-validates the spec (throws ConfigError) and returns soft warnings,
/// e.g. when the embedding hypothesis n > p*alpha fails.
std::vector<std::string> validate(const DomainSpec& spec);

struct Mesh {
    struct Element {
        std::array<int, 3> v{-1, -1, -1}; // 1D: v[0],v[1]; 2D: triangle
        Region region = Region::Interior;
        double measure = 0.0;
    };

    int dim = 1;
    DomainSpec spec;
    std::vector<std::array<double, 2>> nodes; // 1D uses x-coordinate only
    std::vector<Element> elements;            // 1D elements sorted left-to-right

    int node_count() const { return static_cast<int>(nodes.size()); }
    int element_count() const { return static_cast<int>(elements.size()); }

    double omega_measure() const;  // interior + collar
    double collar_measure() const;
    bool in_omega(int elem) const { return elements[elem].region != Region::Exterior; }

    /// Indices of collar elements (used for constraint sub-regions).
    std::vector<int> collar_elements() const;
};

/// Builds a region-tagged mesh. `resolution` is the node count per axis
/// across Omega; collar boundaries are snapped to mesh nodes and the
/// exterior is graded geometrically out to the truncation box.
Mesh build_mesh(const DomainSpec& spec, int resolution);

} // namespace fucik
