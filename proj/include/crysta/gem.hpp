#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "crysta/color_set.hpp"
#include "crysta/errors.hpp"

namespace crysta {

using Vertex = int;

/// Candidate gem prior to validation: an order and five vertex-pairing maps.
struct RawGem {
    int order = 0;
    std::array<std::vector<Vertex>, kNumColors> pairing;  // pairing[c][v] = color-c partner of v
};

/// Connected components of a color-restricted subgraph.
struct ResidueComponents {
    int count = 0;
    std::vector<int> component_of;               // vertex -> component index
    std::vector<std::vector<Vertex>> members;    // component index -> sorted vertices
};

/// All residue counts of a gem: g for every 2-, 3- and 4-element color set,
/// with the component partitions cached for reuse.
class ResidueTable {
public:
    int g(ColorSet cs) const { return counts_[cs.mask()]; }
    const ResidueComponents& components(ColorSet cs) const { return parts_[cs.mask()]; }
    int sum_pairs() const;
    int sum_triples() const;
    int sum_hats() const;

private:
    friend class Gem;
    std::array<int, 32> counts_{};
    std::array<ResidueComponents, 32> parts_{};
};

/// Two-coloring of the vertices, or an odd-cycle witness when none exists.
/// Class 0 ("A") is the class containing vertex 0.
struct Bipartition {
    bool bipartite = false;
    std::vector<int8_t> side;        // valid when bipartite
    std::vector<Vertex> odd_cycle;   // witness cycle when not bipartite
};

/// A 5-colored gem: five fixed-point-free involutions on an even vertex set,
/// connected as a multigraph. Immutable after construction; all operations
/// are pure functions of the value, so gems are safe to share across threads.
class Gem {
public:
    /// Checks every invariant and returns the gem, or throws GemError
    /// (odd_order, fixed_point, not_involution, disconnected).
    static Gem validate(const RawGem& raw);

    /// Trusted construction for internal producers; asserts in debug builds.
    static Gem unchecked(RawGem raw);

    /// Parse the gem file format (see serialize for the emitted shape).
    static Gem parse(const std::string& text);
    static Gem parse_file(const std::string& path);

    /// Normalized text form:
    ///   gem v1
    ///   order <2p>
    ///   <c>: a0-b0 a1-b1 ...     (a<b, ascending by a, one line per color 0..4)
    std::string serialize() const;

    int order() const { return order_; }
    int pairs() const { return order_ / 2; }
    Vertex partner(int color, Vertex v) const { return inv_[color][v]; }
    const std::array<std::vector<Vertex>, kNumColors>& involutions() const { return inv_; }

    /// Component partition of the subgraph restricted to the given colors.
    /// Union-find based; accepts any color set (an empty set yields singletons).
    ResidueComponents residues(ColorSet colors) const;

    ResidueTable residue_table() const;

    /// True iff every 4-color residue is connected.
    bool is_contracted() const;

    Bipartition bipartition() const;

    friend bool operator==(const Gem& a, const Gem& b) {
        return a.order_ == b.order_ && a.inv_ == b.inv_;
    }

private:
    Gem(int order, std::array<std::vector<Vertex>, kNumColors> inv)
        : order_(order), inv_(std::move(inv)) {}

    int order_;
    std::array<std::vector<Vertex>, kNumColors> inv_;
};

/// Two-coloring of an arbitrary multigraph given as adjacency lists.
/// Used directly by tests on raw (non-gem) graphs.
Bipartition bipartition_of(int order, const std::vector<std::vector<Vertex>>& adj);

/// The unique order-2 gem (five parallel edges between two vertices).
Gem standard_sphere_gem();

}  // namespace crysta
