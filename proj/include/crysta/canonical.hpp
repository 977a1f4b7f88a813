#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "crysta/gem.hpp"

namespace crysta {

/// Symmetry group used when deciding whether two gems are the same:
///   vertex                  — relabelings preserving the bipartition class of vertex 0
///   vertex_color            — + permutations of the five colors
///   vertex_color_reflection — + bipartition class swap (orientation reversal)
/// For non-bipartite gems the class restriction is vacuous and all three
/// groups allow every relabeling.
enum class SymmetryGroup : uint8_t {
    vertex = 0,
    vertex_color = 1,
    vertex_color_reflection = 2,
};

SymmetryGroup symmetry_group_from_string(const std::string& s);  // "v" | "vc" | "vcr"
const char* to_string(SymmetryGroup g);

/// Byte string identifying a gem up to the chosen symmetry group:
/// equal forms <=> isomorphic gems. Layout: version byte, group byte,
/// order as big-endian u16, then the minimal traversal code (one byte
/// per traversal step).
struct CanonicalForm {
    std::vector<uint8_t> bytes;

    std::string hex() const;
    friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
    friend auto operator<=>(const CanonicalForm& a, const CanonicalForm& b) {
        return a.bytes <=> b.bytes;
    }
};

/// Minimal traversal code over all (start vertex, color permutation) seeds
/// admitted by the group. Deterministic across runs and platforms.
/// Supports order <= 255 (throws resource_limit beyond).
CanonicalForm canonical_form(const Gem& g, SymmetryGroup group);

}  // namespace crysta
