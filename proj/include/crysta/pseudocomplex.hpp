#pragma once

#include <array>
#include <optional>
#include <vector>

#include "crysta/gem.hpp"

namespace crysta {

/// A d-simplex of the dual pseudocomplex: its vertex-label set (d+1 labels)
/// and the gem residue it corresponds to, identified by any member vertex.
struct Simplex {
    ColorSet labels;
    int residue_index = 0;  // component index within colors = labels.complement()
    Vertex rep = 0;         // smallest gem vertex of that residue
};

struct FacetRef {
    int index;  // into the (d-1)-layer
    int sign;   // +1 / -1
};

/// Face poset of the pseudocomplex dual to a gem. Simplices with label set L
/// biject with the residues of the complementary colors; facets drop one
/// label, with signs alternating by the position of the dropped label.
class Pseudocomplex {
public:
    const std::vector<Simplex>& simplices(int dim) const { return layers_[dim]; }
    const std::vector<std::vector<FacetRef>>& boundaries(int dim) const { return bnd_[dim]; }

    std::array<int, 5> face_vector() const;

    /// Index in layer |labels|-1 of the simplex for the residue containing `member`.
    int simplex_index(ColorSet labels, Vertex member) const;

    /// Edge multiplicity matrix of the 1-skeleton (square over the 0-simplices).
    std::vector<std::vector<int>> one_skeleton_multiplicity() const;

private:
    friend Pseudocomplex build_complex(const Gem& g);
    std::array<std::vector<Simplex>, 5> layers_;
    std::array<std::vector<std::vector<FacetRef>>, 5> bnd_;  // bnd_[0] unused
    std::array<std::vector<int>, 32> comp_of_;     // by label mask: vertex -> component
    std::array<std::vector<int>, 32> simplex_id_;  // by label mask: component -> layer index
};

Pseudocomplex build_complex(const Gem& g);

/// Simplicity certificate: simple iff all ten 3-color residue counts are 1.
struct SimplicityCertificate {
    bool simple = false;
    std::optional<ColorSet> witness;                   // a triple with count >= 2
    std::vector<std::pair<ColorSet, int>> triples;     // all ten counts
};

/// Throws not_contracted when some 4-color residue is disconnected.
SimplicityCertificate is_simple(const Gem& g);

}  // namespace crysta
