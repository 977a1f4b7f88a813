#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "crysta/pseudocomplex.hpp"
#include "crysta/smith.hpp"

namespace crysta {

/// Integral homology of the pseudocomplex: Betti numbers and torsion
/// coefficients per dimension, from integer normal forms of the five
/// boundary matrices.
struct HomologyProfile {
    std::array<int, 5> betti{};
    std::array<std::vector<int64_t>, 5> torsion;

    bool torsion_free() const {
        for (const auto& t : torsion)
            if (!t.empty()) return false;
        return true;
    }
};

/// Boundary matrix of dimension d: rows are (d-1)-simplices, columns d-simplices.
IntMatrix boundary_matrix(const Pseudocomplex& k, int dim);

HomologyProfile homology(const Pseudocomplex& k);

}  // namespace crysta
