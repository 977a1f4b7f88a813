#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "crysta/gem.hpp"
#include "crysta/homology.hpp"
#include "crysta/pseudocomplex.hpp"

namespace crysta {

/// Cyclic arrangement of the five colors with last entry 4, considered up to
/// rotation and reversal; reversal is normalized by seq[0] < seq[3]. There
/// are exactly 12 classes.
struct CyclicPermutation {
    std::array<int, 5> seq;

    /// Digit string of the full arrangement, e.g. "01234".
    std::string name() const {
        std::string s;
        for (int c : seq) s.push_back(char('0' + c));
        return s;
    }
};

std::vector<CyclicPermutation> cyclic_permutation_classes();

/// Regular genus per cyclic-permutation class plus the minimum over classes.
struct GenusSpectrum {
    std::vector<std::pair<CyclicPermutation, int>> rho;  // 12 entries
    int min_rho = 0;

    bool constant() const {
        for (const auto& [eps, r] : rho)
            if (r != rho.front().second) return false;
        return true;
    }
};

/// Computes the genus of the regular embedding for each of the 12 classes:
/// the five cyclically-adjacent pair counts determine it exactly.
/// Throws non_bipartite for non-bipartite gems and odd_genus_value when the
/// count sum has the wrong parity (which signals a non-gem input).
GenusSpectrum genus_spectrum(const Gem& g);
GenusSpectrum genus_spectrum(const ResidueTable& table, int order, bool bipartite);

/// Closed formula: -3p + sum g_ij - sum g_ijk + sum g_hat.
int euler_characteristic(const Gem& g);
int euler_characteristic(const ResidueTable& table, int order);

/// Per-triple check of 2*g_ijk == g_ij + g_ik + g_jk - p. Failure is a
/// report (the input does not represent a manifold), never an exception.
struct TripleCheck {
    ColorSet triple;
    long lhs = 0, rhs = 0;
    bool pass = false;
};
std::vector<TripleCheck> check_relation_d(const Gem& g);
std::vector<TripleCheck> check_relation_d(const ResidueTable& table, int order);

/// Per-component surface check of every 3-color residue: a component with 2m
/// vertices is a sphere iff its internal bicolored-cycle count minus m is 2.
struct SphereComponent {
    int size = 0;  // 2m
    int chi = 0;
    bool sphere = false;
};
struct SphereCheck {
    ColorSet triple;
    std::vector<SphereComponent> components;
    bool all_spheres = true;
};
std::vector<SphereCheck> check_sphere_3residues(const Gem& g);

/// Handle counts induced by the partition {{i,j,k},{r,s}}: one 0-handle,
/// g_rs - 1 2-handles, one 4-handle. Requires a simple crystallization;
/// verifies the 2-handle count against the second Betti number.
struct HandleSummary {
    ColorSet rs;
    int h0 = 1, h2 = 0, h4 = 1;
};
HandleSummary handle_summary(const Gem& g, ColorSet rs);

/// Gem-complexity bounds: p-1 is always an upper bound for a contracted gem;
/// for a simple crystallization the exact value 3*beta_2 = p-1 is certified.
struct ComplexityBounds {
    int upper = 0;
    std::optional<int> exact;
};
ComplexityBounds complexity_bounds(const Gem& g);

struct IdentityCheck {
    std::string name;
    bool applicable = false;
    bool pass = true;  // vacuously true when not applicable
    long lhs = 0, rhs = 0;
    std::string detail;
};

/// Everything the toolkit can say about one gem, internally cross-checked.
struct InvariantReport {
    int order = 0;
    bool bipartite = false;
    bool contracted = false;
    ResidueTable residues;
    int chi = 0;        // closed formula
    int chi_faces = 0;  // alternating face-vector sum
    std::array<int, 5> face_vector{};
    std::optional<GenusSpectrum> genus;  // bipartite gems only
    HomologyProfile homology;
    std::vector<TripleCheck> relation_d;
    std::vector<SphereCheck> spheres;
    std::optional<SimplicityCertificate> simplicity;  // contracted gems only
    std::vector<HandleSummary> handles;               // simple gems: all 10 partitions
    std::optional<ComplexityBounds> complexity;       // contracted gems only
    std::vector<IdentityCheck> checks;

    int beta2() const { return homology.betti[2]; }
    bool relation_d_all_pass() const;
    bool spheres_all_pass() const;
    bool is_simple_gem() const { return simplicity && simplicity->simple; }
    bool all_checks_pass() const;
};

InvariantReport invariant_report(const Gem& g);

/// The named identity checks alone (a convenience wrapper over the report).
std::vector<IdentityCheck> identity_checks(const Gem& g);

}  // namespace crysta
