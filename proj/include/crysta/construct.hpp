#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "crysta/canonical.hpp"
#include "crysta/gem.hpp"
#include "crysta/invariants.hpp"
#include "crysta/moves.hpp"

namespace crysta {

/// Which bipartition classes the two deleted vertices come from, relative to
/// the convention that class A contains vertex 0 in each input.
enum class SumOrientation { same_class, opposite_class };

struct SumSpec {
    Gem a, b;
    Vertex va = 0, vb = 0;
    SumOrientation orientation = SumOrientation::same_class;
};

/// Graph connected sum: deletes va and vb and welds the hanging edge-ends
/// color-wise. Order is |a| + |b| - 2. Throws class_mismatch when the
/// orientation flag disagrees with the classes of the chosen vertices.
Gem connected_sum(const SumSpec& spec);

/// Convenience: va = 0 and vb the smallest vertex of the class the
/// orientation asks for.
Gem connected_sum(const Gem& a, const Gem& b,
                  SumOrientation orientation = SumOrientation::same_class);

// ---------------------------------------------------------------------------
// Exhaustive generation of simple crystallizations
// ---------------------------------------------------------------------------

struct EnumerationTask {
    int order = 2;
    SymmetryGroup group = SymmetryGroup::vertex_color_reflection;
    int jobs = 1;
    uint64_t seed = 1;              // drives the 3-sphere verdicts only
    int s3_restart_budget = 64;
    double time_budget_seconds = 0;  // 0 = unlimited
    std::string parts_dir;           // when set, per-subtask results are cached for --resume
};

struct CatalogEntry {
    CanonicalForm canonical;
    Gem gem;
    InvariantReport report;
    std::array<S3Verdict, 5> s3{};
    std::array<bool, 5> residue_not_sphere{};  // some hat-residue has nontrivial H_1 (sound)
    bool rigid_dipole_free = false;
    std::string classification_key;  // chi | betti | torsion | genus spectrum | pair-count pattern
    std::string refinement_key;      // bicolored cycle-length fingerprint (experimental split)

    bool certified() const {
        for (S3Verdict v : s3)
            if (v != S3Verdict::yes) return false;
        return true;
    }
    bool rejected() const {
        for (bool b : residue_not_sphere)
            if (b) return true;
        return false;
    }
    /// certified: every residue recognized as a 3-sphere (manifold gem);
    /// rejected: some residue certainly not a 3-sphere (homology witness);
    /// flagged: neither — recognition ran out of budget.
    const char* manifold_status() const {
        return certified() ? "certified" : (rejected() ? "rejected" : "flagged");
    }
};

struct EnumerationResult {
    std::vector<CatalogEntry> entries;  // unique by canonical form, sorted
    bool exhaustive = true;             // false when the time budget tripped
    long long raw_solutions = 0;
    long long subtasks = 0;
    int certified = 0;
    int rejected = 0;  // certainly not manifold gems (homology witness on a residue)
    int flagged = 0;   // entries with an unresolved 3-sphere verdict
};

/// Every gem of the given order that is bipartite, contracted, has all ten
/// triple counts equal to 1 and all 3-color residues spheres — exactly once
/// per isomorphism class under the selected group. 3-sphere verdicts are
/// attached per entry; unknowns are flagged, never dropped.
/// Throws resource_limit when the time budget is exceeded (partial results
/// are not returned in that case via exception; see result.exhaustive).
EnumerationResult enumerate_simple(const EnumerationTask& task);

/// Groups entries by classification key; optionally refined by the
/// cycle-length fingerprint.
std::map<std::string, std::vector<int>> classify(const std::vector<CatalogEntry>& entries,
                                                 bool refine = false);

}  // namespace crysta
