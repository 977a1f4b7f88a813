#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "crysta/gem.hpp"

namespace crysta {

/// An h-dipole: two vertices joined by exactly the edges colored `colors`
/// (h = |colors|), lying in distinct residues of the complementary colors.
struct Dipole {
    Vertex v = 0, w = 0;  // v < w
    ColorSet colors;
    int h() const { return colors.size(); }
};

/// Two distinct i-colored edges sharing at least three bicolored cycles.
struct RhoPair {
    int color = 0;
    std::array<Vertex, 2> e1{};  // (v1, w1), v1 < w1
    std::array<Vertex, 2> e2{};
    std::vector<int> shared;     // colors j != i with both edges on one {i,j}-cycle
};

/// Complete dipole list for one order h (1..4) or for all orders.
std::vector<Dipole> find_dipoles(const Gem& g, int h);
std::vector<Dipole> find_dipoles(const Gem& g);

/// Deletes the dipole pair and welds the complementary-color partners.
/// Order drops by exactly 2; vertices above the deleted pair shift down.
/// Throws stale_move when d no longer matches g.
Gem eliminate_dipole(const Gem& g, const Dipole& d);

std::vector<RhoPair> find_rho_pairs(const Gem& g);

struct RhoSwitchResult {
    Gem gem;
    bool reduced = false;            // order strictly decreased across switch + cleanup
    std::vector<Dipole> eliminated;  // cleanup log (coordinates at time of elimination)
};

/// Replaces the two i-colored edges by the class-respecting cross pairing and
/// eliminates dipoles until none remains. `reduced == false` reports the
/// switch produced no eliminable dipole. Throws stale_move when r is not a
/// current rho-pair of g.
RhoSwitchResult switch_rho_pair(const Gem& g, const RhoPair& r);

/// No 2-dipoles and no rho-pairs. Requires a contracted gem.
bool is_rigid_dipole_free(const Gem& g);

/// Splices a fresh h-dipole into g; the two new vertices are appended at the
/// end so eliminating the returned dipole restores g exactly. Draws cut edges
/// until the inserted pair is a genuine dipole and the result is a valid gem.
struct InsertedDipole {
    Gem gem;
    Dipole dipole;
};
InsertedDipole insert_random_dipole(const Gem& g, int h, std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// 4-colored graphs: the hat-residues of a gem, and 3-sphere recognition
// ---------------------------------------------------------------------------

struct FourGraph {
    int order = 0;
    std::array<std::vector<Vertex>, 4> inv;
    std::array<int, 4> color_names{0, 1, 2, 3};
};

/// All connected components of the 4-colored subgraph missing `hat_color`.
std::vector<FourGraph> hat_residues(const Gem& g, int hat_color);

enum class S3Verdict { yes, unknown };
const char* to_string(S3Verdict v);

/// Betti numbers and torsion of the 3-dimensional pseudocomplex dual to a
/// 4-colored graph. Nontrivial H_1 certifies the residue is not a 3-sphere.
struct FourGraphHomology {
    std::array<int, 4> betti{};
    std::array<std::vector<int64_t>, 4> torsion;
};
FourGraphHomology four_graph_homology(const FourGraph& g4);

struct S3Options {
    uint64_t seed = 1;
    int restart_budget = 64;  // random blow-up rounds before giving up
};

/// Greedy dipole reduction with bounded random blow-up restarts. `yes` is
/// sound (the graph reduced to the standard order-2 form); `unknown` is not
/// a `no`. Never answers yes when some 3-color sub-residue is not a sphere.
S3Verdict recognize_s3(const FourGraph& g4, const S3Options& opt = {});

/// Verdict per hat color: yes iff every component of that residue is
/// recognized as a 3-sphere.
std::array<S3Verdict, 5> s3_verdicts(const Gem& g, const S3Options& opt = {});

// ---------------------------------------------------------------------------
// Simplification loop
// ---------------------------------------------------------------------------

struct SimplifyResult {
    Gem gem;
    std::vector<std::string> log;  // replayable move lines
};

/// Eliminates dipoles and applies order-reducing rho-switches until stuck.
/// `seed` shuffles candidate order; `budget` caps the number of moves.
SimplifyResult simplify(const Gem& g, uint64_t seed = 1, int budget = 1 << 20);

/// Replays a move log produced by simplify ("dipole v w colors" /
/// "rho i v1 w1 v2 w2" lines). Throws stale_move on mismatch.
Gem apply_move_log(const Gem& g, const std::vector<std::string>& log);

}  // namespace crysta
