#include "crysta/moves.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

#include "crysta/smith.hpp"

namespace crysta {

namespace {

// Generic helpers over k-colored involution sets (k = 4 or 5).

template <size_t K>
using InvSet = std::array<std::vector<Vertex>, K>;

template <size_t K>
void mask_components(int order, const InvSet<K>& inv, unsigned mask, std::vector<int>& comp_of) {
    comp_of.assign(order, -1);
    std::vector<Vertex> stack;
    int next = 0;
    for (Vertex s = 0; s < order; ++s) {
        if (comp_of[s] >= 0) continue;
        comp_of[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            for (size_t c = 0; c < K; ++c) {
                if (!((mask >> c) & 1u)) continue;
                Vertex w = inv[c][u];
                if (comp_of[w] < 0) {
                    comp_of[w] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
}

template <size_t K>
int count_components(int order, const InvSet<K>& inv, unsigned mask) {
    std::vector<int> comp_of;
    mask_components<K>(order, inv, mask, comp_of);
    int n = 0;
    for (int c : comp_of) n = std::max(n, c + 1);
    return n;
}

template <size_t K>
unsigned shared_mask(const InvSet<K>& inv, Vertex v, Vertex w) {
    unsigned m = 0;
    for (size_t c = 0; c < K; ++c)
        if (inv[c][v] == w) m |= 1u << c;
    return m;
}

/// All dipoles of order h: pairs whose parallel-color mask has popcount h and
/// whose complementary-color residues separate them.
template <size_t K>
std::vector<std::pair<std::pair<Vertex, Vertex>, unsigned>> dipoles_of(int order, const InvSet<K>& inv,
                                                                       int h) {
    std::vector<std::pair<std::pair<Vertex, Vertex>, unsigned>> out;
    const unsigned full = (1u << K) - 1;
    std::array<std::vector<int>, 1u << K> comp_cache;
    for (Vertex v = 0; v < order; ++v) {
        for (Vertex w = v + 1; w < order; ++w) {
            unsigned m = shared_mask<K>(inv, v, w);
            if (int(__builtin_popcount(m)) != h) continue;
            unsigned rest = full & ~m;
            auto& comp_of = comp_cache[rest];
            if (comp_of.empty()) mask_components<K>(order, inv, rest, comp_of);
            if (comp_of[v] != comp_of[w]) out.push_back({{v, w}, m});
        }
    }
    return out;
}

template <size_t K>
void eliminate_pair(int order, const InvSet<K>& inv, Vertex v, Vertex w, unsigned colors, int& new_order,
                    InvSet<K>& out) {
    new_order = order - 2;
    std::vector<Vertex> remap(order, -1);
    int next = 0;
    for (Vertex x = 0; x < order; ++x)
        if (x != v && x != w) remap[x] = next++;
    for (size_t c = 0; c < K; ++c) {
        out[c].assign(new_order, -1);
        Vertex xv = inv[c][v], xw = inv[c][w];
        for (Vertex x = 0; x < order; ++x) {
            if (x == v || x == w) continue;
            Vertex y = inv[c][x];
            if (y == v || y == w) continue;
            out[c][remap[x]] = remap[y];
        }
        if (!((colors >> c) & 1u)) {
            // weld the former partners of v and w
            out[c][remap[xv]] = remap[xw];
            out[c][remap[xw]] = remap[xv];
        }
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// 5-colored dipoles
// ---------------------------------------------------------------------------

std::vector<Dipole> find_dipoles(const Gem& g, int h) {
    std::vector<Dipole> out;
    for (auto& [pair, mask] : dipoles_of<5>(g.order(), g.involutions(), h))
        out.push_back(Dipole{pair.first, pair.second, ColorSet(uint8_t(mask))});
    return out;
}

std::vector<Dipole> find_dipoles(const Gem& g) {
    std::vector<Dipole> out;
    for (int h = 1; h <= 4; ++h) {
        auto part = find_dipoles(g, h);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

namespace {

bool dipole_current(const Gem& g, const Dipole& d) {
    if (d.v < 0 || d.w >= g.order() || d.v >= d.w) return false;
    if (shared_mask<5>(g.involutions(), d.v, d.w) != d.colors.mask()) return false;
    std::vector<int> comp_of;
    mask_components<5>(g.order(), g.involutions(), d.colors.complement().mask(), comp_of);
    return comp_of[d.v] != comp_of[d.w];
}

}  // namespace

Gem eliminate_dipole(const Gem& g, const Dipole& d) {
    if (!dipole_current(g, d))
        throw GemError(ErrorCode::stale_move,
                       "dipole (" + std::to_string(d.v) + "," + std::to_string(d.w) + ") colors " +
                           d.colors.to_string() + " is not current");
    RawGem raw;
    eliminate_pair<5>(g.order(), g.involutions(), d.v, d.w, d.colors.mask(), raw.order, raw.pairing);
    return Gem::validate(raw);
}

// ---------------------------------------------------------------------------
// rho-pairs
// ---------------------------------------------------------------------------

std::vector<RhoPair> find_rho_pairs(const Gem& g) {
    std::vector<RhoPair> out;
    for (int i = 0; i < kNumColors; ++i) {
        std::vector<std::array<Vertex, 2>> edges;
        for (Vertex v = 0; v < g.order(); ++v) {
            Vertex w = g.partner(i, v);
            if (v < w) edges.push_back({v, w});
        }
        // cycle id per vertex for each companion color
        std::array<std::vector<int>, kNumColors> cyc;
        for (int j = 0; j < kNumColors; ++j) {
            if (j == i) continue;
            cyc[j] = g.residues(ColorSet::of({i, j})).component_of;
        }
        for (size_t a = 0; a < edges.size(); ++a)
            for (size_t b = a + 1; b < edges.size(); ++b) {
                RhoPair rp;
                rp.color = i;
                rp.e1 = edges[a];
                rp.e2 = edges[b];
                for (int j = 0; j < kNumColors; ++j) {
                    if (j == i) continue;
                    if (cyc[j][edges[a][0]] == cyc[j][edges[b][0]]) rp.shared.push_back(j);
                }
                if (rp.shared.size() >= 3) out.push_back(std::move(rp));
            }
    }
    return out;
}

namespace {

bool rho_current(const Gem& g, const RhoPair& r) {
    if (r.color < 0 || r.color >= kNumColors) return false;
    auto edge_ok = [&](const std::array<Vertex, 2>& e) {
        return e[0] >= 0 && e[1] < g.order() && e[0] < e[1] && g.partner(r.color, e[0]) == e[1];
    };
    if (!edge_ok(r.e1) || !edge_ok(r.e2) || r.e1 == r.e2) return false;
    int shared = 0;
    for (int j = 0; j < kNumColors; ++j) {
        if (j == r.color) continue;
        auto comp = g.residues(ColorSet::of({r.color, j})).component_of;
        if (comp[r.e1[0]] == comp[r.e2[0]]) ++shared;
    }
    return shared >= 3;
}

}  // namespace

RhoSwitchResult switch_rho_pair(const Gem& g, const RhoPair& r) {
    if (!rho_current(g, r)) throw GemError(ErrorCode::stale_move, "rho-pair is not current");
    RawGem raw;
    raw.order = g.order();
    raw.pairing = g.involutions();

    Vertex a1 = r.e1[0], b1 = r.e1[1], a2 = r.e2[0], b2 = r.e2[1];
    Bipartition bp = g.bipartition();
    if (bp.bipartite && bp.side[a2] != bp.side[a1]) std::swap(a2, b2);
    // cross pairing a1-b2, a2-b1 (class-respecting for bipartite gems)
    raw.pairing[r.color][a1] = b2;
    raw.pairing[r.color][b2] = a1;
    raw.pairing[r.color][a2] = b1;
    raw.pairing[r.color][b1] = a2;

    Gem cur = Gem::validate(raw);  // throws disconnected if the switch severed the gem
    RhoSwitchResult res{cur, false, {}};
    for (;;) {
        auto dips = find_dipoles(res.gem);
        if (dips.empty()) break;
        res.eliminated.push_back(dips.front());
        res.gem = eliminate_dipole(res.gem, dips.front());
    }
    res.reduced = res.gem.order() < g.order();
    return res;
}

bool is_rigid_dipole_free(const Gem& g) {
    if (!g.is_contracted())
        throw GemError(ErrorCode::not_contracted, "rigidity is defined for contracted gems");
    return find_dipoles(g, 2).empty() && find_rho_pairs(g).empty();
}

// ---------------------------------------------------------------------------
// Dipole insertion
// ---------------------------------------------------------------------------

InsertedDipole insert_random_dipole(const Gem& g, int h, std::mt19937_64& rng) {
    if (h < 1 || h > 4) throw GemError(ErrorCode::syntax, "dipole order must be 1..4");
    const int n = g.order();
    Bipartition bp = g.bipartition();
    for (int attempt = 0; attempt < 512; ++attempt) {
        // random color subset of size h
        std::array<int, 5> cols{0, 1, 2, 3, 4};
        std::shuffle(cols.begin(), cols.end(), rng);
        ColorSet cset;
        for (int i = 0; i < h; ++i) cset = cset.with(cols[i]);

        RawGem raw;
        raw.order = n + 2;
        Vertex v = n, w = n + 1;
        for (int c = 0; c < kNumColors; ++c) {
            raw.pairing[c] = g.involutions()[c];
            raw.pairing[c].resize(n + 2, -1);
        }
        int side = bp.bipartite ? int(rng() % 2) : 0;
        for (int c = 0; c < kNumColors; ++c) {
            if (cset.contains(c)) {
                raw.pairing[c][v] = w;
                raw.pairing[c][w] = v;
                continue;
            }
            // cut a random c-edge (x,y), splicing v next to x and w next to y
            Vertex x = Vertex(rng() % n);
            Vertex y = g.partner(c, x);
            if (bp.bipartite ? (bp.side[x] != side) : (rng() % 2 == 0)) std::swap(x, y);
            raw.pairing[c][x] = v;
            raw.pairing[c][v] = x;
            raw.pairing[c][y] = w;
            raw.pairing[c][w] = y;
        }
        Gem candidate = Gem::validate(raw);
        Dipole d{v, w, cset};
        if (dipole_current(candidate, d)) return InsertedDipole{candidate, d};
    }
    throw GemError(ErrorCode::resource_limit, "no admissible dipole insertion found");
}

// ---------------------------------------------------------------------------
// 4-colored machinery
// ---------------------------------------------------------------------------

std::vector<FourGraph> hat_residues(const Gem& g, int hat_color) {
    ResidueComponents rc = g.residues(ColorSet::hat(hat_color));
    std::vector<FourGraph> out;
    std::array<int, 4> names{};
    {
        int t = 0;
        for (int c = 0; c < kNumColors; ++c)
            if (c != hat_color) names[t++] = c;
    }
    for (const auto& comp : rc.members) {
        FourGraph fg;
        fg.order = int(comp.size());
        fg.color_names = names;
        std::vector<int> local(g.order(), -1);
        for (int i = 0; i < fg.order; ++i) local[comp[i]] = i;
        for (int t = 0; t < 4; ++t) {
            fg.inv[t].resize(fg.order);
            for (int i = 0; i < fg.order; ++i) fg.inv[t][i] = local[g.partner(names[t], comp[i])];
        }
        out.push_back(std::move(fg));
    }
    return out;
}

const char* to_string(S3Verdict v) { return v == S3Verdict::yes ? "yes" : "unknown"; }

FourGraphHomology four_graph_homology(const FourGraph& g4) {
    // Simplices with label set L (|L| = d+1) biject with the components of
    // the restriction to the complementary colors; facets drop one label.
    std::array<std::vector<int>, 16> comp_of;
    std::array<int, 16> comp_count{};
    for (unsigned labels = 1; labels < 16; ++labels) {
        unsigned colors = 0xfu & ~labels;
        mask_components<4>(g4.order, g4.inv, colors, comp_of[labels]);
        int n = 0;
        for (int c : comp_of[labels]) n = std::max(n, c + 1);
        comp_count[labels] = n;
    }
    std::array<int, 4> layer_size{};
    std::array<std::array<int, 16>, 4> base{};
    for (int d = 0; d < 4; ++d)
        for (unsigned labels = 1; labels < 16; ++labels) {
            if (__builtin_popcount(labels) != d + 1) continue;
            base[d][labels] = layer_size[d];
            layer_size[d] += comp_count[labels];
        }
    // representative vertex per simplex (for facet lookup)
    std::array<std::vector<int>, 4> rep;
    for (int d = 0; d < 4; ++d) rep[d].assign(layer_size[d], -1);
    for (int d = 0; d < 4; ++d)
        for (unsigned labels = 1; labels < 16; ++labels) {
            if (__builtin_popcount(labels) != d + 1) continue;
            for (int v = 0; v < g4.order; ++v) {
                int idx = base[d][labels] + comp_of[labels][v];
                if (rep[d][idx] < 0) rep[d][idx] = v;
            }
        }
    std::array<SmithResult, 4> snf;  // boundary d for d = 1..3
    for (int d = 1; d <= 3; ++d) {
        IntMatrix m(layer_size[d - 1], layer_size[d]);
        for (unsigned labels = 1; labels < 16; ++labels) {
            if (__builtin_popcount(labels) != d + 1) continue;
            for (int k = 0; k < comp_count[labels]; ++k) {
                int col = base[d][labels] + k;
                int v = rep[d][col];
                int t = 0;
                for (int label = 0; label < 4; ++label) {
                    if (!((labels >> label) & 1u)) continue;
                    unsigned sub = labels & ~(1u << label);
                    int row = base[d - 1][sub] + comp_of[sub][v];
                    m.at(row, col) += (t % 2 == 0) ? 1 : -1;
                    ++t;
                }
            }
        }
        snf[d] = smith_normal_form(std::move(m));
    }
    FourGraphHomology h;
    for (int d = 0; d < 4; ++d) {
        int rank_d = (d >= 1) ? snf[d].rank : 0;
        int rank_d1 = (d < 3) ? snf[d + 1].rank : 0;
        h.betti[d] = layer_size[d] - rank_d - rank_d1;
        if (d < 3)
            for (int64_t v : snf[d + 1].divisors)
                if (v > 1) h.torsion[d].push_back(v);
    }
    return h;
}

namespace {

/// Every 3-color sub-residue must be a sphere for the graph to encode a
/// closed 3-manifold; recognize_s3 refuses to say yes otherwise.
bool four_graph_sphere_gate(const FourGraph& fg) {
    for (unsigned drop = 0; drop < 4; ++drop) {
        unsigned mask = 0xfu & ~(1u << drop);
        std::vector<int> comp_of;
        mask_components<4>(fg.order, fg.inv, mask, comp_of);
        int ncomp = 0;
        for (int c : comp_of) ncomp = std::max(ncomp, c + 1);
        std::vector<int> size(ncomp, 0), cycles(ncomp, 0);
        for (int v = 0; v < fg.order; ++v) ++size[comp_of[v]];
        for (unsigned a = 0; a < 4; ++a)
            for (unsigned b = a + 1; b < 4; ++b) {
                if (!((mask >> a) & 1u) || !((mask >> b) & 1u)) continue;
                std::vector<int> pair_comp;
                mask_components<4>(fg.order, fg.inv, (1u << a) | (1u << b), pair_comp);
                std::vector<int> seen(fg.order, 0);
                for (int v = 0; v < fg.order; ++v)
                    if (!seen[pair_comp[v]]) {
                        seen[pair_comp[v]] = 1;
                        ++cycles[comp_of[v]];
                    }
            }
        for (int c = 0; c < ncomp; ++c)
            if (cycles[c] - size[c] / 2 != 2) return false;
    }
    return true;
}

/// Eliminate dipoles greedily; candidate order shuffled when rng != nullptr.
FourGraph reduce_greedy(FourGraph fg, std::mt19937_64* rng) {
    for (;;) {
        if (fg.order <= 2) return fg;
        std::vector<std::pair<std::pair<Vertex, Vertex>, unsigned>> cand;
        for (int h = 3; h >= 1 && cand.empty(); --h) cand = dipoles_of<4>(fg.order, fg.inv, h);
        if (cand.empty()) return fg;
        size_t pick = 0;
        if (rng) pick = size_t((*rng)() % cand.size());
        FourGraph next;
        next.color_names = fg.color_names;
        eliminate_pair<4>(fg.order, fg.inv, cand[pick].first.first, cand[pick].first.second,
                          cand[pick].second, next.order, next.inv);
        fg = std::move(next);
    }
}

/// Random proper dipole insertion for blow-up restarts (h = 1 or 2).
bool blow_up(FourGraph& fg, std::mt19937_64& rng) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        int h = 1 + int(rng() % 2);
        std::array<int, 4> cols{0, 1, 2, 3};
        std::shuffle(cols.begin(), cols.end(), rng);
        unsigned cset = 0;
        for (int i = 0; i < h; ++i) cset |= 1u << cols[i];
        FourGraph next;
        next.color_names = fg.color_names;
        next.order = fg.order + 2;
        Vertex v = fg.order, w = fg.order + 1;
        for (int c = 0; c < 4; ++c) {
            next.inv[c] = fg.inv[c];
            next.inv[c].resize(next.order, -1);
            if ((cset >> c) & 1u) {
                next.inv[c][v] = w;
                next.inv[c][w] = v;
                continue;
            }
            Vertex x = Vertex(rng() % fg.order);
            Vertex y = fg.inv[c][x];
            if (rng() % 2) std::swap(x, y);
            next.inv[c][x] = v;
            next.inv[c][v] = x;
            next.inv[c][y] = w;
            next.inv[c][w] = y;
        }
        // accept only when the inserted pair is a genuine dipole
        if (shared_mask<4>(next.inv, v, w) != cset) continue;
        std::vector<int> comp_of;
        mask_components<4>(next.order, next.inv, 0xfu & ~cset, comp_of);
        if (comp_of[v] == comp_of[w]) continue;
        fg = std::move(next);
        return true;
    }
    return false;
}

}  // namespace

S3Verdict recognize_s3(const FourGraph& g4, const S3Options& opt) {
    if (g4.order < 2) return S3Verdict::unknown;
    if (count_components<4>(g4.order, g4.inv, 0xf) != 1) return S3Verdict::unknown;
    if (!four_graph_sphere_gate(g4)) return S3Verdict::unknown;
    {
        // Sound negative gate: a 3-sphere has homology (1,0,0,1), no torsion.
        FourGraphHomology h = four_graph_homology(g4);
        if (h.betti != std::array<int, 4>{1, 0, 0, 1}) return S3Verdict::unknown;
        for (const auto& t : h.torsion)
            if (!t.empty()) return S3Verdict::unknown;
    }

    FourGraph cur = reduce_greedy(g4, nullptr);
    if (cur.order == 2) return S3Verdict::yes;

    std::mt19937_64 rng(opt.seed);
    FourGraph best = cur;
    for (int restart = 0; restart < opt.restart_budget; ++restart) {
        FourGraph trial = best;
        int blows = 1 + (restart % 2);  // at most 4 fresh vertices per restart
        for (int b = 0; b < blows; ++b)
            if (!blow_up(trial, rng)) break;
        trial = reduce_greedy(std::move(trial), &rng);
        if (trial.order == 2) return S3Verdict::yes;
        if (trial.order < best.order) best = std::move(trial);
    }
    return S3Verdict::unknown;
}

std::array<S3Verdict, 5> s3_verdicts(const Gem& g, const S3Options& opt) {
    std::array<S3Verdict, 5> out;
    for (int i = 0; i < kNumColors; ++i) {
        out[i] = S3Verdict::yes;
        for (const FourGraph& fg : hat_residues(g, i)) {
            S3Options o = opt;
            o.seed = opt.seed ^ (uint64_t(i) << 32);
            if (recognize_s3(fg, o) != S3Verdict::yes) {
                out[i] = S3Verdict::unknown;
                break;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Simplification + move log
// ---------------------------------------------------------------------------

namespace {

std::string dipole_line(const Dipole& d) {
    return "dipole " + std::to_string(d.v) + " " + std::to_string(d.w) + " " + d.colors.to_string();
}

std::string rho_line(const RhoPair& r) {
    return "rho " + std::to_string(r.color) + " " + std::to_string(r.e1[0]) + " " +
           std::to_string(r.e1[1]) + " " + std::to_string(r.e2[0]) + " " + std::to_string(r.e2[1]);
}

}  // namespace

SimplifyResult simplify(const Gem& g, uint64_t seed, int budget) {
    std::mt19937_64 rng(seed);
    SimplifyResult res{g, {}};
    int moves = 0;
    while (moves < budget && res.gem.order() > 2) {
        auto dips = find_dipoles(res.gem);
        if (!dips.empty()) {
            size_t pick = size_t(rng() % dips.size());
            res.log.push_back(dipole_line(dips[pick]));
            res.gem = eliminate_dipole(res.gem, dips[pick]);
            ++moves;
            continue;
        }
        auto rhos = find_rho_pairs(res.gem);
        bool advanced = false;
        for (const RhoPair& r : rhos) {
            RhoSwitchResult sw = switch_rho_pair(res.gem, r);
            if (sw.reduced) {
                res.log.push_back(rho_line(r));
                res.gem = sw.gem;
                ++moves;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return res;
}

Gem apply_move_log(const Gem& g, const std::vector<std::string>& log) {
    Gem cur = g;
    for (const std::string& line : log) {
        std::istringstream is(line);
        std::string kind;
        is >> kind;
        if (kind == "dipole") {
            int v, w;
            std::string colors;
            if (!(is >> v >> w >> colors))
                throw GemError(ErrorCode::syntax, "bad move line: " + line);
            ColorSet cs;
            for (char ch : colors) cs = cs.with(ch - '0');
            cur = eliminate_dipole(cur, Dipole{v, w, cs});
        } else if (kind == "rho") {
            int i, v1, w1, v2, w2;
            if (!(is >> i >> v1 >> w1 >> v2 >> w2))
                throw GemError(ErrorCode::syntax, "bad move line: " + line);
            RhoPair r;
            r.color = i;
            r.e1 = {v1, w1};
            r.e2 = {v2, w2};
            cur = switch_rho_pair(cur, r).gem;
        } else {
            throw GemError(ErrorCode::syntax, "unknown move kind in: " + line);
        }
    }
    return cur;
}

}  // namespace crysta
