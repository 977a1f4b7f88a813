#include "crysta/gem.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <numeric>
#include <sstream>

namespace crysta {

std::vector<ColorSet> color_pairs() {
    std::vector<ColorSet> out;
    for (uint8_t m = 0; m < 32; ++m)
        if (__builtin_popcount(m) == 2) out.push_back(ColorSet(m));
    return out;
}

std::vector<ColorSet> color_triples() {
    std::vector<ColorSet> out;
    for (uint8_t m = 0; m < 32; ++m)
        if (__builtin_popcount(m) == 3) out.push_back(ColorSet(m));
    return out;
}

std::vector<ColorSet> color_quads() {
    std::vector<ColorSet> out;
    for (uint8_t m = 0; m < 32; ++m)
        if (__builtin_popcount(m) == 4) out.push_back(ColorSet(m));
    return out;
}

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::odd_order: return "odd-order";
        case ErrorCode::fixed_point: return "fixed-point";
        case ErrorCode::not_involution: return "not-involution";
        case ErrorCode::disconnected: return "disconnected";
        case ErrorCode::syntax: return "syntax-error";
        case ErrorCode::not_contracted: return "not-contracted";
        case ErrorCode::non_bipartite: return "non-bipartite";
        case ErrorCode::odd_genus_value: return "odd-genus-value";
        case ErrorCode::not_simple: return "not-simple";
        case ErrorCode::stale_move: return "stale-move";
        case ErrorCode::class_mismatch: return "class-mismatch";
        case ErrorCode::overflow_guard: return "overflow-guard";
        case ErrorCode::resource_limit: return "resource-limit";
        case ErrorCode::io: return "io-error";
    }
    return "unknown";
}

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        parent[b] = a;
        return true;
    }
};

std::string list_components(const ResidueComponents& rc) {
    std::string s;
    for (const auto& comp : rc.members) {
        s += "{";
        for (size_t i = 0; i < comp.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(comp[i]);
        }
        s += "}";
    }
    return s;
}

ResidueComponents components_from_dsu(int order, Dsu& dsu) {
    ResidueComponents rc;
    rc.component_of.assign(order, -1);
    for (Vertex v = 0; v < order; ++v) {
        int root = dsu.find(v);
        if (rc.component_of[root] < 0) {
            rc.component_of[root] = rc.count++;
            rc.members.emplace_back();
        }
        rc.component_of[v] = rc.component_of[root];
        rc.members[rc.component_of[v]].push_back(v);
    }
    return rc;
}

}  // namespace

int ResidueTable::sum_pairs() const {
    int s = 0;
    for (ColorSet cs : color_pairs()) s += g(cs);
    return s;
}

int ResidueTable::sum_triples() const {
    int s = 0;
    for (ColorSet cs : color_triples()) s += g(cs);
    return s;
}

int ResidueTable::sum_hats() const {
    int s = 0;
    for (ColorSet cs : color_quads()) s += g(cs);
    return s;
}

Gem Gem::validate(const RawGem& raw) {
    const int n = raw.order;
    if (n < 2 || n % 2 != 0)
        throw GemError(ErrorCode::odd_order,
                       "order must be a positive even integer, got " + std::to_string(n));
    for (int c = 0; c < kNumColors; ++c) {
        if (int(raw.pairing[c].size()) != n)
            throw GemError(ErrorCode::syntax,
                           "color " + std::to_string(c) + " pairing covers " +
                               std::to_string(raw.pairing[c].size()) + " vertices, expected " +
                               std::to_string(n),
                           c);
        for (Vertex v = 0; v < n; ++v) {
            Vertex w = raw.pairing[c][v];
            if (w < 0 || w >= n)
                throw GemError(ErrorCode::not_involution,
                               "color " + std::to_string(c) + " maps vertex " + std::to_string(v) +
                                   " outside the vertex set",
                               c, v);
            if (w == v)
                throw GemError(ErrorCode::fixed_point,
                               "color " + std::to_string(c) + " fixes vertex " + std::to_string(v),
                               c, v);
            if (raw.pairing[c][w] != v)
                throw GemError(ErrorCode::not_involution,
                               "color " + std::to_string(c) + " is not an involution at vertex " +
                                   std::to_string(v),
                               c, v);
        }
    }
    Gem g(n, raw.pairing);
    ResidueComponents all = g.residues(ColorSet::all());
    if (all.count != 1)
        throw GemError(ErrorCode::disconnected,
                       "gem is disconnected: components " + list_components(all));
    return g;
}

Gem Gem::unchecked(RawGem raw) {
#ifndef NDEBUG
    return validate(raw);
#else
    return Gem(raw.order, std::move(raw.pairing));
#endif
}

ResidueComponents Gem::residues(ColorSet colors) const {
    Dsu dsu(order_);
    for (int c = 0; c < kNumColors; ++c) {
        if (!colors.contains(c)) continue;
        for (Vertex v = 0; v < order_; ++v) dsu.unite(v, inv_[c][v]);
    }
    return components_from_dsu(order_, dsu);
}

ResidueTable Gem::residue_table() const {
    ResidueTable t;
    for (uint8_t m = 0; m < 32; ++m) {
        int k = __builtin_popcount(m);
        if (k < 2 || k > 4) continue;
        t.parts_[m] = residues(ColorSet(m));
        t.counts_[m] = t.parts_[m].count;
    }
    return t;
}

bool Gem::is_contracted() const {
    for (int c = 0; c < kNumColors; ++c)
        if (residues(ColorSet::hat(c)).count != 1) return false;
    return true;
}

Bipartition bipartition_of(int order, const std::vector<std::vector<Vertex>>& adj) {
    Bipartition bp;
    bp.side.assign(order, -1);
    std::vector<Vertex> parent(order, -1);
    std::vector<Vertex> queue;
    for (Vertex start = 0; start < order; ++start) {
        if (bp.side[start] >= 0) continue;
        bp.side[start] = 0;
        queue.clear();
        queue.push_back(start);
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            Vertex u = queue[qi];
            for (Vertex w : adj[u]) {
                if (bp.side[w] < 0) {
                    bp.side[w] = int8_t(1 - bp.side[u]);
                    parent[w] = u;
                    queue.push_back(w);
                } else if (bp.side[w] == bp.side[u]) {
                    // Odd cycle: walk both ancestor chains to the root and splice.
                    std::vector<Vertex> pu, pw;
                    for (Vertex x = u; x >= 0; x = parent[x]) pu.push_back(x);
                    for (Vertex x = w; x >= 0; x = parent[x]) pw.push_back(x);
                    while (pu.size() >= 2 && pw.size() >= 2 &&
                           pu[pu.size() - 1] == pw[pw.size() - 1] &&
                           pu[pu.size() - 2] == pw[pw.size() - 2]) {
                        pu.pop_back();
                        pw.pop_back();
                    }
                    bp.bipartite = false;
                    bp.odd_cycle.assign(pu.begin(), pu.end());  // u ... lca
                    bool at_lca = true;
                    for (size_t k = pw.size(); k-- > 0;) {
                        if (at_lca) {
                            at_lca = false;  // lca already listed from pu
                            continue;
                        }
                        bp.odd_cycle.push_back(pw[k]);
                    }
                    bp.side.clear();
                    return bp;
                }
            }
        }
    }
    bp.bipartite = true;
    return bp;
}

Bipartition Gem::bipartition() const {
    std::vector<std::vector<Vertex>> adj(order_);
    for (int c = 0; c < kNumColors; ++c)
        for (Vertex v = 0; v < order_; ++v) adj[v].push_back(inv_[c][v]);
    return bipartition_of(order_, adj);
}

Gem standard_sphere_gem() {
    RawGem raw;
    raw.order = 2;
    for (int c = 0; c < kNumColors; ++c) raw.pairing[c] = {1, 0};
    return Gem::validate(raw);
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

std::string Gem::serialize() const {
    std::string out = "gem v1\norder " + std::to_string(order_) + "\n";
    for (int c = 0; c < kNumColors; ++c) {
        out += std::to_string(c) + ":";
        for (Vertex v = 0; v < order_; ++v) {
            Vertex w = inv_[c][v];
            if (v < w) out += " " + std::to_string(v) + "-" + std::to_string(w);
        }
        out += "\n";
    }
    return out;
}

namespace {

bool is_blank_or_comment(const std::string& line) {
    for (char ch : line) {
        if (ch == '#') return true;
        if (!isspace(static_cast<unsigned char>(ch))) return false;
    }
    return true;
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream is(line);
    std::string t;
    while (is >> t) toks.push_back(t);
    return toks;
}

long parse_int(const std::string& tok, int line_no) {
    size_t pos = 0;
    long value = 0;
    try {
        value = std::stol(tok, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != tok.size())
        throw GemError(ErrorCode::syntax, "line " + std::to_string(line_no) + ": expected integer, got '" + tok + "'",
                       line_no);
    return value;
}

}  // namespace

Gem Gem::parse(const std::string& text) {
    std::vector<std::string> lines;
    {
        std::string cur;
        for (char ch : text) {
            if (ch == '\n') {
                if (!cur.empty() && cur.back() == '\r') cur.pop_back();
                lines.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(ch);
            }
        }
        if (!cur.empty()) {
            if (cur.back() == '\r') cur.pop_back();
            lines.push_back(cur);
        }
    }
    if (lines.empty() || lines[0] != "gem v1")
        throw GemError(ErrorCode::syntax, "line 1: expected header 'gem v1'", 1);

    RawGem raw;
    int next_color = 0;
    bool have_order = false;
    for (size_t li = 1; li < lines.size(); ++li) {
        const std::string& line = lines[li];
        int line_no = int(li) + 1;
        if (is_blank_or_comment(line)) continue;
        auto toks = tokenize(line);
        if (!have_order) {
            if (toks.size() != 2 || toks[0] != "order")
                throw GemError(ErrorCode::syntax, "line " + std::to_string(line_no) + ": expected 'order <2p>'",
                               line_no);
            long n = parse_int(toks[1], line_no);
            if (n < 2 || n % 2 != 0)
                throw GemError(ErrorCode::odd_order,
                               "line " + std::to_string(line_no) + ": order must be a positive even integer, got " +
                                   std::to_string(n),
                               line_no);
            raw.order = int(n);
            for (auto& p : raw.pairing) p.assign(raw.order, -1);
            have_order = true;
            continue;
        }
        if (next_color >= kNumColors)
            throw GemError(ErrorCode::syntax,
                           "line " + std::to_string(line_no) + ": unexpected content after color 4", line_no);
        if (toks.empty() || toks[0] != std::to_string(next_color) + ":")
            throw GemError(ErrorCode::syntax,
                           "line " + std::to_string(line_no) + ": expected '" + std::to_string(next_color) +
                               ": a-b ...'",
                           line_no);
        if (int(toks.size()) - 1 != raw.order / 2)
            throw GemError(ErrorCode::syntax,
                           "line " + std::to_string(line_no) + ": expected " + std::to_string(raw.order / 2) +
                               " pairs, got " + std::to_string(toks.size() - 1),
                           line_no);
        for (size_t ti = 1; ti < toks.size(); ++ti) {
            const std::string& tok = toks[ti];
            size_t dash = tok.find('-', 1);  // allow no leading '-': vertices are non-negative
            if (dash == std::string::npos)
                throw GemError(ErrorCode::syntax,
                               "line " + std::to_string(line_no) + ": expected 'a-b', got '" + tok + "'", line_no);
            long a = parse_int(tok.substr(0, dash), line_no);
            long b = parse_int(tok.substr(dash + 1), line_no);
            if (a < 0 || a >= raw.order || b < 0 || b >= raw.order)
                throw GemError(ErrorCode::syntax,
                               "line " + std::to_string(line_no) + ": vertex out of range in '" + tok + "'",
                               line_no);
            if (a == b)
                throw GemError(ErrorCode::fixed_point,
                               "color " + std::to_string(next_color) + " fixes vertex " + std::to_string(a),
                               next_color, int(a));
            if (raw.pairing[next_color][a] != -1)
                throw GemError(ErrorCode::not_involution,
                               "color " + std::to_string(next_color) + ": vertex " + std::to_string(a) +
                                   " paired twice",
                               next_color, int(a));
            if (raw.pairing[next_color][b] != -1)
                throw GemError(ErrorCode::not_involution,
                               "color " + std::to_string(next_color) + ": vertex " + std::to_string(b) +
                                   " paired twice",
                               next_color, int(b));
            raw.pairing[next_color][a] = Vertex(b);
            raw.pairing[next_color][b] = Vertex(a);
        }
        ++next_color;
    }
    if (!have_order) throw GemError(ErrorCode::syntax, "missing 'order' line", 2);
    if (next_color != kNumColors)
        throw GemError(ErrorCode::syntax,
                       "expected 5 color lines, got " + std::to_string(next_color), int(lines.size()));
    return validate(raw);
}

Gem Gem::parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GemError(ErrorCode::io, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

}  // namespace crysta
