#include "crysta/canonical.hpp"

#include <algorithm>
#include <numeric>

namespace crysta {

SymmetryGroup symmetry_group_from_string(const std::string& s) {
    if (s == "v") return SymmetryGroup::vertex;
    if (s == "vc") return SymmetryGroup::vertex_color;
    if (s == "vcr") return SymmetryGroup::vertex_color_reflection;
    throw GemError(ErrorCode::syntax, "unknown symmetry group '" + s + "' (expected v, vc or vcr)");
}

const char* to_string(SymmetryGroup g) {
    switch (g) {
        case SymmetryGroup::vertex: return "v";
        case SymmetryGroup::vertex_color: return "vc";
        case SymmetryGroup::vertex_color_reflection: return "vcr";
    }
    return "?";
}

std::string CanonicalForm::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

namespace {

// Traversal code for one (start, color order) seed. Vertices are discovered
// breadth-first, scanning colors in sigma order; the code lists the discovery
// index of every neighbor in visit order. Returns -1/0/+1 comparing the
// generated code against `best`; fills `buf` fully only while not worse.
int seed_code(const Gem& g, Vertex start, const std::array<int, 5>& sigma,
              const std::vector<uint8_t>& best, std::vector<uint8_t>& buf,
              std::vector<int>& index_of, std::vector<Vertex>& order_list) {
    std::fill(index_of.begin(), index_of.end(), -1);
    order_list.clear();
    index_of[start] = 0;
    order_list.push_back(start);
    buf.clear();
    bool better = best.empty();
    for (size_t qi = 0; qi < order_list.size(); ++qi) {
        Vertex u = order_list[qi];
        for (int d = 0; d < kNumColors; ++d) {
            Vertex w = g.partner(sigma[d], u);
            if (index_of[w] < 0) {
                index_of[w] = int(order_list.size());
                order_list.push_back(w);
            }
            uint8_t entry = uint8_t(index_of[w]);
            if (!better) {
                uint8_t ref = best[buf.size()];
                if (entry > ref) return 1;
                if (entry < ref) better = true;
            }
            buf.push_back(entry);
        }
    }
    return better ? -1 : 0;
}

}  // namespace

CanonicalForm canonical_form(const Gem& g, SymmetryGroup group) {
    const int n = g.order();
    if (n > 255)
        throw GemError(ErrorCode::resource_limit,
                       "canonical form supports order <= 255, got " + std::to_string(n));

    // Admissible start vertices: the class of vertex 0 unless reflections are
    // allowed or the gem is not bipartite.
    std::vector<Vertex> starts;
    if (group == SymmetryGroup::vertex_color_reflection) {
        starts.resize(n);
        std::iota(starts.begin(), starts.end(), 0);
    } else {
        Bipartition bp = g.bipartition();
        if (!bp.bipartite) {
            starts.resize(n);
            std::iota(starts.begin(), starts.end(), 0);
        } else {
            for (Vertex v = 0; v < n; ++v)
                if (bp.side[v] == 0) starts.push_back(v);
        }
    }

    std::vector<std::array<int, 5>> sigmas;
    if (group == SymmetryGroup::vertex) {
        sigmas.push_back({0, 1, 2, 3, 4});
    } else {
        std::array<int, 5> s{0, 1, 2, 3, 4};
        do {
            sigmas.push_back(s);
        } while (std::next_permutation(s.begin(), s.end()));
    }

    std::vector<uint8_t> best, buf;
    std::vector<int> index_of(n);
    std::vector<Vertex> order_list;
    order_list.reserve(n);
    buf.reserve(size_t(n) * kNumColors);
    for (Vertex start : starts) {
        for (const auto& sigma : sigmas) {
            if (seed_code(g, start, sigma, best, buf, index_of, order_list) < 0) best = buf;
        }
    }

    CanonicalForm cf;
    cf.bytes.reserve(4 + best.size());
    cf.bytes.push_back(1);
    cf.bytes.push_back(uint8_t(group));
    cf.bytes.push_back(uint8_t(n >> 8));
    cf.bytes.push_back(uint8_t(n & 0xff));
    cf.bytes.insert(cf.bytes.end(), best.begin(), best.end());
    return cf;
}

}  // namespace crysta
