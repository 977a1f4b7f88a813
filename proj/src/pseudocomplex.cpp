#include "crysta/pseudocomplex.hpp"

#include <cassert>

namespace crysta {

Pseudocomplex build_complex(const Gem& g) {
    Pseudocomplex k;
    // Component tables for every label mask (colors = complement of labels).
    for (uint8_t labels = 1; labels < 32; ++labels) {
        ColorSet ls{labels};
        ResidueComponents rc = g.residues(ls.complement());
        k.comp_of_[labels] = rc.component_of;
        int dim = ls.size() - 1;
        auto& ids = k.simplex_id_[labels];
        ids.resize(rc.count);
        for (int c = 0; c < rc.count; ++c) {
            ids[c] = int(k.layers_[dim].size());
            k.layers_[dim].push_back(Simplex{ls, c, rc.members[c].front()});
        }
    }
    // Facets: drop the t-th smallest label, sign (-1)^t.
    for (int dim = 1; dim <= 4; ++dim) {
        k.bnd_[dim].resize(k.layers_[dim].size());
        for (size_t si = 0; si < k.layers_[dim].size(); ++si) {
            const Simplex& s = k.layers_[dim][si];
            auto& facets = k.bnd_[dim][si];
            int t = 0;
            for (int label = 0; label < kNumColors; ++label) {
                if (!s.labels.contains(label)) continue;
                ColorSet sub = s.labels.without(label);
                facets.push_back(FacetRef{k.simplex_index(sub, s.rep), (t % 2 == 0) ? 1 : -1});
                ++t;
            }
        }
    }
    return k;
}

int Pseudocomplex::simplex_index(ColorSet labels, Vertex member) const {
    return simplex_id_[labels.mask()][comp_of_[labels.mask()][member]];
}

std::array<int, 5> Pseudocomplex::face_vector() const {
    std::array<int, 5> f{};
    for (int d = 0; d < 5; ++d) f[d] = int(layers_[d].size());
    return f;
}

std::vector<std::vector<int>> Pseudocomplex::one_skeleton_multiplicity() const {
    int n0 = int(layers_[0].size());
    std::vector<std::vector<int>> mult(n0, std::vector<int>(n0, 0));
    for (const auto& facets : bnd_[1]) {
        assert(facets.size() == 2);
        int a = facets[0].index, b = facets[1].index;
        ++mult[a][b];
        ++mult[b][a];
    }
    return mult;
}

SimplicityCertificate is_simple(const Gem& g) {
    if (!g.is_contracted())
        throw GemError(ErrorCode::not_contracted, "simplicity is defined for contracted gems only");
    SimplicityCertificate cert;
    cert.simple = true;
    for (ColorSet t : color_triples()) {
        int count = g.residues(t).count;
        cert.triples.emplace_back(t, count);
        if (count > 1 && cert.simple) {
            cert.simple = false;
            cert.witness = t;
        }
    }
    return cert;
}

}  // namespace crysta
