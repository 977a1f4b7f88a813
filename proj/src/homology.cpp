#include "crysta/homology.hpp"

namespace crysta {

IntMatrix boundary_matrix(const Pseudocomplex& k, int dim) {
    IntMatrix m(int(k.simplices(dim - 1).size()), int(k.simplices(dim).size()));
    const auto& bnd = k.boundaries(dim);
    for (int col = 0; col < m.cols(); ++col)
        for (const FacetRef& f : bnd[col]) m.at(f.index, col) += f.sign;
    return m;
}

HomologyProfile homology(const Pseudocomplex& k) {
    std::array<SmithResult, 6> snf;  // snf[d] for boundary d (1..4); 0 and 5 are zero maps
    for (int d = 1; d <= 4; ++d) snf[d] = smith_normal_form(boundary_matrix(k, d));

    HomologyProfile h;
    for (int d = 0; d <= 4; ++d) {
        int n_d = int(k.simplices(d).size());
        int rank_d = (d >= 1) ? snf[d].rank : 0;
        int rank_d1 = (d < 4) ? snf[d + 1].rank : 0;
        h.betti[d] = n_d - rank_d - rank_d1;
        if (d < 4)
            for (int64_t v : snf[d + 1].divisors)
                if (v > 1) h.torsion[d].push_back(v);
    }
    return h;
}

}  // namespace crysta
