#include "crysta/invariants.hpp"

#include <algorithm>
#include <cassert>

namespace crysta {

std::vector<CyclicPermutation> cyclic_permutation_classes() {
    std::vector<CyclicPermutation> out;
    std::array<int, 4> head{0, 1, 2, 3};
    do {
        if (head[0] < head[3]) out.push_back(CyclicPermutation{{head[0], head[1], head[2], head[3], 4}});
    } while (std::next_permutation(head.begin(), head.end()));
    return out;
}

namespace {

int rho_of_arrangement(const ResidueTable& table, int order, const std::array<int, 5>& seq) {
    int p = order / 2;
    long sum = 0;
    for (int i = 0; i < 5; ++i) sum += table.g(ColorSet::of({seq[i], seq[(i + 1) % 5]}));
    long twice = 2 - (sum - 3L * p);  // = 2*rho
    if (twice % 2 != 0)
        throw GemError(ErrorCode::odd_genus_value,
                       "regular-embedding count sum has the wrong parity (not a gem?)");
    return int(twice / 2);
}

}  // namespace

GenusSpectrum genus_spectrum(const ResidueTable& table, int order, bool bipartite) {
    if (!bipartite)
        throw GemError(ErrorCode::non_bipartite, "regular genus is computed for bipartite gems only");
    GenusSpectrum gs;
    for (const CyclicPermutation& eps : cyclic_permutation_classes()) {
        int r = rho_of_arrangement(table, order, eps.seq);
#ifndef NDEBUG
        // Reversal invariance: the mirrored arrangement must give the same genus.
        std::array<int, 5> rev{eps.seq[3], eps.seq[2], eps.seq[1], eps.seq[0], 4};
        assert(rho_of_arrangement(table, order, rev) == r);
#endif
        gs.rho.emplace_back(eps, r);
    }
    gs.min_rho = gs.rho.front().second;
    for (const auto& [eps, r] : gs.rho) gs.min_rho = std::min(gs.min_rho, r);
    return gs;
}

GenusSpectrum genus_spectrum(const Gem& g) {
    return genus_spectrum(g.residue_table(), g.order(), g.bipartition().bipartite);
}

int euler_characteristic(const ResidueTable& table, int order) {
    int p = order / 2;
    return -3 * p + table.sum_pairs() - table.sum_triples() + table.sum_hats();
}

int euler_characteristic(const Gem& g) { return euler_characteristic(g.residue_table(), g.order()); }

std::vector<TripleCheck> check_relation_d(const ResidueTable& table, int order) {
    int p = order / 2;
    std::vector<TripleCheck> out;
    for (ColorSet t : color_triples()) {
        auto cols = t.colors();
        TripleCheck tc;
        tc.triple = t;
        tc.lhs = 2L * table.g(t);
        tc.rhs = long(table.g(ColorSet::of({cols[0], cols[1]}))) +
                 table.g(ColorSet::of({cols[0], cols[2]})) + table.g(ColorSet::of({cols[1], cols[2]})) - p;
        tc.pass = tc.lhs == tc.rhs;
        out.push_back(tc);
    }
    return out;
}

std::vector<TripleCheck> check_relation_d(const Gem& g) {
    return check_relation_d(g.residue_table(), g.order());
}

std::vector<SphereCheck> check_sphere_3residues(const Gem& g) {
    std::vector<SphereCheck> out;
    for (ColorSet t : color_triples()) {
        SphereCheck sc;
        sc.triple = t;
        ResidueComponents comps = g.residues(t);
        auto cols = t.colors();
        // Count bicolored cycles inside each component: a cycle lies in one
        // component, so group the pair-residue components by triple-component.
        std::vector<int> cycles(comps.count, 0);
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) {
                ResidueComponents pair_comps = g.residues(ColorSet::of({cols[a], cols[b]}));
                for (const auto& cyc : pair_comps.members) ++cycles[comps.component_of[cyc.front()]];
            }
        for (int c = 0; c < comps.count; ++c) {
            SphereComponent scomp;
            scomp.size = int(comps.members[c].size());
            scomp.chi = cycles[c] - scomp.size / 2;
            scomp.sphere = scomp.chi == 2;
            if (!scomp.sphere) sc.all_spheres = false;
            sc.components.push_back(scomp);
        }
        out.push_back(sc);
    }
    return out;
}

HandleSummary handle_summary(const Gem& g, ColorSet rs) {
    if (rs.size() != 2)
        throw GemError(ErrorCode::syntax, "handle partition needs a 2-color set, got " + rs.to_string());
    SimplicityCertificate cert = is_simple(g);
    if (!cert.simple)
        throw GemError(ErrorCode::not_simple,
                       "handle counts need a simple crystallization; triple " +
                           cert.witness->to_string() + " has count >= 2");
    HandleSummary hs;
    hs.rs = rs;
    hs.h2 = g.residues(rs).count - 1;
    HomologyProfile h = homology(build_complex(g));
    if (hs.h2 != h.betti[2])
        throw GemError(ErrorCode::not_simple, "2-handle count disagrees with the second Betti number");
    return hs;
}

ComplexityBounds complexity_bounds(const Gem& g) {
    if (!g.is_contracted())
        throw GemError(ErrorCode::not_contracted, "gem-complexity bounds need a contracted gem");
    ComplexityBounds cb;
    cb.upper = g.pairs() - 1;
    SimplicityCertificate cert = is_simple(g);
    if (cert.simple) {
        HomologyProfile h = homology(build_complex(g));
        cb.exact = 3 * h.betti[2];
    }
    return cb;
}

bool InvariantReport::relation_d_all_pass() const {
    for (const auto& tc : relation_d)
        if (!tc.pass) return false;
    return true;
}

bool InvariantReport::spheres_all_pass() const {
    for (const auto& sc : spheres)
        if (!sc.all_spheres) return false;
    return true;
}

bool InvariantReport::all_checks_pass() const {
    for (const auto& c : checks)
        if (c.applicable && !c.pass) return false;
    return true;
}

InvariantReport invariant_report(const Gem& g) {
    InvariantReport rep;
    rep.order = g.order();
    rep.residues = g.residue_table();
    Bipartition bp = g.bipartition();
    rep.bipartite = bp.bipartite;
    rep.contracted = true;
    for (ColorSet q : color_quads())
        if (rep.residues.g(q) != 1) rep.contracted = false;

    rep.chi = euler_characteristic(rep.residues, rep.order);
    Pseudocomplex k = build_complex(g);
    rep.face_vector = k.face_vector();
    rep.chi_faces = 0;
    for (int d = 0; d <= 4; ++d) rep.chi_faces += (d % 2 == 0 ? 1 : -1) * rep.face_vector[d];
    rep.homology = homology(k);
    rep.relation_d = check_relation_d(rep.residues, rep.order);
    rep.spheres = check_sphere_3residues(g);

    bool genus_ok = false;
    if (rep.bipartite) {
        try {
            rep.genus = genus_spectrum(rep.residues, rep.order, true);
            genus_ok = true;
        } catch (const GemError&) {
            genus_ok = false;
        }
    }
    if (rep.contracted) {
        rep.simplicity = is_simple(g);
        ComplexityBounds cb;
        cb.upper = g.pairs() - 1;
        if (rep.simplicity->simple) cb.exact = 3 * rep.homology.betti[2];
        rep.complexity = cb;
        if (rep.simplicity->simple)
            for (ColorSet rs : color_pairs())
                rep.handles.push_back(HandleSummary{rs, 1, rep.residues.g(rs) - 1, 1});
    }

    // ---- Named identity checks -------------------------------------------
    const int p = rep.order / 2;
    const int beta2 = rep.homology.betti[2];
    const auto& betti = rep.homology.betti;
    const bool simple = rep.is_simple_gem();
    const bool manifold_grade = rep.contracted && rep.relation_d_all_pass() && rep.spheres_all_pass();
    auto add = [&](IdentityCheck c) { rep.checks.push_back(std::move(c)); };

    {
        IdentityCheck c;
        c.name = "relation_d";
        c.applicable = true;
        c.pass = rep.relation_d_all_pass();
        for (const auto& tc : rep.relation_d)
            if (!tc.pass) c.detail += (c.detail.empty() ? "fails on " : ", ") + tc.triple.to_string();
        add(c);
    }
    {
        IdentityCheck c;
        c.name = "sphere_residues";
        c.applicable = true;
        c.pass = rep.spheres_all_pass();
        for (const auto& sc : rep.spheres)
            if (!sc.all_spheres) c.detail += (c.detail.empty() ? "non-sphere " : ", ") + sc.triple.to_string();
        add(c);
    }
    {
        IdentityCheck c;
        c.name = "euler_cross_check";
        c.applicable = true;
        c.lhs = rep.chi;
        c.rhs = rep.chi_faces;
        c.pass = c.lhs == c.rhs;
        add(c);
    }
    {
        IdentityCheck c;
        c.name = "genus_integrality";
        c.applicable = rep.bipartite;
        c.pass = !c.applicable || genus_ok;
        add(c);
    }
    {
        IdentityCheck c;
        c.name = "duality";
        c.applicable = manifold_grade && rep.bipartite;
        c.pass = !c.applicable || (betti[0] == 1 && betti[4] == 1 && betti[1] == betti[3]);
        if (c.applicable)
            c.detail = "betti " + std::to_string(betti[0]) + "," + std::to_string(betti[1]) + "," +
                       std::to_string(betti[2]) + "," + std::to_string(betti[3]) + "," + std::to_string(betti[4]);
        add(c);
    }
    {
        // For simple crystallizations every pair count equals 1 + beta_2.
        // Computed for any gem so the report stays informative; only simple
        // gems gate the exit code on it.
        IdentityCheck c;
        c.name = "pair_count_identity";
        c.applicable = simple;
        c.rhs = 1 + beta2;
        c.pass = true;
        for (ColorSet pr : color_pairs()) {
            c.lhs = rep.residues.g(pr);
            if (c.lhs != c.rhs) {
                c.pass = false;
                c.detail = "pair " + pr.to_string();
                break;
            }
        }
        add(c);
    }
    {
        // For simple crystallizations p = 1 + 3*beta_2.
        IdentityCheck c;
        c.name = "order_identity";
        c.applicable = simple;
        c.lhs = p;
        c.rhs = 1 + 3 * beta2;
        c.pass = c.lhs == c.rhs;
        add(c);
    }
    {
        // For simple crystallizations the genus is 2*beta_2 in every class.
        IdentityCheck c;
        c.name = "genus_identity";
        c.applicable = simple && genus_ok;
        if (genus_ok) {
            c.rhs = 2 * beta2;
            c.pass = true;
            for (const auto& [eps, r] : rep.genus->rho) {
                c.lhs = r;
                if (r != c.rhs) {
                    c.pass = false;
                    c.detail = "class " + eps.name();
                    break;
                }
            }
        }
        add(c);
    }
    {
        // Euler computation rearranged: 3*(2 + beta_2) = 15 - sum g_ijk + p,
        // valid when beta_1 = beta_3 = 0 on a manifold gem.
        IdentityCheck c;
        c.name = "triple_sum_identity";
        c.applicable = manifold_grade && betti[0] == 1 && betti[4] == 1 && betti[1] == 0 && betti[3] == 0;
        c.lhs = 3L * (2 + beta2);
        c.rhs = 15L - rep.residues.sum_triples() + p;
        c.pass = !c.applicable || c.lhs == c.rhs;
        add(c);
    }
    {
        // beta_2 <= floor(rho_min / 2) when beta_1 = 0.
        IdentityCheck c;
        c.name = "genus_bound";
        c.applicable = manifold_grade && genus_ok && betti[1] == 0;
        if (c.applicable) {
            c.lhs = beta2;
            c.rhs = rep.genus->min_rho / 2;
            c.pass = c.lhs <= c.rhs;
        }
        add(c);
    }
    {
        // A manifold gem with beta_1 = beta_3 = 0 at the minimal order
        // 2*(3*beta_2 + 1) must be simple (its triple counts sum to 10).
        IdentityCheck c;
        c.name = "minimal_order_simplicity";
        c.applicable = manifold_grade && betti[1] == 0 && betti[3] == 0 && rep.order == 2 * (3 * beta2 + 1);
        c.lhs = rep.residues.sum_triples();
        c.rhs = 10;
        c.pass = !c.applicable || (c.lhs == 10 && simple);
        add(c);
    }
    {
        // Handle counts against homology: g_rs - 1 = beta_2 for every partition.
        IdentityCheck c;
        c.name = "handles_match_beta2";
        c.applicable = simple;
        c.rhs = beta2;
        c.pass = true;
        for (ColorSet rs : color_pairs()) {
            c.lhs = rep.residues.g(rs) - 1;
            if (c.lhs != c.rhs) {
                c.pass = false;
                c.detail = "partition " + rs.to_string();
                break;
            }
        }
        add(c);
    }
    return rep;
}

std::vector<IdentityCheck> identity_checks(const Gem& g) { return invariant_report(g).checks; }

}  // namespace crysta
