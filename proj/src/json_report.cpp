#include "crysta/json_report.hpp"

#include "crysta/digest.hpp"

namespace crysta {

Json report_envelope(const std::string& command, const std::string& input_name,
                     const std::string& input_bytes) {
    Json j;
    j["schema"] = 1;
    j["tool"] = "crysta";
    j["version"] = kToolVersion;
    j["command"] = command;
    j["input"] = input_name;
    j["digest"] = to_hex(fnv1a64(input_bytes));
    j["warnings"] = Json::array();
    return j;
}

Json to_json(const ResidueTable& t) {
    Json pairs = Json::object(), triples = Json::object(), hats = Json::object();
    for (ColorSet cs : color_pairs()) pairs[cs.to_string()] = t.g(cs);
    for (ColorSet cs : color_triples()) triples[cs.to_string()] = t.g(cs);
    for (int c = 0; c < kNumColors; ++c) hats[std::to_string(c)] = t.g(ColorSet::hat(c));
    return Json{{"pairs", pairs}, {"triples", triples}, {"hats", hats}};
}

Json to_json(const GenusSpectrum& gs) {
    Json classes = Json::object();
    for (const auto& [eps, r] : gs.rho) classes[eps.name()] = r;
    return Json{{"classes", classes}, {"min", gs.min_rho}};
}

Json to_json(const HomologyProfile& h) {
    Json torsion = Json::object();
    for (int d = 0; d < 5; ++d) {
        Json arr = Json::array();
        for (int64_t v : h.torsion[d]) arr.push_back(v);
        torsion[std::to_string(d)] = arr;
    }
    return Json{{"betti", h.betti}, {"torsion", torsion}};
}

Json to_json(const SimplicityCertificate& cert) {
    Json triples = Json::object();
    for (const auto& [cs, count] : cert.triples) triples[cs.to_string()] = count;
    Json j{{"simple", cert.simple}, {"triples", triples}};
    j["witness"] = cert.witness ? Json(cert.witness->to_string()) : Json(nullptr);
    return j;
}

Json to_json(const InvariantReport& rep) {
    Json j;
    j["order"] = rep.order;
    j["bipartite"] = rep.bipartite;
    j["contracted"] = rep.contracted;
    j["chi"] = rep.chi;
    j["chi_faces"] = rep.chi_faces;
    j["face_vector"] = rep.face_vector;
    j["residues"] = to_json(rep.residues);
    j["genus"] = rep.genus ? to_json(*rep.genus) : Json(nullptr);
    j["homology"] = to_json(rep.homology);
    j["simplicity"] = rep.simplicity ? to_json(*rep.simplicity) : Json(nullptr);
    {
        Json arr = Json::array();
        for (const auto& hs : rep.handles)
            arr.push_back(Json{{"rs", hs.rs.to_string()}, {"handles", {hs.h0, hs.h2, hs.h4}}});
        j["handles"] = arr;
    }
    if (rep.complexity) {
        Json c{{"upper", rep.complexity->upper}};
        c["exact"] = rep.complexity->exact ? Json(*rep.complexity->exact) : Json(nullptr);
        j["complexity"] = c;
    } else {
        j["complexity"] = nullptr;
    }
    {
        Json arr = Json::array();
        for (const auto& tc : rep.relation_d)
            arr.push_back(Json{{"triple", tc.triple.to_string()},
                               {"lhs", tc.lhs},
                               {"rhs", tc.rhs},
                               {"pass", tc.pass}});
        j["relation_d"] = arr;
    }
    {
        Json arr = Json::array();
        for (const auto& sc : rep.spheres) {
            Json comps = Json::array();
            for (const auto& c : sc.components)
                comps.push_back(Json{{"size", c.size}, {"chi", c.chi}, {"sphere", c.sphere}});
            arr.push_back(Json{{"triple", sc.triple.to_string()},
                               {"components", comps},
                               {"all_spheres", sc.all_spheres}});
        }
        j["sphere_residues"] = arr;
    }
    {
        Json arr = Json::array();
        for (const auto& c : rep.checks) {
            Json e{{"name", c.name}, {"applicable", c.applicable}, {"pass", c.pass}};
            e["lhs"] = c.lhs;
            e["rhs"] = c.rhs;
            if (!c.detail.empty()) e["detail"] = c.detail;
            arr.push_back(e);
        }
        j["checks"] = arr;
    }
    j["identities_pass"] = rep.all_checks_pass();
    return j;
}

Json catalog_entry_json(const CatalogEntry& e) {
    Json j;
    j["canonical"] = e.canonical.hex();
    j["order"] = e.gem.order();
    j["chi"] = e.report.chi;
    j["betti"] = e.report.homology.betti;
    j["torsion_free"] = e.report.homology.torsion_free();
    j["rho_min"] = e.report.genus ? Json(e.report.genus->min_rho) : Json(nullptr);
    Json s3 = Json::object();
    for (int c = 0; c < kNumColors; ++c) s3[std::to_string(c)] = to_string(e.s3[c]);
    j["s3"] = s3;
    j["manifold"] = e.manifold_status();
    j["certified"] = e.certified();
    j["rigid_dipole_free"] = e.rigid_dipole_free;
    j["key"] = e.classification_key;
    j["refinement"] = e.refinement_key;
    return j;
}

}  // namespace crysta
