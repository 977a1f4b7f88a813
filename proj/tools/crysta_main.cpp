// crysta: invariants, certificates, moves and catalogs for 5-colored gems
// of closed orientable PL 4-manifolds.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "crysta/construct.hpp"
#include "crysta/digest.hpp"
#include "crysta/json_report.hpp"

namespace fs = std::filesystem;
using namespace crysta;

namespace {

// Exit codes: 0 pass, 1 semantic fail, 2 invalid input, 3 resource limit,
// 66 unreadable input file.
int exit_code_for(const GemError& e) {
    switch (e.code()) {
        case ErrorCode::io: return 66;
        case ErrorCode::syntax:
        case ErrorCode::odd_order:
        case ErrorCode::fixed_point:
        case ErrorCode::not_involution:
        case ErrorCode::disconnected: return 2;
        case ErrorCode::resource_limit: return 3;
        default: return 1;
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GemError(ErrorCode::io, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw GemError(ErrorCode::io, "cannot write '" + path + "'");
    out << content;
}

struct GlobalOpts {
    bool json = false;
    uint64_t seed = 1;
    int jobs = 1;
};

void emit_error(const GemError& e, bool json, const std::string& command) {
    if (json) {
        Json j;
        j["schema"] = 1;
        j["tool"] = "crysta";
        j["version"] = kToolVersion;
        j["command"] = command;
        j["error"] = {{"code", error_code_name(e.code())}, {"message", e.what()}};
        if (e.detail_a() >= 0) j["error"]["detail_a"] = e.detail_a();
        if (e.detail_b() >= 0) j["error"]["detail_b"] = e.detail_b();
        std::cout << j.dump() << "\n";
    } else {
        std::cerr << "error (" << error_code_name(e.code()) << "): " << e.what() << "\n";
    }
}

int cmd_validate(const std::string& path, const GlobalOpts& g) {
    std::string bytes = read_file(path);
    Gem gem = Gem::parse(bytes);
    if (g.json) {
        Json j = report_envelope("validate", path, bytes);
        j["valid"] = true;
        j["order"] = gem.order();
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "ok: valid gem of order " << gem.order() << "\n";
    }
    return 0;
}

int cmd_invariants(const std::string& path, const GlobalOpts& g) {
    std::string bytes = read_file(path);
    Gem gem = Gem::parse(bytes);
    InvariantReport rep = invariant_report(gem);
    if (g.json) {
        Json j = report_envelope("invariants", path, bytes);
        j["report"] = to_json(rep);
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "order      " << rep.order << "\n";
        std::cout << "bipartite  " << (rep.bipartite ? "yes" : "no") << "\n";
        std::cout << "contracted " << (rep.contracted ? "yes" : "no") << "\n";
        std::cout << "chi        " << rep.chi << "\n";
        std::cout << "betti     ";
        for (int b : rep.homology.betti) std::cout << " " << b;
        std::cout << "\n";
        if (rep.genus) {
            std::cout << "rho       ";
            for (const auto& [eps, r] : rep.genus->rho) std::cout << " " << r;
            std::cout << "  (min " << rep.genus->min_rho << ")\n";
        }
        if (rep.simplicity)
            std::cout << "simple     " << (rep.simplicity->simple ? "yes" : "no") << "\n";
        if (rep.complexity) {
            std::cout << "k          <= " << rep.complexity->upper;
            if (rep.complexity->exact) std::cout << " (exact " << *rep.complexity->exact << ")";
            std::cout << "\n";
        }
        for (const auto& c : rep.checks) {
            std::cout << "check " << c.name << ": "
                      << (!c.applicable ? "n/a" : (c.pass ? "pass" : "FAIL"));
            if (c.applicable && !c.detail.empty()) std::cout << " (" << c.detail << ")";
            std::cout << "\n";
        }
    }
    return rep.all_checks_pass() ? 0 : 1;
}

int cmd_skeleton(const std::string& path, const GlobalOpts& g) {
    std::string bytes = read_file(path);
    Gem gem = Gem::parse(bytes);
    Pseudocomplex k = build_complex(gem);
    auto mult = k.one_skeleton_multiplicity();
    std::vector<std::string> labels;
    for (const Simplex& s : k.simplices(0)) labels.push_back(s.labels.to_string());
    if (g.json) {
        Json j = report_envelope("skeleton", path, bytes);
        j["vertices"] = labels;
        j["multiplicity"] = mult;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "vertices:";
        for (const auto& l : labels) std::cout << " " << l;
        std::cout << "\n";
        for (const auto& row : mult) {
            for (size_t i = 0; i < row.size(); ++i) std::cout << (i ? " " : "") << row[i];
            std::cout << "\n";
        }
    }
    return 0;
}

int cmd_homology(const std::string& path, const GlobalOpts& g) {
    std::string bytes = read_file(path);
    Gem gem = Gem::parse(bytes);
    HomologyProfile h = homology(build_complex(gem));
    if (g.json) {
        Json j = report_envelope("homology", path, bytes);
        Json hy = to_json(h);
        j["betti"] = hy["betti"];
        j["torsion"] = hy["torsion"];
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "betti:";
        for (int b : h.betti) std::cout << " " << b;
        std::cout << "\n";
        std::cout << "torsion:" << (h.torsion_free() ? " none" : "");
        for (int d = 0; d < 5; ++d)
            for (int64_t t : h.torsion[d]) std::cout << " H" << d << "=Z/" << t;
        std::cout << "\n";
    }
    return 0;
}

int cmd_certify(const std::string& path, const GlobalOpts& g, int s3_budget) {
    std::string bytes = read_file(path);
    Gem gem = Gem::parse(bytes);
    Json j = report_envelope("certify-simple", path, bytes);

    InvariantReport rep = invariant_report(gem);
    std::string status;
    int code = 0;
    if (!rep.contracted) {
        status = "not-contracted";
        code = 1;
    } else if (!rep.bipartite) {
        status = "non-bipartite";
        code = 1;
    } else if (!rep.simplicity->simple) {
        status = "not-simple";
        code = 1;
        j["witness"] = rep.simplicity->witness->to_string();
    } else if (!rep.spheres_all_pass() || !rep.relation_d_all_pass()) {
        status = "not-manifold";
        code = 1;
    } else {
        status = "simple";
    }
    j["status"] = status;
    if (rep.simplicity) j["triples"] = to_json(*rep.simplicity)["triples"];

    if (status == "simple") {
        S3Options opt;
        opt.seed = g.seed;
        opt.restart_budget = s3_budget;
        auto verdicts = s3_verdicts(gem, opt);
        Json s3 = Json::object();
        bool all_yes = true;
        for (int c = 0; c < kNumColors; ++c) {
            s3[std::to_string(c)] = to_string(verdicts[c]);
            if (verdicts[c] != S3Verdict::yes) all_yes = false;
        }
        j["manifold"] = {{"spheres", true}, {"s3", s3}};
        if (!all_yes)
            j["warnings"].push_back("some 3-sphere verdicts are unknown; certificate is conditional");
        j["beta2"] = rep.beta2();
        j["rho"] = rep.genus->min_rho;
        j["k"] = rep.complexity->exact ? Json(*rep.complexity->exact) : Json(nullptr);
        Json checks = Json::array();
        for (const auto& c : rep.checks)
            if (c.applicable)
                checks.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"lhs", c.lhs}, {"rhs", c.rhs}});
        j["identities"] = checks;
        if (!rep.all_checks_pass()) code = 1;
    }

    if (g.json) {
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "status: " << status << "\n";
        if (j.contains("witness")) std::cout << "witness triple: " << j["witness"].get<std::string>() << "\n";
        if (status == "simple") {
            std::cout << "beta2 " << j["beta2"] << "  rho " << j["rho"] << "  k " << j["k"] << "\n";
            std::cout << "s3 verdicts:";
            for (auto& [key, val] : j["manifold"]["s3"].items())
                std::cout << " " << key << "=" << val.get<std::string>();
            std::cout << "\n";
        }
    }
    return code;
}

int cmd_simplify(const std::string& path, const GlobalOpts& g, int budget, const std::string& out) {
    std::string bytes = read_file(path);
    Gem gem = Gem::parse(bytes);
    SimplifyResult res = simplify(gem, g.seed, budget);
    std::string text = res.gem.serialize();
    for (const auto& line : res.log) text += "# move: " + line + "\n";
    if (g.json) {
        Json j = report_envelope("simplify", path, bytes);
        j["order_before"] = gem.order();
        j["order_after"] = res.gem.order();
        j["gem"] = res.gem.serialize();
        j["log"] = res.log;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << text;
    }
    if (!out.empty()) write_file(out, text);
    return 0;
}

int cmd_connsum(const std::string& path_a, const std::string& path_b, bool reverse, int va, int vb,
                const GlobalOpts& g, const std::string& out) {
    Gem a = Gem::parse(read_file(path_a));
    Gem b = Gem::parse(read_file(path_b));
    SumOrientation ori = reverse ? SumOrientation::opposite_class : SumOrientation::same_class;
    Gem sum = [&] {
        if (va >= 0 || vb >= 0) {
            SumSpec spec{a, b, va >= 0 ? va : 0, vb >= 0 ? vb : 0, ori};
            return connected_sum(spec);
        }
        return connected_sum(a, b, ori);
    }();
    if (g.json) {
        Json j = report_envelope("connsum", path_a + "," + path_b, a.serialize() + b.serialize());
        j["order"] = sum.order();
        j["gem"] = sum.serialize();
        std::cout << j.dump() << "\n";
    } else {
        std::cout << sum.serialize();
    }
    if (!out.empty()) write_file(out, sum.serialize());
    return 0;
}

int cmd_enumerate(int order, bool simple, const std::string& group_str, const GlobalOpts& g,
                  const std::string& out_dir, bool resume, int s3_budget, double time_budget) {
    if (!simple)
        throw GemError(ErrorCode::syntax,
                       "only --simple enumeration is supported (general catalogs are out of scope)");
    if (resume && out_dir.empty())
        throw GemError(ErrorCode::syntax, "--resume needs --out DIR");

    EnumerationTask task;
    task.order = order;
    task.group = symmetry_group_from_string(group_str);
    task.jobs = g.jobs;
    task.seed = g.seed;
    task.s3_restart_budget = s3_budget;
    task.time_budget_seconds = time_budget;
    if (resume) task.parts_dir = (fs::path(out_dir) / "parts").string();

    auto t0 = std::chrono::steady_clock::now();
    EnumerationResult res = enumerate_simple(task);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
                  .count();

    Json summary;
    summary["schema"] = 1;
    summary["order"] = order;
    summary["group"] = group_str;
    summary["entries"] = res.entries.size();
    summary["certified"] = res.certified;
    summary["rejected"] = res.rejected;
    summary["flagged"] = res.flagged;
    summary["exhaustive"] = res.exhaustive;
    summary["raw_solutions"] = res.raw_solutions;
    summary["subtasks"] = res.subtasks;
    summary["elapsed_ms"] = ms;
    {
        Json groups = Json::object();
        for (const auto& [key, members] : classify(res.entries)) groups[key] = members.size();
        summary["groups"] = groups;
        Json refined = Json::object();
        for (const auto& [key, members] : classify(res.entries, true)) refined[key] = members.size();
        summary["groups_refined"] = refined;
    }

    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        std::ofstream manifest(fs::path(out_dir) / "manifest.jsonl");
        for (const auto& e : res.entries) {
            std::string name = "o" + std::to_string(order) + "-" +
                               to_hex(fnv1a64(e.canonical.bytes.data(), e.canonical.bytes.size())) +
                               ".gem";
            write_file((fs::path(out_dir) / name).string(), e.gem.serialize());
            Json line = catalog_entry_json(e);
            line["file"] = name;
            manifest << line.dump() << "\n";
        }
        write_file((fs::path(out_dir) / "summary.json").string(), summary.dump(2) + "\n");
    }

    if (g.json) {
        if (out_dir.empty()) {
            Json lines = Json::array();
            for (const auto& e : res.entries) lines.push_back(catalog_entry_json(e));
            summary["catalog"] = lines;
        }
        std::cout << summary.dump() << "\n";
    } else {
        std::cout << "order " << order << " group " << group_str << " entries " << res.entries.size()
                  << " certified " << res.certified << " rejected " << res.rejected << " flagged " << res.flagged << " exhaustive "
                  << (res.exhaustive ? "yes" : "no") << " elapsed_ms " << ms << "\n";
    }
    return res.exhaustive ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"crystallization toolkit for PL 4-manifolds"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_flag("--json", g.json, "emit JSON on stdout");
    app.add_option("--seed", g.seed, "seed for randomized searches");
    app.add_option("--jobs", g.jobs, "worker threads for enumeration");
    app.set_version_flag("--version", kToolVersion);

    std::string path, path_b, out, group = "vcr";
    int order = 2, budget = 1 << 20, s3_budget = 64, va = -1, vb = -1;
    bool simple = false, resume = false, reverse = false;
    double time_budget = 0;

    auto* validate = app.add_subcommand("validate", "check a gem file");
    validate->add_option("file", path)->required();

    auto* invariants = app.add_subcommand("invariants", "full invariant report");
    invariants->add_option("file", path)->required();

    auto* skeleton = app.add_subcommand("skeleton", "1-skeleton edge multiplicity matrix");
    skeleton->add_option("file", path)->required();

    auto* homology_cmd = app.add_subcommand("homology", "integral homology");
    homology_cmd->add_option("file", path)->required();

    auto* certify = app.add_subcommand("certify-simple", "simple-crystallization certificate");
    certify->add_option("file", path)->required();
    certify->add_option("--s3-budget", s3_budget, "restart budget for 3-sphere recognition");

    auto* simp = app.add_subcommand("simplify", "greedy dipole / rho-pair reduction");
    simp->add_option("file", path)->required();
    simp->add_option("--budget", budget, "maximum number of moves");
    simp->add_option("--out", out, "write the reduced gem here");

    auto* connsum = app.add_subcommand("connsum", "graph connected sum");
    connsum->add_option("file_a", path)->required();
    connsum->add_option("file_b", path_b)->required();
    connsum->add_flag("--reverse", reverse, "join opposite bipartition classes");
    connsum->add_option("--va", va, "vertex deleted from the first gem");
    connsum->add_option("--vb", vb, "vertex deleted from the second gem");
    connsum->add_option("--out", out, "write the sum here");

    auto* enumerate = app.add_subcommand("enumerate", "catalog simple crystallizations of one order");
    enumerate->add_option("--order", order, "gem order (vertex count)")->required();
    enumerate->add_flag("--simple", simple, "enumerate simple crystallizations");
    enumerate->add_option("--group", group, "dedup symmetry group: v, vc or vcr");
    enumerate->add_option("--out", out, "directory for gem files and manifest");
    enumerate->add_flag("--resume", resume, "reuse cached subtask results in OUT/parts");
    enumerate->add_option("--s3-budget", s3_budget, "restart budget for 3-sphere recognition");
    enumerate->add_option("--time-budget", time_budget, "abort after this many seconds (0 = none)");

    CLI11_PARSE(app, argc, argv);

    std::string cmd = app.get_subcommands().front()->get_name();
    try {
        if (validate->parsed()) return cmd_validate(path, g);
        if (invariants->parsed()) return cmd_invariants(path, g);
        if (skeleton->parsed()) return cmd_skeleton(path, g);
        if (homology_cmd->parsed()) return cmd_homology(path, g);
        if (certify->parsed()) return cmd_certify(path, g, s3_budget);
        if (simp->parsed()) return cmd_simplify(path, g, budget, out);
        if (connsum->parsed()) return cmd_connsum(path, path_b, reverse, va, vb, g, out);
        if (enumerate->parsed())
            return cmd_enumerate(order, simple, group, g, out, resume, s3_budget, time_budget);
    } catch (const GemError& e) {
        emit_error(e, g.json, cmd);
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 70;
    }
    return 2;
}
