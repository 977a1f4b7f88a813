#include "crysta/construct.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "crysta/digest.hpp"

namespace crysta {

// ---------------------------------------------------------------------------
// Graph connected sum
// ---------------------------------------------------------------------------

Gem connected_sum(const SumSpec& spec) {
    const Gem& A = spec.a;
    const Gem& B = spec.b;
    if (spec.va < 0 || spec.va >= A.order() || spec.vb < 0 || spec.vb >= B.order())
        throw GemError(ErrorCode::syntax, "connected-sum vertex out of range");

    Bipartition ba = A.bipartition(), bb = B.bipartition();
    if (ba.bipartite && bb.bipartite) {
        bool same = ba.side[spec.va] == bb.side[spec.vb];
        bool want_same = spec.orientation == SumOrientation::same_class;
        if (same != want_same)
            throw GemError(ErrorCode::class_mismatch,
                           std::string("chosen vertices lie in ") + (same ? "the same" : "opposite") +
                               " bipartition classes but the " + (want_same ? "same" : "opposite") +
                               "-class join was requested");
    }

    const int na = A.order(), nb = B.order();
    std::vector<Vertex> ra(na, -1), rb(nb, -1);
    int next = 0;
    for (Vertex x = 0; x < na; ++x)
        if (x != spec.va) ra[x] = next++;
    for (Vertex y = 0; y < nb; ++y)
        if (y != spec.vb) rb[y] = next++;

    RawGem raw;
    raw.order = na + nb - 2;
    for (int c = 0; c < kNumColors; ++c) {
        raw.pairing[c].assign(raw.order, -1);
        for (Vertex x = 0; x < na; ++x) {
            if (x == spec.va) continue;
            Vertex y = A.partner(c, x);
            if (y != spec.va) raw.pairing[c][ra[x]] = ra[y];
        }
        for (Vertex x = 0; x < nb; ++x) {
            if (x == spec.vb) continue;
            Vertex y = B.partner(c, x);
            if (y != spec.vb) raw.pairing[c][rb[x]] = rb[y];
        }
        Vertex xa = A.partner(c, spec.va), xb = B.partner(c, spec.vb);
        raw.pairing[c][ra[xa]] = rb[xb];
        raw.pairing[c][rb[xb]] = ra[xa];
    }
    Gem out = Gem::validate(raw);

    // Simplicity is preserved under the sum: verify whenever both inputs qualify.
    auto simple_grade = [](const Gem& g) {
        for (ColorSet q : color_quads())
            if (g.residues(q).count != 1) return false;
        for (ColorSet t : color_triples())
            if (g.residues(t).count != 1) return false;
        return true;
    };
    if (simple_grade(A) && simple_grade(B) && !simple_grade(out))
        throw std::logic_error("connected sum of simple crystallizations lost simplicity");
    return out;
}

Gem connected_sum(const Gem& a, const Gem& b, SumOrientation orientation) {
    SumSpec spec{a, b, 0, 0, orientation};
    Bipartition bb = b.bipartition();
    if (bb.bipartite) {
        int want = orientation == SumOrientation::same_class ? 0 : 1;
        for (Vertex v = 0; v < b.order(); ++v)
            if (bb.side[v] == want) {
                spec.vb = v;
                break;
            }
    }
    return connected_sum(spec);
}

// ---------------------------------------------------------------------------
// Enumeration of simple crystallizations
// ---------------------------------------------------------------------------

namespace {

constexpr int kMaxV = 64;
using VArr = std::array<int8_t, kMaxV>;

struct MiniDsu {
    std::array<int8_t, kMaxV> parent;

    void init(int n) {
        for (int i = 0; i < n; ++i) parent[i] = int8_t(i);
    }
    int find(int v) const {
        while (parent[v] != v) v = parent[v];
        return v;
    }
    // returns false when already joined
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = int8_t(a);
        return true;
    }
};

struct PairWatch {
    MiniDsu dsu;
    int cycles = 0;
};
struct TripleWatch {
    MiniDsu dsu;
    int comps = 0;
};

/// Incremental constraints while assigning one color as a matching:
/// every pair with an earlier color must close exactly g_target cycles and
/// every triple with two earlier colors must end up connected.
struct Watchers {
    int npw = 0, ntw = 0;
    std::array<PairWatch, 4> pw;
    std::array<TripleWatch, 6> tw;
};

bool watchers_add_edge(Watchers& w, int a, int b, int remaining_after, int g_target) {
    for (int i = 0; i < w.npw; ++i) {
        auto& x = w.pw[i];
        if (!x.dsu.unite(a, b)) {
            if (++x.cycles > g_target) return false;
        }
        if (x.cycles + remaining_after < g_target) return false;
    }
    for (int i = 0; i < w.ntw; ++i) {
        auto& x = w.tw[i];
        if (x.dsu.unite(a, b)) --x.comps;
        if (x.comps - remaining_after > 1) return false;
    }
    return true;
}

Watchers make_watchers(int n, const std::array<VArr, 5>& inv, const std::vector<int>& earlier) {
    Watchers w;
    for (int i : earlier) {
        PairWatch x;
        x.dsu.init(n);
        for (int v = 0; v < n; ++v) x.dsu.unite(v, inv[i][v]);
        w.pw[w.npw++] = x;
    }
    for (size_t ai = 0; ai < earlier.size(); ++ai)
        for (size_t bi = ai + 1; bi < earlier.size(); ++bi) {
            TripleWatch t;
            t.dsu.init(n);
            for (int v = 0; v < n; ++v) {
                t.dsu.unite(v, inv[earlier[ai]][v]);
                t.dsu.unite(v, inv[earlier[bi]][v]);
            }
            t.comps = 0;
            for (int v = 0; v < n; ++v)
                if (t.dsu.find(v) == v) ++t.comps;
            w.tw[w.ntw++] = t;
        }
    return w;
}

struct MatchDfs {
    int p = 0, n = 0, g_target = 0;
    const VArr* lex_floor = nullptr;  // encoded by A-position; enforce enc >= floor
    std::function<void(const VArr&)> emit;
    std::atomic<bool>* abort = nullptr;
    long long nodes = 0;

    void run(const Watchers& w) {
        VArr enc{};
        rec(0, 0u, w, enc, lex_floor != nullptr);
    }

private:
    void rec(int idx, uint32_t used, const Watchers& w, VArr& enc, bool still_eq) {
        if (abort && abort->load(std::memory_order_relaxed)) return;
        if (idx == p) {
            emit(enc);
            return;
        }
        int a = 2 * idx;
        int lo = still_eq ? (*lex_floor)[idx] : 1;
        for (int b = 1; b < n; b += 2) {
            if (b < lo) continue;
            if (used & (1u << (b >> 1))) continue;
            Watchers w2 = w;
            ++nodes;
            if (!watchers_add_edge(w2, a, b, p - idx - 1, g_target)) continue;
            enc[idx] = int8_t(b);
            rec(idx + 1, used | (1u << (b >> 1)), w2, enc, still_eq && b == (*lex_floor)[idx]);
        }
    }
};

std::vector<std::vector<int>> partitions_into(int total, int parts) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int, int)> rec = [&](int remaining, int slots, int maxpart) {
        if (slots == 0) {
            if (remaining == 0) out.push_back(cur);
            return;
        }
        for (int k = std::min(maxpart, remaining - (slots - 1)); k >= 1; --k) {
            cur.push_back(k);
            rec(remaining - k, slots - 1, k);
            cur.pop_back();
        }
    };
    if (parts >= 1) rec(total, parts, total);
    return out;
}

/// Color 1 laid out canonically for a cycle type: consecutive pair blocks,
/// each block one alternating (0,1)-cycle.
void build_color1(const std::vector<int>& type, VArr& inv1) {
    int s = 0;
    for (int k : type) {
        for (int j = 0; j < k; ++j) {
            int vo = 2 * (s + j) + 1;
            int ve = 2 * (s + (j + 1) % k);
            inv1[vo] = int8_t(ve);
            inv1[ve] = int8_t(vo);
        }
        s += k;
    }
}

/// Vertex sequences of the (0,1)-cycles in the canonical layout.
std::vector<std::vector<int>> cycle_seqs(const std::vector<int>& type, const VArr& inv0,
                                         const VArr& inv1) {
    std::vector<std::vector<int>> seqs;
    int s = 0;
    for (int k : type) {
        std::vector<int> seq;
        int x = 2 * s;
        for (int t = 0; t < k; ++t) {
            seq.push_back(x);
            int y = inv0[x];
            seq.push_back(y);
            x = inv1[y];
        }
        seqs.push_back(seq);
        s += k;
    }
    return seqs;
}

/// Vertex permutations commuting with both color-0 and color-1 involutions
/// that also respect the global even/odd split: per cycle a rotation (even
/// shift, parity-preserving) or reflection (odd shift, parity-swapping) onto
/// an equal-length cycle, with the SAME parity behavior on every cycle —
/// mixed choices commute with colors 0 and 1 but map class-crossing
/// matchings outside the normalized search space. The all-reflection maps
/// swap the bipartition classes and are admitted only when the dedup group
/// includes orientation reversal.
std::vector<VArr> stab01_perms(const std::vector<int>& type,
                               const std::vector<std::vector<int>>& seqs, int n,
                               bool allow_class_swap) {
    std::map<int, std::vector<int>, std::greater<int>> by_len;
    for (size_t i = 0; i < type.size(); ++i) by_len[type[i]].push_back(int(i));

    std::vector<VArr> out;
    std::vector<std::pair<int, std::vector<int>>> classes(by_len.begin(), by_len.end());

    // choice state: per class a permutation of its cycles; per cycle a shift
    // of fixed parity (0 = rotations, 1 = reflections)
    std::function<void(size_t, std::vector<int>&, int)> rec_class =
        [&](size_t ci, std::vector<int>& target_of, int shift_parity) {
            if (ci == classes.size()) {
                int ncyc = int(type.size());
                std::vector<int> step(ncyc, 0);  // shift = 2*step + shift_parity
                for (;;) {
                    VArr perm{};
                    for (int c = 0; c < ncyc; ++c) {
                        const auto& src = seqs[c];
                        const auto& dst = seqs[target_of[c]];
                        int len2 = int(src.size());
                        int o = (2 * step[c] + shift_parity) % len2;
                        for (int q = 0; q < len2; ++q) {
                            int tq = (shift_parity == 0) ? (q + o) % len2
                                                         : ((o - q) % len2 + len2) % len2;
                            perm[src[q]] = int8_t(dst[tq]);
                        }
                    }
                    out.push_back(perm);
                    int c = 0;
                    while (c < ncyc) {
                        if (++step[c] < int(seqs[c].size()) / 2) break;
                        step[c] = 0;
                        ++c;
                    }
                    if (c == ncyc) break;
                }
                return;
            }
            auto idxs = classes[ci].second;
            std::sort(idxs.begin(), idxs.end());
            do {
                for (size_t t = 0; t < idxs.size(); ++t) target_of[classes[ci].second[t]] = idxs[t];
                rec_class(ci + 1, target_of, shift_parity);
            } while (std::next_permutation(idxs.begin(), idxs.end()));
        };
    std::vector<int> target_of(type.size(), 0);
    rec_class(0, target_of, 0);
    if (allow_class_swap) rec_class(0, target_of, 1);
    (void)n;
    return out;
}

VArr encode_matching(int p, const VArr& full_inv) {
    VArr e{};
    for (int idx = 0; idx < p; ++idx) e[idx] = full_inv[2 * idx];
    return e;
}

/// Encoding of a matching after relabeling vertices by perm.
VArr encode_transformed(int p, const VArr& full_inv, const VArr& perm) {
    VArr t{};
    for (int v = 0; v < 2 * p; ++v) t[perm[v]] = perm[full_inv[v]];
    VArr e{};
    for (int idx = 0; idx < p; ++idx) e[idx] = t[2 * idx];
    return e;
}

bool lex_less(const VArr& a, const VArr& b, int p) {
    for (int i = 0; i < p; ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

std::string gem_compact(const Gem& g) {
    std::string s = std::to_string(g.order());
    for (int c = 0; c < kNumColors; ++c) {
        s += '|';
        for (Vertex v = 0; v < g.order(); ++v) {
            if (v) s += ',';
            s += std::to_string(g.partner(c, v));
        }
    }
    return s;
}

Gem gem_from_compact(const std::string& s) {
    try {
        RawGem raw;
        std::vector<std::string> fields;
        std::string cur;
        for (char ch : s) {
            if (ch == '|') {
                fields.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(ch);
            }
        }
        fields.push_back(cur);
        if (fields.size() != 6) throw GemError(ErrorCode::io, "corrupt cached gem record");
        raw.order = std::stoi(fields[0]);
        for (int c = 0; c < kNumColors; ++c) {
            std::istringstream is(fields[c + 1]);
            std::string tok;
            while (std::getline(is, tok, ',')) raw.pairing[c].push_back(Vertex(std::stoi(tok)));
        }
        return Gem::validate(raw);
    } catch (const GemError&) {
        throw;
    } catch (const std::exception&) {
        throw GemError(ErrorCode::io, "corrupt cached gem record");
    }
}

struct Subtask {
    int type_index = 0;
    VArr m2{};
};

std::string classification_key_of(const InvariantReport& rep) {
    std::string key = "chi=" + std::to_string(rep.chi) + ";betti=";
    for (int d = 0; d < 5; ++d) key += (d ? "," : "") + std::to_string(rep.homology.betti[d]);
    key += ";torsion=";
    bool first = true;
    for (int d = 0; d < 5; ++d)
        for (int64_t t : rep.homology.torsion[d]) {
            if (!first) key += ",";
            key += std::to_string(d) + ":" + std::to_string(t);
            first = false;
        }
    key += ";rho=";
    if (rep.genus) {
        for (size_t i = 0; i < rep.genus->rho.size(); ++i)
            key += (i ? "," : "") + std::to_string(rep.genus->rho[i].second);
    } else {
        key += "n/a";
    }
    bool all_equal = true;
    int first_g = rep.residues.g(ColorSet::of({0, 1}));
    for (ColorSet pr : color_pairs())
        if (rep.residues.g(pr) != first_g) all_equal = false;
    key += ";gij=";
    key += all_equal ? ("eq" + std::to_string(first_g)) : "mixed";
    return key;
}

std::string refinement_key_of(const Gem& g) {
    std::vector<std::string> per_pair;
    for (ColorSet pr : color_pairs()) {
        ResidueComponents rc = g.residues(pr);
        std::vector<int> lens;
        for (const auto& comp : rc.members) lens.push_back(int(comp.size()));
        std::sort(lens.rbegin(), lens.rend());
        std::string s;
        for (size_t i = 0; i < lens.size(); ++i) s += (i ? "." : "") + std::to_string(lens[i]);
        per_pair.push_back(s);
    }
    std::sort(per_pair.begin(), per_pair.end());
    std::string key;
    for (size_t i = 0; i < per_pair.size(); ++i) key += (i ? "|" : "") + per_pair[i];
    return key;
}

}  // namespace

EnumerationResult enumerate_simple(const EnumerationTask& task) {
    namespace fs = std::filesystem;
    EnumerationResult result;
    const int n = task.order;
    if (n < 2 || n % 2 != 0)
        throw GemError(ErrorCode::odd_order, "enumeration order must be a positive even integer");
    if (n > kMaxV)
        throw GemError(ErrorCode::resource_limit,
                       "enumeration supports order <= " + std::to_string(kMaxV));
    const int p = n / 2;

    // Every simple manifold gem has all pair counts equal to (p+2)/3: the ten
    // sphere conditions with unit triple counts force it. Non-integral target
    // means no catalog entries at this order.
    if ((p + 2) % 3 != 0) return result;
    const int g_target = (p + 2) / 3;
    if (g_target > p) return result;

    const bool use_lex = task.group != SymmetryGroup::vertex;
    const bool allow_class_swap = task.group == SymmetryGroup::vertex_color_reflection;

    VArr inv0{};
    for (int i = 0; i < p; ++i) {
        inv0[2 * i] = int8_t(2 * i + 1);
        inv0[2 * i + 1] = int8_t(2 * i);
    }

    // Subtasks: one per (color-1 cycle type, admissible color-2 matching).
    auto types = partitions_into(p, g_target);
    std::vector<VArr> inv1_of_type(types.size());
    std::vector<std::vector<VArr>> stab_of_type(types.size());
    std::vector<Subtask> subtasks;
    for (size_t ti = 0; ti < types.size(); ++ti) {
        VArr inv1{};
        build_color1(types[ti], inv1);
        inv1_of_type[ti] = inv1;
        auto seqs = cycle_seqs(types[ti], inv0, inv1);
        stab_of_type[ti] = stab01_perms(types[ti], seqs, n, allow_class_swap);
        const auto& stab = stab_of_type[ti];

        std::array<VArr, 5> inv{};
        inv[0] = inv0;
        inv[1] = inv1;
        Watchers w2 = make_watchers(n, inv, {0, 1});
        MatchDfs dfs;
        dfs.p = p;
        dfs.n = n;
        dfs.g_target = g_target;
        dfs.emit = [&](const VArr& enc) {
            VArr full{};
            for (int idx = 0; idx < p; ++idx) {
                full[2 * idx] = enc[idx];
                full[enc[idx]] = int8_t(2 * idx);
            }
            // keep only the lexicographic minimum of the stabilizer orbit
            for (const VArr& perm : stab) {
                VArr other = encode_transformed(p, full, perm);
                if (lex_less(other, enc, p)) return;
            }
            subtasks.push_back(Subtask{int(ti), full});
        };
        dfs.run(w2);
    }
    result.subtasks = long(subtasks.size());

    // Optional parts cache for resumable runs.
    bool use_parts = !task.parts_dir.empty();
    if (use_parts) {
        fs::create_directories(task.parts_dir);
        fs::path meta = fs::path(task.parts_dir) / "meta.txt";
        std::string expect = "order=" + std::to_string(n) + " group=" + to_string(task.group) +
                             " subtasks=" + std::to_string(subtasks.size());
        if (fs::exists(meta)) {
            std::ifstream in(meta);
            std::string got((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
            while (!got.empty() && (got.back() == '\n' || got.back() == '\r')) got.pop_back();
            if (got != expect)
                throw GemError(ErrorCode::io, "parts directory was produced by a different task: " + got);
        } else {
            std::ofstream out(meta);
            out << expect << "\n";
        }
    }

    std::mutex merge_mutex;
    std::map<std::string, Gem> unique;  // canonical bytes -> gem
    std::atomic<bool> abort{false};
    std::atomic<size_t> next{0};
    std::atomic<long long> raw_count{0};
    std::exception_ptr worker_error;
    std::mutex error_mutex;
    auto capture_error = [&] {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!worker_error) worker_error = std::current_exception();
        abort.store(true);
    };
    auto t0 = std::chrono::steady_clock::now();

    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= subtasks.size()) break;
            if (abort.load()) break;
            if (task.time_budget_seconds > 0 && elapsed() > task.time_budget_seconds) {
                abort.store(true);
                break;
            }
            const Subtask& st = subtasks[i];

            fs::path part_file;
            if (use_parts) {
                char name[32];
                std::snprintf(name, sizeof name, "part-%06zu.txt", i);
                part_file = fs::path(task.parts_dir) / name;
                if (fs::exists(part_file)) {
                    std::ifstream in(part_file);
                    std::string line;
                    std::lock_guard<std::mutex> lock(merge_mutex);
                    while (std::getline(in, line)) {
                        if (line.empty()) continue;
                        auto sp = line.find(' ');
                        if (sp == std::string::npos)
                            throw GemError(ErrorCode::io,
                                           "corrupt parts file " + part_file.string());
                        Gem g = gem_from_compact(line.substr(sp + 1));
                        CanonicalForm cf = canonical_form(g, task.group);
                        unique.emplace(std::string(cf.bytes.begin(), cf.bytes.end()), std::move(g));
                    }
                    continue;
                }
            }

            std::map<std::string, Gem> local;
            std::array<VArr, 5> inv{};
            inv[0] = inv0;
            inv[1] = inv1_of_type[st.type_index];
            inv[2] = st.m2;
            VArr enc2 = encode_matching(p, st.m2);

            Watchers w3 = make_watchers(n, inv, {0, 1, 2});
            MatchDfs dfs3;
            dfs3.p = p;
            dfs3.n = n;
            dfs3.g_target = g_target;
            dfs3.abort = &abort;
            if (use_lex) dfs3.lex_floor = &enc2;
            dfs3.emit = [&](const VArr& enc3) {
                std::array<VArr, 5> inv4 = inv;
                for (int idx = 0; idx < p; ++idx) {
                    inv4[3][2 * idx] = enc3[idx];
                    inv4[3][enc3[idx]] = int8_t(2 * idx);
                }
                VArr enc3_copy = enc3;
                Watchers w4 = make_watchers(n, inv4, {0, 1, 2, 3});
                MatchDfs dfs4;
                dfs4.p = p;
                dfs4.n = n;
                dfs4.g_target = g_target;
                dfs4.abort = &abort;
                if (use_lex) dfs4.lex_floor = &enc3_copy;
                dfs4.emit = [&](const VArr& enc4) {
                    RawGem raw;
                    raw.order = n;
                    for (int c = 0; c < 4; ++c)
                        raw.pairing[c].assign(inv4[c].begin(), inv4[c].begin() + n);
                    raw.pairing[4].assign(n, -1);
                    for (int idx = 0; idx < p; ++idx) {
                        raw.pairing[4][2 * idx] = enc4[idx];
                        raw.pairing[4][enc4[idx]] = Vertex(2 * idx);
                    }
                    Gem g = Gem::unchecked(std::move(raw));
                    raw_count.fetch_add(1, std::memory_order_relaxed);
                    CanonicalForm cf = canonical_form(g, task.group);
                    local.emplace(std::string(cf.bytes.begin(), cf.bytes.end()), std::move(g));
                };
                dfs4.run(w4);
            };
            dfs3.run(w3);

            if (abort.load()) break;  // partial subtask: do not cache or merge
            if (use_parts) {
                fs::path tmp = part_file;
                tmp += ".tmp";
                {
                    std::ofstream out(tmp);
                    for (const auto& [key, g] : local) {
                        CanonicalForm cf;
                        cf.bytes.assign(key.begin(), key.end());
                        out << cf.hex() << ' ' << gem_compact(g) << "\n";
                    }
                }
                fs::rename(tmp, part_file);
            }
            std::lock_guard<std::mutex> lock(merge_mutex);
            for (auto& [key, g] : local) unique.emplace(key, std::move(g));
        }
    };

    auto guarded_worker = [&] {
        try {
            worker();
        } catch (...) {
            capture_error();
        }
    };
    int jobs = std::max(1, task.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(guarded_worker);
        for (auto& th : pool) th.join();
        if (worker_error) std::rethrow_exception(worker_error);
    }

    result.exhaustive = !abort.load();
    result.raw_solutions = raw_count.load();

    // Reports and manifold verdicts per unique class, fanned out over the
    // same worker count; entry order stays fixed by the canonical sort.
    std::vector<std::pair<const std::string*, const Gem*>> items;
    items.reserve(unique.size());
    for (auto& [key, g] : unique) items.emplace_back(&key, &g);
    std::vector<CatalogEntry> entries;
    entries.reserve(items.size());
    for (auto& [key, g] : items)
        entries.push_back(CatalogEntry{CanonicalForm{}, *g, InvariantReport{}, {}, {}, false, "", ""});

    std::atomic<size_t> next_entry{0};
    auto build_entries = [&] {
        for (;;) {
            size_t i = next_entry.fetch_add(1);
            if (i >= items.size()) break;
            const std::string& key = *items[i].first;
            const Gem& g = *items[i].second;
            CatalogEntry& entry = entries[i];
            entry.canonical.bytes.assign(key.begin(), key.end());
            entry.report = invariant_report(g);
            S3Options opt;
            opt.seed = task.seed ^ fnv1a64(key);
            opt.restart_budget = task.s3_restart_budget;
            entry.s3 = s3_verdicts(g, opt);
            for (int c = 0; c < kNumColors; ++c) {
                if (entry.s3[c] == S3Verdict::yes) continue;
                for (const FourGraph& fg : hat_residues(g, c)) {
                    FourGraphHomology h = four_graph_homology(fg);
                    bool trivial = h.betti == std::array<int, 4>{1, 0, 0, 1};
                    for (const auto& t : h.torsion)
                        if (!t.empty()) trivial = false;
                    if (!trivial) entry.residue_not_sphere[c] = true;
                }
            }
            entry.rigid_dipole_free = is_rigid_dipole_free(g);
            entry.classification_key = classification_key_of(entry.report);
            entry.refinement_key = refinement_key_of(g);
        }
    };
    if (jobs == 1) {
        build_entries();
    } else {
        auto guarded_build = [&] {
            try {
                build_entries();
            } catch (...) {
                capture_error();
            }
        };
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(guarded_build);
        for (auto& th : pool) th.join();
        if (worker_error) std::rethrow_exception(worker_error);
    }

    for (CatalogEntry& entry : entries) {
        if (entry.certified())
            ++result.certified;
        else if (entry.rejected())
            ++result.rejected;
        else
            ++result.flagged;
        result.entries.push_back(std::move(entry));
    }
    return result;
}

std::map<std::string, std::vector<int>> classify(const std::vector<CatalogEntry>& entries,
                                                 bool refine) {
    std::map<std::string, std::vector<int>> groups;
    for (size_t i = 0; i < entries.size(); ++i) {
        std::string key = entries[i].classification_key;
        if (refine) key += "||" + entries[i].refinement_key;
        groups[key].push_back(int(i));
    }
    return groups;
}

}  // namespace crysta
