// Acceptance battery: one pass/fail line per criterion, exit 0 only if all
// pass. argv[1] = path to the mcx CLI binary, argv[2] = corpus directory.

#include <sys/wait.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mcx/encode.hpp"
#include "mcx/hopf.hpp"
#include "mcx/lattice.hpp"
#include "mcx/recon.hpp"

using namespace mcx;
using nlohmann::json;

namespace {

std::string cli_path;
std::string corpus_dir;
int failed = 0;

void run(int id, const std::string& label, const std::function<std::string()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string problem;
    try {
        problem = body();
    } catch (const std::exception& e) {
        problem = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (problem.empty()) {
        std::printf("[PASS] criterion %2d: %s (%.2fs)\n", id, label.c_str(), secs);
    } else {
        std::printf("[FAIL] criterion %2d: %s (%.2fs) -- %s\n", id, label.c_str(), secs,
                    problem.c_str());
        ++failed;
    }
    std::fflush(stdout);
}

std::pair<int, std::string> run_cli(const std::string& args) {
    const std::string cmd = "\"" + cli_path + "\" " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

MultiComplex graph(int n, const std::vector<std::pair<int, int>>& edges) {
    return from_graph(n, edges);
}

MultiComplex the_simplex2() {
    return from_simplicial(3, {{1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}});
}

MultiComplex the_delta() {
    return from_delta(3, {{4, {1, 2}}, {5, {1, 2}}, {6, {2, 3}}, {7, {1, 3}}, {8, {1, 2, 3}}},
                      {{4, 8}, {6, 8}, {7, 8}});
}

// Corpus (4): all simple graphs on <= 5 vertices, all multigraphs with <= 3
// vertices and <= 4 edges, the 2-simplex, and the Delta-complex example.
struct Corpus4 {
    std::vector<MultiComplex> all;
    std::vector<MultiComplex> connected;
    int simple_connected = 0;
};

const Corpus4& corpus4() {
    static const Corpus4 corpus = [] {
        Corpus4 out;
        std::set<CanonicalKey> seen;
        auto push = [&](const MultiComplex& c, bool simple) {
            if (!seen.insert(canonical_form(c)).second) return;
            out.all.push_back(c);
            if (component_count(c) == 1) {
                out.connected.push_back(c);
                out.simple_connected += simple ? 1 : 0;
            }
        };
        for (int n = 0; n <= 5; ++n)
            for (const auto& key : graph_census(n)) push(decode_key(key), true);
        for (int n = 1; n <= 3; ++n) {
            std::vector<std::pair<int, int>> types;
            for (int a = 1; a <= n; ++a)
                for (int b = a; b <= n; ++b) types.emplace_back(a, b);
            std::vector<int> pick;
            auto rec = [&](auto&& self, int start, int remaining) -> void {
                std::vector<std::pair<int, int>> edges;
                for (const int t : pick) edges.push_back(types[t]);
                push(from_multigraph(n, edges), false);
                if (remaining == 0) return;
                for (int t = start; t < static_cast<int>(types.size()); ++t) {
                    pick.push_back(t);
                    self(self, t, remaining - 1);
                    pick.pop_back();
                }
            };
            rec(rec, 0, 4);
        }
        push(the_simplex2(), false);
        push(the_delta(), false);
        return out;
    }();
    return corpus;
}

Element lin(std::initializer_list<std::pair<CanonicalKey, int>> terms) {
    Element out;
    for (const auto& [key, coeff] : terms) out.add(key, coeff);
    return out;
}

std::string criterion_1() {
    const auto k3 = graph(3, {{1, 2}, {1, 3}, {2, 3}});
    const auto expect = lin({{canonical_form(k3), 1},
                             {canonical_form(graph(3, {{1, 2}, {2, 3}})), -3},
                             {canonical_form(graph(3, {{1, 2}})), 3},
                             {canonical_form(graph(3, {})), -1}});
    if (primitive_pc(k3) != expect) return "P_K3 expansion differs";
    return "";
}

std::string criterion_2() {
    const auto p3 = graph(3, {{1, 2}, {2, 3}});
    const auto kv = canonical_form(graph(1, {}));
    const auto kv2 = canonical_form(graph(2, {}));
    const auto kk2 = canonical_form(graph(2, {{1, 2}}));
    const auto kp3 = canonical_form(p3);

    const auto basis = to_primitive_basis(p3);
    const std::map<std::vector<CanonicalKey>, long long> expect_basis{
        {{kp3}, 1}, {{kv, kk2}, 2}, {{kv, kv, kv}, 1}};
    if (basis != expect_basis) return "primitive-basis coefficients differ";

    TensorElement expect;
    expect.add(kp3, empty_key(), 1);
    expect.add(empty_key(), kp3, 1);
    expect.add(kv, kk2, 2);
    expect.add(kk2, kv, 2);
    expect.add(kv, kv2, 1);
    expect.add(kv2, kv, 1);
    if (coproduct_key(kp3) != expect) return "coproduct of the path differs";
    return "";
}

std::string criterion_3() {
    const auto mg = from_multigraph(2, {{1, 1}, {1, 2}, {1, 2}});
    const auto p = pc_dim1(mg);
    if (p.terms.size() != 6)
        return "expected 6 terms, got " + std::to_string(p.terms.size());
    std::multiset<long long> coeffs;
    for (const auto& [key, q] : p.terms) coeffs.insert(q.convert_to<long long>());
    if (coeffs != std::multiset<long long>{-2, -1, -1, 1, 1, 2})
        return "coefficient multiset differs";
    if (p != primitive_pc(mg)) return "pc_dim1 disagrees with primitive_pc";
    return "";
}

std::string criterion_4() {
    const auto& corpus = corpus4();
    if (corpus.simple_connected != 31)
        return "expected 31 connected simple graphs on <= 5 vertices, got " +
               std::to_string(corpus.simple_connected);
    int checked = 0;
    for (const auto& c : corpus.connected) {
        if (!is_primitive(primitive_pc(c)))
            return "P not primitive for a connected complex on " +
                   std::to_string(c.vertex_count()) + " vertices";
        ++checked;
    }
    if (checked < 33) return "corpus unexpectedly small";
    return "";
}

std::string criterion_5() {
    for (const auto& c : corpus4().all) {
        const auto x = make_element(c);
        const auto ax = antipode_axiomatic(x);
        if (ax != antipode_primitive(x))
            return "antipode formulas disagree on a complex with " +
                   std::to_string(c.vertex_count()) + " vertices";
        if (antipode_axiomatic(ax) != x) return "S(S(x)) != x";
    }
    return "";
}

std::string criterion_6() {
    auto divergence_of = [](const std::string& file) {
        const auto [code, out] =
            run_cli("antipode --method compare --json \"" + corpus_dir + "/" + file + "\"");
        std::map<std::string, std::string> div;
        if (code != 0) return std::make_pair(div, std::string("exit code " + std::to_string(code)));
        const json doc = json::parse(out, nullptr, false);
        if (doc.is_discarded()) return std::make_pair(div, std::string("unparseable JSON"));
        if (doc.at("axiom_equals_primitive") != true)
            return std::make_pair(div, std::string("axiom != primitive reported"));
        for (const auto& term : doc.at("divergence_axiom_minus_grouped"))
            div[term.at("key").get<std::string>()] = term.at("coeff").get<std::string>();
        return std::make_pair(div, std::string());
    };

    const auto kv2 = key_to_hex(canonical_form(graph(2, {})));
    const auto kv3 = key_to_hex(canonical_form(graph(3, {})));
    const auto kk2v = key_to_hex(canonical_form(graph(3, {{1, 2}})));

    auto [k2_div, k2_err] = divergence_of("k2.mcx");
    if (!k2_err.empty()) return "k2: " + k2_err;
    if (k2_div != std::map<std::string, std::string>{{kv2, "1"}})
        return "k2 divergence is not [v^2]";

    auto [p3_div, p3_err] = divergence_of("path3.mcx");
    if (!p3_err.empty()) return "path3: " + p3_err;
    if (p3_div != std::map<std::string, std::string>{{kv3, "-3"}, {kk2v, "2"}})
        return "path3 divergence is not 2[K2+v] - 3[v^3]";
    return "";
}

std::string criterion_7() {
    std::vector<CanonicalKey> keys;
    for (const auto& c : corpus4().all) keys.push_back(canonical_form(c));
    std::mt19937 rng(20260816u);
    std::vector<Element> sample;
    for (int i = 0; i < 200; ++i) {
        Element e;
        const int terms = 1 + static_cast<int>(rng() % 3);
        for (int t = 0; t < terms; ++t) {
            const auto& key = keys[rng() % keys.size()];
            const long long num = 1 + static_cast<long long>(rng() % 9);
            const long long den = 1 + static_cast<long long>(rng() % 9);
            e.add(key, Rational(rng() % 2 ? num : -num, den));
        }
        if (e.is_zero()) e.add(keys[0], 1);
        sample.push_back(e);
    }
    const auto report = verify_hopf_axioms(sample);
    if (report.elements_checked != 200)
        return "checked " + std::to_string(report.elements_checked) + " of 200";
    if (!report.ok()) return report.failures.front();
    return "";
}

std::string criterion_8() {
    long long intervals = 0;
    for (const auto& c : corpus4().all) {
        const SpanningLattice lat(c);
        for (const auto lo : lat.ideals())
            for (const auto hi : lat.ideals()) {
                if ((lo & ~hi) != 0) continue;
                if (lat.mobius(lo, hi) != lat.mobius_chain_oracle(lo, hi))
                    return "chain oracle mismatch in a lattice of size " +
                           std::to_string(lat.size());
                ++intervals;
            }
    }
    if (intervals < 100000) return "interval sweep unexpectedly small";

    // product lemma over disjoint unions of small members
    std::vector<const MultiComplex*> small;
    for (const auto& c : corpus4().all)
        if (c.nonsingleton_count() <= 3 && c.vertex_count() > 0) small.push_back(&c);
    for (const auto* a : small)
        for (const auto* b : small) {
            const auto u = disjoint_union(*a, *b);
            const int m1 = a->nonsingleton_count();
            // the union keeps the first factor's faces as the low mask bits
            for (int i = 0; i < m1; ++i)
                if (u.nonsingleton(i).labels != a->nonsingleton(i).labels)
                    return "face order not preserved under union";
            const SpanningLattice lu(u), la(*a), lb(*b);
            for (const auto ahi : la.ideals())
                for (const auto bhi : lb.ideals()) {
                    const std::uint32_t hi = ahi | (bhi << m1);
                    for (const auto alo : la.ideals()) {
                        if ((alo & ~ahi) != 0) continue;
                        for (const auto blo : lb.ideals()) {
                            if ((blo & ~bhi) != 0) continue;
                            const std::uint32_t lo = alo | (blo << m1);
                            if (lu.mobius(lo, hi) !=
                                la.mobius(alo, ahi) * lb.mobius(blo, bhi))
                                return "product lemma violated";
                        }
                    }
                }
        }
    return "";
}

std::string criterion_9() {
    std::vector<MultiComplex> graphs;
    for (int n = 0; n <= 4; ++n)
        for (const auto& key : graph_census(n)) graphs.push_back(decode_key(key));
    if (graphs.size() != 19) return "census of <= 4 vertices is off";

    auto subgraph_count = [](const MultiComplex& g, const CanonicalKey& hkey, int nh) {
        long long count = 0;
        const int n = g.vertex_count();
        for (std::uint32_t w = 0; w < (1u << n); ++w) {
            if (std::popcount(w) != nh) continue;
            const auto induced = restrict_to(g, w);
            const int m = induced.nonsingleton_count();
            for (std::uint32_t f = 0; f < (1u << m); ++f)
                if (canonical_form(subcomplex(induced, f)) == hkey) ++count;
        }
        return count;
    };

    for (const auto& g : graphs)
        for (const auto& h : graphs) {
            const long long mult = multiplicity(g, h); // cross-checks internally
            if (mult * automorphism_count(h) != embedding_count(g, h))
                return "multiplicity * |Aut| != embeddings";
            if (mult != subgraph_count(g, canonical_form(h), h.vertex_count()))
                return "multiplicity differs from direct subgraph counting";
        }
    return "";
}

std::string criterion_10() {
    const int expect[] = {4, 11, 34, 156};
    for (int n = 3; n <= 6; ++n) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto census = graph_census(n);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (static_cast<int>(census.size()) != expect[n - 3])
            return "n=" + std::to_string(n) + ": got " + std::to_string(census.size());
        if (n == 6 && secs > 60.0)
            return "n=6 census took " + std::to_string(secs) + "s (> 60s)";
    }
    return "";
}

std::string criterion_11() {
    const auto r2 = scan_counterexamples(2, DeckKind::vertex_one_deleted, 1);
    const auto expect_pair = std::make_pair(canonical_form(graph(2, {})),
                                            canonical_form(graph(2, {{1, 2}})));
    if (r2.pairs.size() != 1 || r2.pairs[0] != expect_pair)
        return "n=2 must yield exactly the {2K1, K2} pair";

    for (int n = 3; n <= 6; ++n) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = scan_counterexamples(n, DeckKind::vertex_one_deleted, 1);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!r.pairs.empty())
            return "n=" + std::to_string(n) + ": unexpected colliding pair";
        if (!r.disconnected_unique)
            return "n=" + std::to_string(n) + ": a disconnected graph is not deck-unique";
        if (n == 6 && secs > 300.0)
            return "n=6 scan took " + std::to_string(secs) + "s (> 300s)";
    }
    return "";
}

std::string criterion_12() {
    std::vector<Element> rows;
    for (int n = 1; n <= 4; ++n)
        for (const auto& key : graph_census(n)) {
            const auto g = decode_key(key);
            if (component_count(g) == 1) rows.push_back(primitive_pc(g));
        }
    if (rows.size() != 10)
        return "expected 10 connected graphs on <= 4 vertices, got " +
               std::to_string(rows.size());

    // exact Gaussian elimination over the sparse rows
    std::vector<std::map<CanonicalKey, Rational>> work;
    for (const auto& r : rows) work.push_back(r.terms);
    int rank = 0;
    for (std::size_t i = 0; i < work.size(); ++i) {
        if (work[i].empty()) continue;
        const auto pivot_key = work[i].begin()->first;
        const auto pivot_val = work[i].begin()->second;
        ++rank;
        for (std::size_t j = i + 1; j < work.size(); ++j) {
            const auto it = work[j].find(pivot_key);
            if (it == work[j].end()) continue;
            const Rational factor = it->second / pivot_val;
            for (const auto& [key, val] : work[i]) {
                auto& slot = work[j][key];
                slot -= factor * val;
                if (slot == 0) work[j].erase(key);
            }
        }
    }
    if (rank != 10) return "rank " + std::to_string(rank) + " != 10";
    return "";
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: %s <mcx-cli> <corpus-dir>\n", argv[0]);
        return 2;
    }
    cli_path = argv[1];
    corpus_dir = argv[2];

    run(1, "K3 primitive expansion", criterion_1);
    run(2, "path basis coefficients and coproduct", criterion_2);
    run(3, "multigraph pc_dim1 golden", criterion_3);
    run(4, "primitivity across the corpus", criterion_4);
    run(5, "antipode formulas agree, S is an involution", criterion_5);
    run(6, "grouped-antipode divergence via the CLI", criterion_6);
    run(7, "Hopf axiom battery on 200 sampled elements", criterion_7);
    run(8, "Moebius chain oracle and product lemma", criterion_8);
    run(9, "multiplicity versus embeddings and subgraph counts", criterion_9);
    run(10, "isomorphism census 4/11/34/156", criterion_10);
    run(11, "reconstruction scan n=2..6", criterion_11);
    run(12, "primitive family has full rank", criterion_12);

    std::printf("%d/12 criteria passed\n", 12 - failed);
    return failed == 0 ? 0 : 1;
}
