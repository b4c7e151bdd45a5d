#include "mcx/recon.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "mcx/encode.hpp"
#include "mcx/hopf.hpp"

#ifdef MCX_HAVE_OPENMP
#include <omp.h>
#endif

namespace mcx {

const char* deck_kind_name(DeckKind kind) {
    switch (kind) {
        case DeckKind::vertex_one_deleted: return "vertex";
        case DeckKind::vertex_full: return "vertex-full";
        case DeckKind::edge: return "edge";
        case DeckKind::edge_full: return "edge-full";
    }
    return "?";
}

std::vector<CanonicalKey> deck(const MultiComplex& c, DeckKind kind) {
    const int n = c.vertex_count();
    const int m = c.nonsingleton_count();
    const std::uint32_t full_v = (n == 0) ? 0 : ((n == 32 ? 0 : (1u << n)) - 1);
    std::vector<CanonicalKey> cards;
    switch (kind) {
        case DeckKind::vertex_one_deleted:
            for (int v = 1; v <= n; ++v)
                cards.push_back(canonical_form(restrict_to(c, full_v & ~(1u << (v - 1)))));
            break;
        case DeckKind::vertex_full:
            for (std::uint32_t keep = 0; keep < full_v; ++keep)
                cards.push_back(canonical_form(restrict_to(c, keep)));
            break;
        case DeckKind::edge:
            for (int e = 0; e < m; ++e)
                cards.push_back(canonical_form(delete_faces(c, {n + 1 + e})));
            break;
        case DeckKind::edge_full: {
            if (dimension(c) > 1)
                fail(errc::dimension_too_high, "edge deck needs dimension <= 1");
            const std::uint32_t full_m = (m == 0) ? 0 : ((1u << m) - 1);
            for (std::uint32_t keep = 0;; ++keep) {
                cards.push_back(canonical_form(subcomplex(c, keep)));
                if (keep == full_m) break;
            }
            break;
        }
    }
    std::sort(cards.begin(), cards.end());
    return cards;
}

bool decks_equal(const MultiComplex& g, const MultiComplex& h, DeckKind kind) {
    return deck(g, kind) == deck(h, kind);
}

bool difference_is_primitive(const MultiComplex& g, const MultiComplex& h) {
    return is_primitive(make_element(g) - make_element(h));
}

namespace {

std::vector<std::pair<int, int>> all_vertex_pairs(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) pairs.emplace_back(i, j);
    return pairs;
}

MultiComplex graph_from_mask(int n, const std::vector<std::pair<int, int>>& pairs,
                             std::uint32_t mask) {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t k = 0; k < pairs.size(); ++k)
        if (mask & (1u << k)) edges.push_back(pairs[k]);
    return from_graph(n, edges);
}

void check_census_bound(int n) {
    if (n < 0 || n > 7)
        fail(errc::size_limit_exceeded,
             "graph scan bounded to n <= 7, got n = " + std::to_string(n));
}

} // namespace

namespace detail {

std::vector<CanonicalKey> graph_census_serial(int n) {
    check_census_bound(n);
    const auto pairs = all_vertex_pairs(n);
    const std::uint32_t full = (pairs.empty() ? 0 : (1u << pairs.size()) - 1);
    std::set<CanonicalKey> seen;
    for (std::uint32_t mask = 0;; ++mask) {
        seen.insert(canonical_form(graph_from_mask(n, pairs, mask)));
        if (mask == full) break;
    }
    return {seen.begin(), seen.end()};
}

std::vector<CanonicalKey> graph_census_parallel(int n, int jobs) {
    check_census_bound(n);
#ifndef MCX_HAVE_OPENMP
    (void)jobs;
    return graph_census_serial(n);
#else
    const auto pairs = all_vertex_pairs(n);
    const std::int64_t count = std::int64_t{1} << pairs.size();
    std::set<CanonicalKey> seen;
    if (jobs < 1) jobs = omp_get_max_threads();
#pragma omp parallel num_threads(jobs)
    {
        std::set<CanonicalKey> local;
#pragma omp for schedule(dynamic, 256)
        for (std::int64_t mask = 0; mask < count; ++mask)
            local.insert(canonical_form(graph_from_mask(n, pairs, static_cast<std::uint32_t>(mask))));
#pragma omp critical(mcx_census_merge)
        seen.merge(local);
    }
    return {seen.begin(), seen.end()};
#endif
}

} // namespace detail

std::vector<CanonicalKey> graph_census(int n, int jobs) {
    if (jobs != 1) return detail::graph_census_parallel(n, jobs);
    return detail::graph_census_serial(n);
}

ScanReport scan_counterexamples(int n, DeckKind kind, int jobs) {
    ScanReport report;
    report.n = n;
    report.kind = kind;
    const auto keys = graph_census(n, jobs);
    report.graph_count = static_cast<long long>(keys.size());

    std::map<std::vector<CanonicalKey>, std::vector<CanonicalKey>> classes;
    for (const auto& key : keys) classes[deck(decode_key(key), kind)].push_back(key);

    report.class_count = static_cast<long long>(classes.size());
    for (const auto& [fingerprint, members] : classes) {
        report.class_size_histogram[static_cast<int>(members.size())] += 1;
        if (members.size() < 2) continue;
        report.groups.push_back(members);
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j)
                report.pairs.emplace_back(members[i], members[j]);
        for (const auto& member : members)
            if (component_count(decode_key(member)) != 1) report.disconnected_unique = false;
    }
    return report;
}

} // namespace mcx
