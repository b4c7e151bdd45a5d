#pragma once

#include <map>
#include <utility>
#include <vector>

#include "mcx/canonical.hpp"
#include "mcx/multicomplex.hpp"

namespace mcx {

/// Which deletions produce the deck.
///   vertex_one_deleted: single-vertex deletions, n cards.
///   vertex_full: every non-empty vertex subset removed, 2^n - 1 cards.
///   edge: single-edge deletions, |E| cards (dimension <= 1 only).
///   edge_full: every edge subset removed including the empty one, 2^|E|
///   cards (the graph itself is a card).
enum class DeckKind { vertex_one_deleted, vertex_full, edge, edge_full };

const char* deck_kind_name(DeckKind kind);

/// Multiset of canonical keys of the indicated deletions, sorted.
std::vector<CanonicalKey> deck(const MultiComplex& c, DeckKind kind);

bool decks_equal(const MultiComplex& g, const MultiComplex& h, DeckKind kind);

/// is_primitive([g] - [h]); true whenever g, h share the relevant decks.
bool difference_is_primitive(const MultiComplex& g, const MultiComplex& h);

/// Iso classes of simple graphs on n vertices by exhaustive edge-set
/// enumeration with canonical-key dedup; sorted. n <= 7.
std::vector<CanonicalKey> graph_census(int n, int jobs = 1);

namespace detail {
// Census kernels kept separate so tests and benchmarks can compare them.
std::vector<CanonicalKey> graph_census_serial(int n);
std::vector<CanonicalKey> graph_census_parallel(int n, int jobs);
} // namespace detail

struct ScanReport {
    int n = 0;
    DeckKind kind = DeckKind::vertex_one_deleted;
    long long graph_count = 0;                     // iso classes scanned
    long long class_count = 0;                     // distinct deck fingerprints
    std::map<int, long long> class_size_histogram; // class size -> number of classes
    /// Deck-sharing classes of size >= 2, members sorted; and all unordered
    /// pairs drawn from them.
    std::vector<std::vector<CanonicalKey>> groups;
    std::vector<std::pair<CanonicalKey, CanonicalKey>> pairs;
    /// No disconnected graph shares its deck with any non-isomorphic graph.
    bool disconnected_unique = true;
};

/// Exhaustive deck-collision scan over all simple graphs on n vertices.
ScanReport scan_counterexamples(int n, DeckKind kind, int jobs = 1);

} // namespace mcx
