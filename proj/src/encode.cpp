#include "mcx/encode.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <string>

#include "mcx/canonical.hpp"

namespace mcx {

namespace {

std::vector<Face> singleton_faces(int n) {
    std::vector<Face> faces;
    if (n > 0) faces.reserve(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) faces.push_back(Face{k});
    return faces;
}

std::string face_text(const std::vector<int>& labels) {
    std::string out = "{";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(labels[i]);
    }
    return out + "}";
}

// Sorted-unique copy: input repeats collapse, the subset is a set.
std::vector<int> as_set(const std::vector<int>& verts) {
    std::vector<int> s(verts);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

// Downward-closure check by codimension-1 subsets; walking one vertex at a
// time reaches the singletons, so the support requirement is covered too.
void check_closed(const std::set<std::vector<int>>& sets) {
    std::vector<int> sub;
    for (const auto& s : sets) {
        if (s.size() < 2) continue;
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            sub.clear();
            for (std::size_t i = 0; i < s.size(); ++i)
                if (i != drop) sub.push_back(s[i]);
            if (!sets.count(sub))
                fail(errc::not_downward_closed,
                     "family contains " + face_text(s) + " but not its face " + face_text(sub));
        }
    }
}

void check_singleton_range(int n, const std::set<std::vector<int>>& sets) {
    for (const auto& s : sets)
        if (s.size() == 1 && (s[0] < 1 || s[0] > n))
            fail(errc::vertex_out_of_range,
                 "declared vertex " + std::to_string(s[0]) + " outside {1.." + std::to_string(n) + "}");
}

// All strict multiset containments among the non-singleton faces, as
// 0-based index pairs into a face list whose first n entries are the
// singletons. Equal contents stay unrelated, so repeated copies are
// incomparable.
std::vector<std::pair<int, int>> containment_pairs(int n, const std::vector<Face>& faces) {
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = static_cast<std::size_t>(n); i < faces.size(); ++i)
        for (std::size_t j = static_cast<std::size_t>(n); j < faces.size(); ++j) {
            if (i == j) continue;
            if (faces[i].labels != faces[j].labels && faces[i].contained_in(faces[j]))
                pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    return pairs;
}

} // namespace

MultiComplex from_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    auto faces = singleton_faces(n);
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : edges) {
        if (a == b)
            fail(errc::loop_not_allowed, "loop at vertex " + std::to_string(a));
        std::pair<int, int> key{std::min(a, b), std::max(a, b)};
        if (!seen.insert(key).second)
            fail(errc::duplicate_edge, "edge " + face_text({key.first, key.second}) + " repeats");
        faces.push_back(Face{a, b});
    }
    return MultiComplex::validate(n, std::move(faces), {});
}

MultiComplex from_multigraph(int n, const std::vector<std::pair<int, int>>& edges) {
    auto faces = singleton_faces(n);
    for (auto [a, b] : edges) faces.push_back(Face{a, b}); // loop (a,a) -> face {a,a}
    return MultiComplex::validate(n, std::move(faces), {});
}

MultiComplex from_hypergraph(int n, const std::vector<std::vector<int>>& edges,
                             bool allow_singletons) {
    auto faces = singleton_faces(n);
    for (const auto& e : edges) {
        auto verts = as_set(e);
        if (verts.empty())
            fail(errc::empty_edge, "hyperedge with no vertices");
        if (verts.size() == 1) {
            if (!allow_singletons)
                fail(errc::singleton_hyperedge,
                     "hyperedge " + face_text(verts) + " collides with the vertex face");
            faces.push_back(Face{verts[0], verts[0]});
        } else {
            faces.push_back(Face(std::move(verts)));
        }
    }
    return MultiComplex::validate(n, std::move(faces), {});
}

MultiComplex from_simplicial(int n, const std::vector<std::vector<int>>& family) {
    std::set<std::vector<int>> sets;
    for (const auto& f : family) sets.insert(as_set(f));
    sets.erase(std::vector<int>{});
    check_singleton_range(n, sets);
    check_closed(sets);

    auto faces = singleton_faces(n);
    for (const auto& s : sets)
        if (s.size() >= 2) faces.push_back(Face(std::vector<int>(s)));
    auto pairs = containment_pairs(n, faces);
    return MultiComplex::validate(n, std::move(faces), pairs);
}

MultiComplex from_delta(int n, const std::vector<DeltaSimplex>& simplices,
                        const std::vector<std::pair<int, int>>& parent_of) {
    std::map<int, int> index_of; // user id -> 0-based index into `simplices`
    for (std::size_t i = 0; i < simplices.size(); ++i) {
        const auto& s = simplices[i];
        if (s.vertices.size() < 2)
            fail(errc::malformed_incidence,
                 "simplex " + std::to_string(s.id) + " has fewer than 2 vertices (0-simplices are implicit)");
        if (!index_of.emplace(s.id, static_cast<int>(i)).second)
            fail(errc::malformed_incidence, "simplex id " + std::to_string(s.id) + " repeats");
    }

    auto faces = singleton_faces(n);
    for (const auto& s : simplices) faces.push_back(Face(std::vector<int>(s.vertices)));

    std::vector<std::pair<int, int>> pairs;
    for (auto [child, parent] : parent_of) {
        const auto ci = index_of.find(child);
        const auto pi = index_of.find(parent);
        if (ci == index_of.end() || pi == index_of.end())
            fail(errc::malformed_incidence,
                 "incidence references unknown simplex id " +
                     std::to_string(ci == index_of.end() ? child : parent));
        const Face& lo = faces[static_cast<std::size_t>(n) + ci->second];
        const Face& hi = faces[static_cast<std::size_t>(n) + pi->second];
        if (lo.size() >= hi.size() || !lo.contained_in(hi))
            fail(errc::malformed_incidence,
                 "simplex " + std::to_string(child) + " is not a face of simplex " + std::to_string(parent));
        pairs.emplace_back(n + ci->second, n + pi->second);
    }
    return MultiComplex::validate(n, std::move(faces), pairs);
}

MultiComplex from_colored_simplicial(int n, const std::vector<std::vector<int>>& family,
                                     const std::vector<long long>& colors) {
    if (family.size() != colors.size())
        fail(errc::parse_error, "one color per declared face expected");
    std::map<std::vector<int>, long long> color_of;
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (colors[i] < 0)
            fail(errc::negative_color,
                 "color " + std::to_string(colors[i]) + " on face " + face_text(family[i]));
        auto s = as_set(family[i]);
        if (s.empty()) continue;
        if (!color_of.emplace(std::move(s), colors[i]).second)
            fail(errc::parse_error, "face " + face_text(family[i]) + " declared twice");
    }

    std::set<std::vector<int>> sets;
    for (const auto& [s, color] : color_of) sets.insert(s);
    check_singleton_range(n, sets);
    check_closed(sets);

    auto faces = singleton_faces(n);
    for (const auto& [s, color] : color_of) {
        if (s.size() == 1) {
            for (long long k = 0; k < color; ++k) faces.push_back(Face{s[0], s[0]});
        } else {
            for (long long k = 0; k <= color; ++k) faces.push_back(Face(std::vector<int>(s)));
        }
    }
    auto pairs = containment_pairs(n, faces);
    return MultiComplex::validate(n, std::move(faces), pairs);
}

Element pc_dim1(const MultiComplex& c) {
    const int dim = dimension(c);
    if (dim > 1)
        fail(errc::dimension_too_high, "pc_dim1 needs dimension <= 1, got " + std::to_string(dim));
    const int m = c.nonsingleton_count();
    // Edges of a dim <= 1 complex are pairwise incomparable, so every subset
    // is down-closed. (-1)^|E| counts the deleted edges.
    Element out;
    const std::uint32_t full = (m == 0) ? 0 : ((1u << m) - 1);
    for (std::uint32_t keep = 0;; ++keep) {
        const int deleted = m - std::popcount(keep);
        out.add(canonical_form(subcomplex(c, keep)), (deleted & 1) ? Rational(-1) : Rational(1));
        if (keep == full) break;
    }
    return out;
}

} // namespace mcx
