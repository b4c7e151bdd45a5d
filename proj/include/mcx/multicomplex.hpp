#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mcx/errors.hpp"

namespace mcx {

/// Process-wide size bounds. Enumeration over spanning sub-complexes is
/// exponential in the face count, so both limits stay desk-scale.
struct Limits {
    int max_vertices = 16; // hard cap 16 (vertex subsets are iterated as bit masks)
    int max_faces = 24;    // non-singleton faces; hard cap 32 (masks are 32-bit)
};

Limits& limits();

/// One face of a multi-complex: a non-empty multiset of vertex labels,
/// stored as a sorted vector (repeats encode multiplicity).
struct Face {
    std::vector<int> labels;

    Face() = default;
    Face(std::initializer_list<int> init) : labels(init) { normalize(); }
    explicit Face(std::vector<int> l) : labels(std::move(l)) { normalize(); }

    void normalize();
    bool is_singleton() const { return labels.size() == 1; }
    std::size_t size() const { return labels.size(); }
    /// Distinct labels, ascending.
    std::vector<int> support() const;
    /// Multiset containment: every label of *this occurs in other with at
    /// least the same multiplicity.
    bool contained_in(const Face& other) const;

    bool operator==(const Face&) const = default;
    auto operator<=>(const Face&) const = default;
};

/// A finite family of multiset faces over a base set {1..n} with a partial
/// order subject to: each singleton {k} appears exactly once and sits below
/// exactly the faces whose support contains k, and every relation implies
/// multiset containment.
///
/// Faces are kept in a fixed canonical order (singletons first by vertex,
/// then non-singletons sorted by content and structural signature), so two
/// equal values are structurally identical. Face ids are 1-based positions
/// in that order; the singleton {k} always has id k. Values are immutable
/// after construction and safe to share across threads.
class MultiComplex {
public:
    MultiComplex() = default;

    /// Checks every axiom and returns the canonical-ordered complex.
    /// `faces` lists all faces including singletons; `order_pairs` are
    /// (lower, upper) 0-based indices into `faces`. Relations forced by the
    /// singleton axiom are added automatically.
    static MultiComplex validate(int n, std::vector<Face> faces,
                                 const std::vector<std::pair<int, int>>& order_pairs);

    /// Building block for operations whose output is valid by construction
    /// (restriction, sub-complex selection, disjoint union). Performs the
    /// canonical reordering but skips the axiom scans.
    static MultiComplex from_parts_unchecked(int n, std::vector<Face> faces,
                                             std::vector<std::uint64_t> down);

    int vertex_count() const { return n_; }
    /// Number of non-singleton faces.
    int nonsingleton_count() const { return m_; }
    int face_count() const { return n_ + m_; }
    bool empty() const { return n_ == 0; }

    /// 1-based face id; ids 1..n are the singletons.
    const Face& face(int id) const;
    /// Non-singleton face by 0-based index (id = n + 1 + idx).
    const Face& nonsingleton(int idx) const { return faces_[n_ + check_ns(idx)]; }

    /// Reflexive partial order on face ids.
    bool face_leq(int id_lo, int id_hi) const;
    /// Bit mask over 0-based face positions of everything <= the given face
    /// (includes the face itself).
    std::uint64_t down_mask(int id) const;
    /// Strict down-set restricted to non-singletons, as a mask over
    /// non-singleton indices.
    std::uint32_t nonsingleton_down(int idx) const;
    /// Support of a face as a bit mask over vertices (bit v-1 = vertex v).
    std::uint32_t support_mask(int id) const;

    /// Raw storage, canonical order: positions 0..n-1 singletons, n.. non-singletons.
    const std::vector<Face>& faces() const { return faces_; }
    const std::vector<std::uint64_t>& down() const { return down_; }

    /// Deterministic byte serialization of the labeled structure (n, m,
    /// non-singleton contents, strict order among non-singletons). Two
    /// complexes are equal iff their identity bytes are equal.
    std::string identity_bytes() const;

    bool operator==(const MultiComplex& other) const {
        return n_ == other.n_ && faces_ == other.faces_ && down_ == other.down_;
    }

private:
    int check_ns(int idx) const;

    int n_ = 0;
    int m_ = 0;
    std::vector<Face> faces_;
    std::vector<std::uint64_t> down_; // down_[i] = mask of positions j with face j <= face i
    std::vector<std::uint32_t> supp_; // supp_[i] = vertex bit mask of face i (derived)
};

// Structural operations. All are pure.

/// Disjoint union: shifts the second complex's labels past the first's.
MultiComplex disjoint_union(const MultiComplex& a, const MultiComplex& b);

/// Restriction to a vertex subset given as a bit mask; keeps faces whose
/// support lies inside, relabels vertices order-preserving to {1..|X|}.
MultiComplex restrict_to(const MultiComplex& c, std::uint32_t vertex_mask);
MultiComplex restrict_to(const MultiComplex& c, const std::vector<int>& vertices);

/// Vertex classes of path-connectivity with their restrictions, ordered by
/// smallest vertex.
std::vector<std::pair<std::vector<int>, MultiComplex>> connected_components(const MultiComplex& c);
int component_count(const MultiComplex& c);

/// Longest chain length in the face order; -1 for the empty complex.
int dimension(const MultiComplex& c);
/// Longest chain terminating at the face.
int face_dimension(const MultiComplex& c, int face_id);

/// A spanning sub-complex of its owner: the singletons plus a down-closed
/// set of non-singleton faces, identified by a bit mask over non-singleton
/// indices.
class SubComplexMask {
public:
    SubComplexMask(const MultiComplex& owner, std::uint32_t bits);

    const MultiComplex& owner() const { return *owner_; }
    std::uint32_t bits() const { return bits_; }
    int size() const;

    bool operator==(const SubComplexMask& other) const {
        return owner_ == other.owner_ && bits_ == other.bits_;
    }

private:
    const MultiComplex* owner_;
    std::uint32_t bits_;
};

SubComplexMask intersect_sub(const SubComplexMask& a, const SubComplexMask& b);

/// Down-closure of a set of face ids, as a spanning-sub-complex mask.
SubComplexMask generated_sub(const MultiComplex& c, const std::vector<int>& face_ids);

/// Materialize a mask as a complex on the same base set.
MultiComplex subcomplex(const MultiComplex& c, std::uint32_t mask_bits);
inline MultiComplex subcomplex(const SubComplexMask& mask) {
    return subcomplex(mask.owner(), mask.bits());
}

/// Delete dimension-1 faces of a dimension <= 1 complex (face ids must be
/// non-singletons). Same base set.
MultiComplex delete_faces(const MultiComplex& c, const std::vector<int>& edge_ids);

} // namespace mcx
