#include "mcx/multicomplex.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace mcx {

const char* errc_name(errc code) {
    switch (code) {
        case errc::missing_singleton: return "MissingSingleton";
        case errc::duplicate_singleton: return "DuplicateSingleton";
        case errc::containment_violation: return "ContainmentViolation";
        case errc::cycle_in_order: return "CycleInOrder";
        case errc::singleton_relation_violation: return "SingletonRelationViolation";
        case errc::vertex_out_of_range: return "VertexOutOfRange";
        case errc::owner_mismatch: return "OwnerMismatch";
        case errc::unknown_face: return "UnknownFace";
        case errc::dimension_too_high: return "DimensionTooHigh";
        case errc::not_an_edge: return "NotAnEdge";
        case errc::size_limit_exceeded: return "SizeLimitExceeded";
        case errc::cross_check_mismatch: return "CrossCheckMismatch";
        case errc::not_comparable: return "NotComparable";
        case errc::duplicate_edge: return "DuplicateEdge";
        case errc::loop_not_allowed: return "LoopNotAllowed";
        case errc::empty_edge: return "EmptyEdge";
        case errc::singleton_hyperedge: return "SingletonHyperedge";
        case errc::not_downward_closed: return "NotDownwardClosed";
        case errc::malformed_incidence: return "MalformedIncidence";
        case errc::negative_color: return "NegativeColor";
        case errc::empty_face: return "EmptyFace";
        case errc::parse_error: return "ParseError";
    }
    return "UnknownError";
}

Limits& limits() {
    static Limits instance;
    return instance;
}

void Face::normalize() {
    std::sort(labels.begin(), labels.end());
}

std::vector<int> Face::support() const {
    std::vector<int> out;
    for (int v : labels)
        if (out.empty() || out.back() != v) out.push_back(v);
    return out;
}

bool Face::contained_in(const Face& other) const {
    // both sorted; merge scan counting multiplicities
    std::size_t j = 0;
    for (int v : labels) {
        while (j < other.labels.size() && other.labels[j] < v) ++j;
        if (j == other.labels.size() || other.labels[j] != v) return false;
        ++j;
    }
    return true;
}

namespace {

std::uint32_t support_bits(const Face& f) {
    std::uint32_t bits = 0;
    for (int v : f.labels) bits |= 1u << (v - 1);
    return bits;
}

// Sort key for non-singleton faces: content first, then the multiset of
// contents strictly below (the down-set signature), ties kept in input order.
struct NsKey {
    const std::vector<int>* content;
    std::vector<std::vector<int>> downsig;
    int input_index;

    bool operator<(const NsKey& other) const {
        if (*content != *other.content) return *content < *other.content;
        if (downsig != other.downsig) return downsig < other.downsig;
        return input_index < other.input_index;
    }
};

// Shared tail of validate/from_parts_unchecked: puts faces in canonical
// order (singletons by vertex, non-singletons by NsKey) and remaps the
// closure masks. `down` is indexed like `faces`.
struct Assembled {
    int n;
    int m;
    std::vector<Face> faces;
    std::vector<std::uint64_t> down;
    std::vector<std::uint32_t> supp;
};

Assembled assemble(int n, std::vector<Face>&& faces, const std::vector<std::uint64_t>& down) {
    const int total = static_cast<int>(faces.size());
    std::vector<int> order(total, -1); // new position -> old index

    for (int i = 0; i < total; ++i)
        if (faces[i].is_singleton()) order[faces[i].labels[0] - 1] = i;

    std::vector<NsKey> keys;
    keys.reserve(total - n);
    for (int i = 0; i < total; ++i) {
        if (faces[i].is_singleton()) continue;
        NsKey k;
        k.content = &faces[i].labels;
        k.input_index = i;
        for (int j = 0; j < total; ++j)
            if (j != i && !faces[j].is_singleton() && (down[i] >> j & 1))
                k.downsig.push_back(faces[j].labels);
        std::sort(k.downsig.begin(), k.downsig.end());
        keys.push_back(std::move(k));
    }
    std::sort(keys.begin(), keys.end());
    for (int p = 0; p < static_cast<int>(keys.size()); ++p) order[n + p] = keys[p].input_index;

    std::vector<int> pos(total); // old index -> new position
    for (int p = 0; p < total; ++p) pos[order[p]] = p;

    Assembled out;
    out.n = n;
    out.m = total - n;
    out.faces.resize(total);
    out.down.assign(total, 0);
    out.supp.resize(total);
    for (int p = 0; p < total; ++p) {
        const int old = order[p];
        out.faces[p] = std::move(faces[old]);
        out.supp[p] = support_bits(out.faces[p]);
        for (int q = 0; q < total; ++q)
            if (down[old] >> order[q] & 1) out.down[p] |= std::uint64_t{1} << q;
    }
    return out;
}

} // namespace

MultiComplex MultiComplex::validate(int n, std::vector<Face> faces,
                                    const std::vector<std::pair<int, int>>& order_pairs) {
    if (n < 0) fail(errc::vertex_out_of_range, "vertex count is negative");
    const int max_n = std::min(limits().max_vertices, 16);
    const int max_m = std::min(limits().max_faces, 32);
    if (n > max_n)
        fail(errc::size_limit_exceeded,
             "vertex count " + std::to_string(n) + " exceeds limit " + std::to_string(max_n));

    const int total = static_cast<int>(faces.size());
    int m = 0;
    for (int i = 0; i < total; ++i) {
        faces[i].normalize();
        if (faces[i].labels.empty()) fail(errc::empty_face, "face " + std::to_string(i) + " is empty");
        for (int v : faces[i].labels)
            if (v < 1 || v > n)
                fail(errc::vertex_out_of_range,
                     "label " + std::to_string(v) + " outside {1.." + std::to_string(n) + "}");
        if (!faces[i].is_singleton()) ++m;
    }
    if (m > max_m)
        fail(errc::size_limit_exceeded, std::to_string(m) + " non-singleton faces exceed limit " +
                                            std::to_string(max_m));

    // Singleton census: {k} present exactly once for each vertex.
    std::vector<int> singleton_at(n, -1);
    for (int i = 0; i < total; ++i) {
        if (!faces[i].is_singleton()) continue;
        const int k = faces[i].labels[0];
        if (singleton_at[k - 1] >= 0)
            fail(errc::duplicate_singleton, "singleton {" + std::to_string(k) + "} repeated");
        singleton_at[k - 1] = i;
    }
    for (int k = 1; k <= n; ++k)
        if (singleton_at[k - 1] < 0)
            fail(errc::missing_singleton, "no singleton face for vertex " + std::to_string(k));

    std::vector<std::uint64_t> up(total, 0);
    for (int i = 0; i < total; ++i) up[i] = std::uint64_t{1} << i;

    for (const auto& [lo, hi] : order_pairs) {
        if (lo < 0 || lo >= total || hi < 0 || hi >= total)
            fail(errc::unknown_face, "order pair references face index " +
                                         std::to_string(lo < 0 || lo >= total ? lo : hi));
        if (lo == hi) continue;
        if (faces[lo].is_singleton()) {
            const int k = faces[lo].labels[0];
            const auto sup = faces[hi].support();
            if (!std::binary_search(sup.begin(), sup.end(), k))
                fail(errc::singleton_relation_violation,
                     "{" + std::to_string(k) + "} placed below a face not containing " +
                         std::to_string(k));
        } else if (faces[hi].is_singleton()) {
            fail(errc::containment_violation, "non-singleton face placed below a singleton");
        }
        up[lo] |= std::uint64_t{1} << hi;
    }

    // Relations forced by the singleton axiom.
    for (int i = 0; i < total; ++i) {
        if (faces[i].is_singleton()) continue;
        for (int k : faces[i].support()) up[singleton_at[k - 1]] |= std::uint64_t{1} << i;
    }

    // Reflexive-transitive closure (iterate to fixpoint; face counts are tiny).
    for (bool changed = true; changed;) {
        changed = false;
        for (int i = 0; i < total; ++i) {
            std::uint64_t acc = up[i];
            std::uint64_t rest = up[i];
            while (rest) {
                const int j = std::countr_zero(rest);
                rest &= rest - 1;
                acc |= up[j];
            }
            if (acc != up[i]) {
                up[i] = acc;
                changed = true;
            }
        }
    }

    for (int i = 0; i < total; ++i)
        for (int j = i + 1; j < total; ++j)
            if ((up[i] >> j & 1) && (up[j] >> i & 1))
                fail(errc::cycle_in_order, "faces " + std::to_string(i) + " and " +
                                               std::to_string(j) + " are mutually comparable");

    for (int i = 0; i < total; ++i) {
        std::uint64_t rest = up[i] & ~(std::uint64_t{1} << i);
        while (rest) {
            const int j = std::countr_zero(rest);
            rest &= rest - 1;
            if (!faces[i].contained_in(faces[j]))
                fail(errc::containment_violation,
                     "face " + std::to_string(i) + " below face " + std::to_string(j) +
                         " without multiset containment");
        }
    }

    std::vector<std::uint64_t> down(total, 0);
    for (int i = 0; i < total; ++i)
        for (int j = 0; j < total; ++j)
            if (up[j] >> i & 1) down[i] |= std::uint64_t{1} << j;

    return from_parts_unchecked(n, std::move(faces), std::move(down));
}

MultiComplex MultiComplex::from_parts_unchecked(int n, std::vector<Face> faces,
                                                std::vector<std::uint64_t> down) {
    Assembled a = assemble(n, std::move(faces), down);
    MultiComplex c;
    c.n_ = a.n;
    c.m_ = a.m;
    c.faces_ = std::move(a.faces);
    c.down_ = std::move(a.down);
    c.supp_ = std::move(a.supp);
    return c;
}

const Face& MultiComplex::face(int id) const {
    if (id < 1 || id > n_ + m_) fail(errc::unknown_face, "face id " + std::to_string(id));
    return faces_[id - 1];
}

int MultiComplex::check_ns(int idx) const {
    if (idx < 0 || idx >= m_) fail(errc::unknown_face, "non-singleton index " + std::to_string(idx));
    return idx;
}

bool MultiComplex::face_leq(int id_lo, int id_hi) const {
    face(id_lo);
    return down_mask(id_hi) >> (id_lo - 1) & 1;
}

std::uint64_t MultiComplex::down_mask(int id) const {
    face(id);
    return down_[id - 1];
}

std::uint32_t MultiComplex::nonsingleton_down(int idx) const {
    check_ns(idx);
    const std::uint64_t row = down_[n_ + idx] >> n_;
    return static_cast<std::uint32_t>(row) & ~(1u << idx);
}

std::uint32_t MultiComplex::support_mask(int id) const {
    face(id);
    return supp_[id - 1];
}

std::string MultiComplex::identity_bytes() const {
    std::string out;
    auto put16 = [&out](unsigned v) {
        out.push_back(static_cast<char>(v & 0xff));
        out.push_back(static_cast<char>(v >> 8 & 0xff));
    };
    put16(static_cast<unsigned>(n_));
    put16(static_cast<unsigned>(m_));
    for (int i = 0; i < m_; ++i) {
        const auto& labels = faces_[n_ + i].labels;
        put16(static_cast<unsigned>(labels.size()));
        for (int v : labels) out.push_back(static_cast<char>(v));
    }
    for (int i = 0; i < m_; ++i) {
        const std::uint32_t row = nonsingleton_down(i);
        for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>(row >> (8 * b) & 0xff));
    }
    return out;
}

MultiComplex disjoint_union(const MultiComplex& a, const MultiComplex& b) {
    const int n = a.vertex_count() + b.vertex_count();
    const int max_n = std::min(limits().max_vertices, 16);
    const int max_m = std::min(limits().max_faces, 32);
    if (n > max_n) fail(errc::size_limit_exceeded, "union has " + std::to_string(n) + " vertices");
    const int m = a.nonsingleton_count() + b.nonsingleton_count();
    if (m > max_m)
        fail(errc::size_limit_exceeded, "union has " + std::to_string(m) + " non-singleton faces");

    const int ta = a.face_count();
    std::vector<Face> faces;
    faces.reserve(ta + b.face_count());
    for (const Face& f : a.faces()) faces.push_back(f);
    for (const Face& f : b.faces()) {
        Face g = f;
        for (int& v : g.labels) v += a.vertex_count();
        faces.push_back(std::move(g));
    }
    std::vector<std::uint64_t> down;
    down.reserve(faces.size());
    for (std::uint64_t row : a.down()) down.push_back(row);
    for (std::uint64_t row : b.down()) down.push_back(row << ta);
    return MultiComplex::from_parts_unchecked(n, std::move(faces), std::move(down));
}

MultiComplex restrict_to(const MultiComplex& c, std::uint32_t vertex_mask) {
    const int n = c.vertex_count();
    if (n < 32 && (vertex_mask >> n) != 0)
        fail(errc::vertex_out_of_range, "restriction set has vertices beyond the base set");

    std::vector<int> new_label(n + 1, 0);
    int nx = 0;
    for (int v = 1; v <= n; ++v)
        if (vertex_mask >> (v - 1) & 1) new_label[v] = ++nx;

    const int total = c.face_count();
    std::vector<int> keep; // old positions, ascending
    std::vector<int> newpos(total, -1);
    for (int p = 0; p < total; ++p) {
        if ((c.support_mask(p + 1) & ~vertex_mask) != 0) continue;
        newpos[p] = static_cast<int>(keep.size());
        keep.push_back(p);
    }

    std::vector<Face> faces;
    faces.reserve(keep.size());
    std::vector<std::uint64_t> down(keep.size(), 0);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        Face f = c.faces()[keep[i]];
        for (int& v : f.labels) v = new_label[v];
        faces.push_back(std::move(f));
        std::uint64_t row = c.down()[keep[i]];
        while (row) {
            const int j = std::countr_zero(row);
            row &= row - 1;
            // faces below a kept face are kept (containment forces support inside)
            down[i] |= std::uint64_t{1} << newpos[j];
        }
    }
    return MultiComplex::from_parts_unchecked(nx, std::move(faces), std::move(down));
}

MultiComplex restrict_to(const MultiComplex& c, const std::vector<int>& vertices) {
    std::uint32_t mask = 0;
    for (int v : vertices) {
        if (v < 1 || v > c.vertex_count())
            fail(errc::vertex_out_of_range, "vertex " + std::to_string(v));
        mask |= 1u << (v - 1);
    }
    return restrict_to(c, mask);
}

std::vector<std::pair<std::vector<int>, MultiComplex>> connected_components(const MultiComplex& c) {
    const int n = c.vertex_count();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < c.nonsingleton_count(); ++i) {
        std::uint32_t supp = c.support_mask(n + 1 + i);
        const int root = std::countr_zero(supp);
        supp &= supp - 1;
        while (supp) {
            const int v = std::countr_zero(supp);
            supp &= supp - 1;
            parent[find(v)] = find(root);
        }
    }
    std::vector<std::pair<std::vector<int>, MultiComplex>> out;
    std::vector<int> class_of(n, -1);
    for (int v = 0; v < n; ++v) {
        const int r = find(v);
        if (class_of[r] < 0) {
            class_of[r] = static_cast<int>(out.size());
            out.push_back({{}, {}});
        }
        out[class_of[r]].first.push_back(v + 1);
    }
    for (auto& [verts, sub] : out) sub = restrict_to(c, verts);
    return out;
}

int component_count(const MultiComplex& c) {
    const int n = c.vertex_count();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int classes = n;
    for (int i = 0; i < c.nonsingleton_count(); ++i) {
        std::uint32_t supp = c.support_mask(n + 1 + i);
        const int root = std::countr_zero(supp);
        supp &= supp - 1;
        while (supp) {
            const int v = std::countr_zero(supp);
            supp &= supp - 1;
            if (find(v) != find(root)) {
                parent[find(v)] = find(root);
                --classes;
            }
        }
    }
    return classes;
}

int face_dimension(const MultiComplex& c, int face_id) {
    c.face(face_id);
    const int total = c.face_count();
    std::vector<int> memo(total, -1);
    // faces below have smaller down-masks; recurse over strict predecessors
    auto rec = [&](auto&& self, int p) -> int {
        if (memo[p] >= 0) return memo[p];
        int best = 0;
        std::uint64_t row = c.down()[p] & ~(std::uint64_t{1} << p);
        while (row) {
            const int j = std::countr_zero(row);
            row &= row - 1;
            best = std::max(best, 1 + self(self, j));
        }
        return memo[p] = best;
    };
    return rec(rec, face_id - 1);
}

int dimension(const MultiComplex& c) {
    if (c.face_count() == 0) return -1;
    int best = 0;
    for (int id = 1; id <= c.face_count(); ++id) best = std::max(best, face_dimension(c, id));
    return best;
}

SubComplexMask::SubComplexMask(const MultiComplex& owner, std::uint32_t bits)
    : owner_(&owner), bits_(bits) {
    const int m = owner.nonsingleton_count();
    if (m < 32 && (bits >> m) != 0)
        fail(errc::unknown_face, "mask has bits beyond the face list");
    std::uint32_t rest = bits;
    while (rest) {
        const int i = std::countr_zero(rest);
        rest &= rest - 1;
        if ((owner.nonsingleton_down(i) & ~bits) != 0)
            fail(errc::not_downward_closed,
                 "mask omits a face below non-singleton " + std::to_string(i));
    }
}

int SubComplexMask::size() const { return std::popcount(bits_); }

SubComplexMask intersect_sub(const SubComplexMask& a, const SubComplexMask& b) {
    if (&a.owner() != &b.owner()) fail(errc::owner_mismatch, "masks belong to different complexes");
    return SubComplexMask(a.owner(), a.bits() & b.bits());
}

SubComplexMask generated_sub(const MultiComplex& c, const std::vector<int>& face_ids) {
    std::uint64_t closure = 0;
    for (int id : face_ids) closure |= c.down_mask(id);
    const std::uint32_t bits = static_cast<std::uint32_t>(closure >> c.vertex_count());
    return SubComplexMask(c, bits);
}

MultiComplex subcomplex(const MultiComplex& c, std::uint32_t mask_bits) {
    SubComplexMask mask(c, mask_bits); // validates down-closure
    const int n = c.vertex_count();
    std::vector<int> keep;
    keep.reserve(n + mask.size());
    for (int p = 0; p < n; ++p) keep.push_back(p);
    std::uint32_t rest = mask_bits;
    while (rest) {
        const int i = std::countr_zero(rest);
        rest &= rest - 1;
        keep.push_back(n + i);
    }
    std::vector<int> newpos(c.face_count(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) newpos[keep[i]] = static_cast<int>(i);

    std::vector<Face> faces;
    faces.reserve(keep.size());
    std::vector<std::uint64_t> down(keep.size(), 0);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        faces.push_back(c.faces()[keep[i]]);
        std::uint64_t row = c.down()[keep[i]];
        while (row) {
            const int j = std::countr_zero(row);
            row &= row - 1;
            down[i] |= std::uint64_t{1} << newpos[j]; // j kept by down-closure
        }
    }
    return MultiComplex::from_parts_unchecked(n, std::move(faces), std::move(down));
}

MultiComplex delete_faces(const MultiComplex& c, const std::vector<int>& edge_ids) {
    if (dimension(c) > 1) fail(errc::dimension_too_high, "complex has dimension > 1");
    std::uint32_t removed = 0;
    for (int id : edge_ids) {
        c.face(id);
        if (id <= c.vertex_count()) fail(errc::not_an_edge, "face " + std::to_string(id) + " is a singleton");
        removed |= 1u << (id - c.vertex_count() - 1);
    }
    const std::uint32_t full =
        c.nonsingleton_count() >= 32 ? ~0u : (1u << c.nonsingleton_count()) - 1;
    return subcomplex(c, full & ~removed);
}

} // namespace mcx
