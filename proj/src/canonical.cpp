#include "mcx/canonical.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <unordered_map>

#include "mcx/lattice.hpp"

namespace mcx {

namespace {

std::unordered_map<std::string, CanonicalKey>& cache() {
    static std::unordered_map<std::string, CanonicalKey> instance;
    return instance;
}
std::shared_mutex cache_mutex;

// Dense re-ranking: assigns 0-based ranks by sorted key order.
template <class Key>
std::vector<int> dense_ranks(const std::vector<Key>& keys) {
    std::vector<int> idx(keys.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&keys](int a, int b) { return keys[a] < keys[b]; });
    std::vector<int> rank(keys.size(), 0);
    for (std::size_t p = 1; p < idx.size(); ++p)
        rank[idx[p]] = rank[idx[p - 1]] + (keys[idx[p]] == keys[idx[p - 1]] ? 0 : 1);
    std::vector<int> out(keys.size());
    for (std::size_t p = 0; p < idx.size(); ++p) out[idx[p]] = rank[idx[p]];
    return out;
}

int multiplicity_in(const Face& f, int v) {
    return static_cast<int>(std::count(f.labels.begin(), f.labels.end(), v));
}

// Iterative labeling-independent refinement of vertex and face colors.
// Face keys mix the support's vertex colors with the colors of the faces
// strictly below and above; vertex keys aggregate incident face colors.
struct Colors {
    std::vector<int> vrank;
    std::vector<int> frank;
};

Colors refine_colors(const MultiComplex& c) {
    const int n = c.vertex_count();
    const int m = c.nonsingleton_count();

    std::vector<std::vector<int>> fkeys(m);
    for (int i = 0; i < m; ++i) {
        const Face& f = c.nonsingleton(i);
        fkeys[i].push_back(static_cast<int>(f.labels.size()));
        std::vector<int> mults;
        for (int v : f.support()) mults.push_back(multiplicity_in(f, v));
        std::sort(mults.begin(), mults.end());
        fkeys[i].insert(fkeys[i].end(), mults.begin(), mults.end());
    }
    Colors col;
    col.frank = dense_ranks(fkeys);
    col.vrank.assign(n, 0);

    for (int round = 0; round <= n + m + 1; ++round) {
        std::vector<std::vector<int>> vk(n);
        for (int v = 1; v <= n; ++v) {
            vk[v - 1].push_back(col.vrank[v - 1]);
            std::vector<std::pair<int, int>> inc;
            for (int i = 0; i < m; ++i)
                if (c.support_mask(n + 1 + i) >> (v - 1) & 1)
                    inc.emplace_back(col.frank[i], multiplicity_in(c.nonsingleton(i), v));
            std::sort(inc.begin(), inc.end());
            for (const auto& [r, mult] : inc) {
                vk[v - 1].push_back(r);
                vk[v - 1].push_back(mult);
            }
        }
        std::vector<int> new_vrank = dense_ranks(vk);

        std::vector<std::vector<int>> fk(m);
        for (int i = 0; i < m; ++i) {
            const Face& f = c.nonsingleton(i);
            fk[i].push_back(col.frank[i]);
            std::vector<std::pair<int, int>> sup;
            for (int v : f.support()) sup.emplace_back(new_vrank[v - 1], multiplicity_in(f, v));
            std::sort(sup.begin(), sup.end());
            for (const auto& [r, mult] : sup) {
                fk[i].push_back(r);
                fk[i].push_back(mult);
            }
            fk[i].push_back(-1);
            std::vector<int> below, above;
            std::uint32_t down = c.nonsingleton_down(i);
            while (down) {
                const int j = std::countr_zero(down);
                down &= down - 1;
                below.push_back(col.frank[j]);
            }
            for (int j = 0; j < m; ++j)
                if (j != i && (c.nonsingleton_down(j) >> i & 1)) above.push_back(col.frank[j]);
            std::sort(below.begin(), below.end());
            std::sort(above.begin(), above.end());
            fk[i].insert(fk[i].end(), below.begin(), below.end());
            fk[i].push_back(-2);
            fk[i].insert(fk[i].end(), above.begin(), above.end());
        }
        std::vector<int> new_frank = dense_ranks(fk);

        if (new_vrank == col.vrank && new_frank == col.frank) break;
        col.vrank = std::move(new_vrank);
        col.frank = std::move(new_frank);
    }
    return col;
}

void put16(std::string& out, unsigned v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>(v >> 8 & 0xff));
}

// Serialization of one labeled complex in the identity-bytes layout, given a
// vertex relabeling sigma (old label -> new label). Faces are ordered by
// refining (relabeled content, neighbour ranks); stable ties are either
// provably interchangeable (identical up- and down-sets) or enumerated.
std::string serialize_under(const MultiComplex& c, const std::vector<int>& sigma) {
    const int n = c.vertex_count();
    const int m = c.nonsingleton_count();

    std::vector<std::vector<int>> contents(m);
    std::vector<std::uint32_t> down(m), up(m, 0);
    for (int i = 0; i < m; ++i) {
        for (int v : c.nonsingleton(i).labels) contents[i].push_back(sigma[v - 1]);
        std::sort(contents[i].begin(), contents[i].end());
        down[i] = c.nonsingleton_down(i);
    }
    for (int i = 0; i < m; ++i) {
        std::uint32_t rest = down[i];
        while (rest) {
            const int j = std::countr_zero(rest);
            rest &= rest - 1;
            up[j] |= 1u << i;
        }
    }

    std::vector<int> rank = dense_ranks(contents);
    for (int round = 0; round <= m; ++round) {
        std::vector<std::vector<int>> keys(m);
        for (int i = 0; i < m; ++i) {
            keys[i].push_back(rank[i]);
            std::vector<int> below, above;
            for (std::uint32_t rest = down[i]; rest;) {
                const int j = std::countr_zero(rest);
                rest &= rest - 1;
                below.push_back(rank[j]);
            }
            for (std::uint32_t rest = up[i]; rest;) {
                const int j = std::countr_zero(rest);
                rest &= rest - 1;
                above.push_back(rank[j]);
            }
            std::sort(below.begin(), below.end());
            std::sort(above.begin(), above.end());
            keys[i].insert(keys[i].end(), below.begin(), below.end());
            keys[i].push_back(-1);
            keys[i].insert(keys[i].end(), above.begin(), above.end());
        }
        std::vector<int> next = dense_ranks(keys);
        if (next == rank) break;
        rank = std::move(next);
    }

    // Order faces by final rank; equal ranks keep index order.
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&rank](int a, int b) { return rank[a] < rank[b]; });

    // Tie classes that are not pairwise interchangeable force enumeration.
    std::vector<std::pair<int, int>> hard; // [begin, end) positions in `order`
    long long variants = 1;
    for (int b = 0; b < m;) {
        int e = b + 1;
        while (e < m && rank[order[e]] == rank[order[b]]) ++e;
        if (e - b > 1) {
            bool interchangeable = true;
            for (int p = b; p < e && interchangeable; ++p)
                for (int q = p + 1; q < e && interchangeable; ++q)
                    interchangeable = down[order[p]] == down[order[q]] && up[order[p]] == up[order[q]];
            if (!interchangeable) {
                hard.emplace_back(b, e);
                for (int k = 2; k <= e - b; ++k) variants *= k;
                if (variants > 40320)
                    fail(errc::size_limit_exceeded, "face ordering ties too large to enumerate");
            }
        }
        b = e;
    }

    auto emit = [&](const std::vector<int>& ord) {
        std::vector<int> pos(m);
        for (int p = 0; p < m; ++p) pos[ord[p]] = p;
        std::string out;
        put16(out, static_cast<unsigned>(n));
        put16(out, static_cast<unsigned>(m));
        for (int p = 0; p < m; ++p) {
            const auto& labels = contents[ord[p]];
            put16(out, static_cast<unsigned>(labels.size()));
            for (int v : labels) out.push_back(static_cast<char>(v));
        }
        for (int p = 0; p < m; ++p) {
            std::uint32_t row = 0;
            for (std::uint32_t rest = down[ord[p]]; rest;) {
                const int j = std::countr_zero(rest);
                rest &= rest - 1;
                row |= 1u << pos[j];
            }
            for (int b8 = 0; b8 < 4; ++b8) out.push_back(static_cast<char>(row >> (8 * b8) & 0xff));
        }
        return out;
    };

    if (hard.empty()) return emit(order);

    std::string best;
    std::vector<int> work = order;
    auto enumerate = [&](auto&& self, std::size_t h) -> void {
        if (h == hard.size()) {
            std::string bytes = emit(work);
            if (best.empty() || bytes < best) best = std::move(bytes);
            return;
        }
        const auto [b, e] = hard[h];
        std::sort(work.begin() + b, work.begin() + e);
        do {
            self(self, h + 1);
        } while (std::next_permutation(work.begin() + b, work.begin() + e));
    };
    enumerate(enumerate, 0);
    return best;
}

// Canonical bytes of one connected component: minimize serialize_under over
// all color-monotone vertex relabelings.
std::string component_bytes(const MultiComplex& c) {
    const int n = c.vertex_count();
    if (n == 0) {
        std::string out;
        put16(out, 0);
        put16(out, 0);
        return out;
    }
    const Colors col = refine_colors(c);

    std::vector<std::vector<int>> classes; // vertices (1-based), grouped by rank, rank ascending
    {
        const int nclasses = *std::max_element(col.vrank.begin(), col.vrank.end()) + 1;
        classes.assign(nclasses, {});
        for (int v = 1; v <= n; ++v) classes[col.vrank[v - 1]].push_back(v);
    }

    long long work = 1;
    for (const auto& cls : classes) {
        for (std::size_t k = 2; k <= cls.size(); ++k) work *= static_cast<long long>(k);
        if (work > 2'000'000)
            fail(errc::size_limit_exceeded, "vertex symmetry too large for canonical search");
    }

    std::string best;
    std::vector<int> sigma(n, 0);
    auto assign = [&](auto&& self, std::size_t ci, int next_label) -> void {
        if (ci == classes.size()) {
            std::string bytes = serialize_under(c, sigma);
            if (best.empty() || bytes < best) best = std::move(bytes);
            return;
        }
        std::vector<int> cls = classes[ci];
        std::sort(cls.begin(), cls.end());
        do {
            int label = next_label;
            for (int v : cls) sigma[v - 1] = label++;
            self(self, ci + 1, label);
        } while (std::next_permutation(cls.begin(), cls.end()));
    };
    assign(assign, 0, 1);
    return best;
}

struct ParsedKey {
    int n = 0;
    int m = 0;
    std::vector<std::vector<int>> contents;
    std::vector<std::uint32_t> down;
};

ParsedKey parse_key(const CanonicalKey& key) {
    ParsedKey out;
    std::size_t at = 0;
    auto get16 = [&key, &at]() {
        if (at + 2 > key.size()) fail(errc::parse_error, "truncated canonical key");
        const unsigned lo = static_cast<unsigned char>(key[at]);
        const unsigned hi = static_cast<unsigned char>(key[at + 1]);
        at += 2;
        return static_cast<int>(lo | hi << 8);
    };
    out.n = get16();
    out.m = get16();
    out.contents.resize(out.m);
    for (auto& labels : out.contents) {
        const int size = get16();
        labels.resize(size);
        for (int& v : labels) {
            if (at >= key.size()) fail(errc::parse_error, "truncated canonical key");
            v = static_cast<unsigned char>(key[at++]);
        }
    }
    out.down.resize(out.m);
    for (auto& row : out.down) {
        row = 0;
        for (int b = 0; b < 4; ++b) {
            if (at >= key.size()) fail(errc::parse_error, "truncated canonical key");
            row |= static_cast<std::uint32_t>(static_cast<unsigned char>(key[at++])) << (8 * b);
        }
    }
    if (at != key.size()) fail(errc::parse_error, "trailing bytes in canonical key");
    return out;
}

// Merge canonically labeled component blobs (already sorted) into the
// identity bytes of their disjoint union: labels and mask indices shift by
// block, and the global content order coincides with concatenation because
// every label of an earlier block is smaller.
std::string merge_blobs(const std::vector<std::string>& blobs) {
    int n = 0, m = 0;
    std::vector<ParsedKey> parts;
    parts.reserve(blobs.size());
    for (const auto& blob : blobs) {
        parts.push_back(parse_key(blob));
        n += parts.back().n;
        m += parts.back().m;
    }
    std::string out;
    put16(out, static_cast<unsigned>(n));
    put16(out, static_cast<unsigned>(m));
    int vshift = 0;
    for (const auto& part : parts) {
        for (const auto& labels : part.contents) {
            put16(out, static_cast<unsigned>(labels.size()));
            for (int v : labels) out.push_back(static_cast<char>(v + vshift));
        }
        vshift += part.n;
    }
    int fshift = 0;
    for (const auto& part : parts) {
        for (std::uint32_t row : part.down) {
            const std::uint64_t shifted = static_cast<std::uint64_t>(row) << fshift;
            for (int b = 0; b < 4; ++b)
                out.push_back(static_cast<char>(shifted >> (8 * b) & 0xff));
        }
        fshift += part.m;
    }
    return out;
}

} // namespace

CanonicalKey canonical_form(const MultiComplex& c) {
    const std::string identity = c.identity_bytes();
    {
        std::shared_lock lock(cache_mutex);
        if (const auto it = cache().find(identity); it != cache().end()) return it->second;
    }

    CanonicalKey key;
    auto comps = connected_components(c);
    if (comps.size() <= 1) {
        key = component_bytes(c);
    } else {
        std::vector<std::string> blobs;
        blobs.reserve(comps.size());
        for (const auto& [verts, sub] : comps) blobs.push_back(canonical_form(sub));
        std::sort(blobs.begin(), blobs.end());
        key = merge_blobs(blobs);
    }

    std::unique_lock lock(cache_mutex);
    cache().emplace(identity, key);
    return key;
}

void clear_canonical_cache() {
    std::unique_lock lock(cache_mutex);
    cache().clear();
}

MultiComplex decode_key(const CanonicalKey& key) {
    const ParsedKey parsed = parse_key(key);
    std::vector<Face> faces;
    faces.reserve(parsed.n + parsed.m);
    for (int k = 1; k <= parsed.n; ++k) faces.push_back(Face{k});
    for (const auto& labels : parsed.contents) faces.push_back(Face(labels));
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < parsed.m; ++i)
        for (std::uint32_t rest = parsed.down[i]; rest;) {
            const int j = std::countr_zero(rest);
            rest &= rest - 1;
            pairs.emplace_back(parsed.n + j, parsed.n + i);
        }
    return MultiComplex::validate(parsed.n, std::move(faces), pairs);
}

int key_vertex_count(const CanonicalKey& key) {
    if (key.size() < 2) fail(errc::parse_error, "truncated canonical key");
    return static_cast<unsigned char>(key[0]) | static_cast<unsigned char>(key[1]) << 8;
}

std::vector<CanonicalKey> split_key_components(const CanonicalKey& key) {
    const ParsedKey parsed = parse_key(key);
    std::vector<int> parent(parsed.n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& labels : parsed.contents)
        for (int v : labels) parent[find(v - 1)] = find(labels[0] - 1);

    std::vector<int> block_of(parsed.n, -1); // vertex -> component index (by first vertex)
    int blocks = 0;
    for (int v = 0; v < parsed.n; ++v) {
        const int r = find(v);
        if (block_of[r] < 0) block_of[r] = blocks++;
        block_of[v] = block_of[r];
    }
    std::vector<int> block_n(blocks, 0), local(parsed.n, 0);
    for (int v = 0; v < parsed.n; ++v) local[v] = ++block_n[block_of[v]];

    std::vector<ParsedKey> parts(blocks);
    for (int b = 0; b < blocks; ++b) parts[b].n = block_n[b];
    std::vector<std::vector<int>> face_index(blocks); // original face idx per block
    for (int i = 0; i < parsed.m; ++i) {
        const int b = block_of[parsed.contents[i][0] - 1];
        face_index[b].push_back(i);
        std::vector<int> relabeled;
        relabeled.reserve(parsed.contents[i].size());
        for (int v : parsed.contents[i]) relabeled.push_back(local[v - 1]);
        std::sort(relabeled.begin(), relabeled.end());
        parts[b].contents.push_back(std::move(relabeled));
        parts[b].m += 1;
    }
    for (int b = 0; b < blocks; ++b) {
        parts[b].down.assign(parts[b].m, 0);
        for (int p = 0; p < parts[b].m; ++p)
            for (std::uint32_t rest = parsed.down[face_index[b][p]]; rest;) {
                const int j = std::countr_zero(rest);
                rest &= rest - 1;
                const auto at = std::find(face_index[b].begin(), face_index[b].end(), j);
                if (at != face_index[b].end())
                    parts[b].down[p] |= 1u << (at - face_index[b].begin());
            }
    }

    std::vector<CanonicalKey> out;
    out.reserve(blocks);
    for (const auto& part : parts) {
        std::string blob;
        put16(blob, static_cast<unsigned>(part.n));
        put16(blob, static_cast<unsigned>(part.m));
        for (const auto& labels : part.contents) {
            put16(blob, static_cast<unsigned>(labels.size()));
            for (int v : labels) blob.push_back(static_cast<char>(v));
        }
        for (std::uint32_t row : part.down)
            for (int b8 = 0; b8 < 4; ++b8) blob.push_back(static_cast<char>(row >> (8 * b8) & 0xff));
        out.push_back(std::move(blob));
    }
    return out;
}

CanonicalKey merge_component_keys(std::vector<CanonicalKey> blobs) {
    std::sort(blobs.begin(), blobs.end());
    return merge_blobs(blobs);
}

std::string key_to_hex(const CanonicalKey& key) {
    static const char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(key.size() * 2);
    for (const char ch : key) {
        const unsigned byte = static_cast<unsigned char>(ch);
        out.push_back(digits[byte >> 4]);
        out.push_back(digits[byte & 0xf]);
    }
    return out;
}

bool is_isomorphic(const MultiComplex& a, const MultiComplex& b) {
    return canonical_form(a) == canonical_form(b);
}

namespace {

// Counts face matchings for a fixed injective vertex map: a backtracking
// assignment of D's non-singleton faces to distinct faces of C with the
// mapped content, preserving every order relation among assigned faces.
long long face_matchings(const MultiComplex& c, const MultiComplex& d,
                         const std::vector<std::vector<int>>& image_contents) {
    const int md = d.nonsingleton_count();
    const int mc = c.nonsingleton_count();
    std::vector<int> assign(md, -1);
    std::vector<bool> used(mc, false);
    long long count = 0;
    auto rec = [&](auto&& self, int i) -> void {
        if (i == md) {
            ++count;
            return;
        }
        for (int j = 0; j < mc; ++j) {
            if (used[j] || c.nonsingleton(j).labels != image_contents[i]) continue;
            bool ok = true;
            for (int k = 0; k < i && ok; ++k) {
                const bool dk_le_di = d.nonsingleton_down(i) >> k & 1;
                const bool di_le_dk = d.nonsingleton_down(k) >> i & 1;
                if (dk_le_di && !(c.nonsingleton_down(j) >> assign[k] & 1)) ok = false;
                if (di_le_dk && !(c.nonsingleton_down(assign[k]) >> j & 1)) ok = false;
            }
            if (!ok) continue;
            used[j] = true;
            assign[i] = j;
            self(self, i + 1);
            used[j] = false;
        }
    };
    rec(rec, 0);
    return count;
}

} // namespace

long long embedding_count(const MultiComplex& c, const MultiComplex& d) {
    const int nc = c.vertex_count();
    const int nd = d.vertex_count();
    if (nd > nc || d.nonsingleton_count() > c.nonsingleton_count()) return 0;

    std::vector<int> f(nd, 0);
    std::vector<bool> taken(nc, false);
    std::vector<std::vector<int>> image(d.nonsingleton_count());
    long long total = 0;
    auto rec = [&](auto&& self, int v) -> void {
        if (v == nd) {
            for (int i = 0; i < d.nonsingleton_count(); ++i) {
                image[i].clear();
                for (int w : d.nonsingleton(i).labels) image[i].push_back(f[w - 1]);
                std::sort(image[i].begin(), image[i].end());
            }
            total += face_matchings(c, d, image);
            return;
        }
        for (int t = 1; t <= nc; ++t) {
            if (taken[t - 1]) continue;
            taken[t - 1] = true;
            f[v] = t;
            self(self, v + 1);
            taken[t - 1] = false;
        }
    };
    rec(rec, 0);
    return total;
}

long long automorphism_count(const MultiComplex& c) { return embedding_count(c, c); }

namespace {

long long binomial(int a, int b) {
    if (b < 0 || b > a) return 0;
    long long out = 1;
    for (int i = 1; i <= b; ++i) out = out * (a - b + i) / i;
    return out;
}

} // namespace

long long multiplicity(const MultiComplex& c, const MultiComplex& d) {
    const CanonicalKey key_d = canonical_form(d);
    const int nc = c.vertex_count();
    const int nd = d.vertex_count();

    long long count = 0;
    for (const std::uint32_t ideal : enumerate_ideals(c)) {
        std::uint32_t forced = 0;
        for (std::uint32_t rest = ideal; rest;) {
            const int i = std::countr_zero(rest);
            rest &= rest - 1;
            forced |= c.support_mask(nc + 1 + i);
        }
        const int f = std::popcount(forced);
        const int pad = nd - f;
        if (pad < 0 || pad > nc - f) continue;

        std::vector<int> verts;
        for (int v = 1; v <= nc; ++v)
            if (forced >> (v - 1) & 1) verts.push_back(v);
        MultiComplex core = restrict_to(subcomplex(c, ideal), verts);
        if (pad > 0) {
            std::vector<Face> singles;
            for (int k = 1; k <= pad; ++k) singles.push_back(Face{k});
            core = disjoint_union(core, MultiComplex::validate(pad, std::move(singles), {}));
        }
        if (canonical_form(core) == key_d) count += binomial(nc - f, pad);
    }

    const long long aut = automorphism_count(d);
    const long long emb = embedding_count(c, d);
    if (count * aut != emb)
        fail(errc::cross_check_mismatch,
             "sub-complex census (" + std::to_string(count) + " x |Aut|=" + std::to_string(aut) +
                 ") disagrees with injective morphism count " + std::to_string(emb));
    return count;
}

} // namespace mcx
