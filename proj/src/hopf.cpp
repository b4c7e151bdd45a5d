#include "mcx/hopf.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <shared_mutex>

#ifdef MCX_HAVE_OPENMP
#include <omp.h>
#endif

#include "mcx/lattice.hpp"

namespace mcx {

CanonicalKey empty_key() {
    static const CanonicalKey key(4, '\0');
    return key;
}

Element Element::one() { return basis(empty_key()); }

Element Element::basis(const CanonicalKey& key) {
    Element e;
    e.terms.emplace(key, 1);
    return e;
}

Element operator+(const Element& a, const Element& b) {
    Element out = a;
    for (const auto& [key, coeff] : b.terms) out.add(key, coeff);
    return out;
}

Element operator-(const Element& a, const Element& b) {
    Element out = a;
    for (const auto& [key, coeff] : b.terms) out.add(key, -coeff);
    return out;
}

Element operator-(const Element& a) {
    Element out;
    for (const auto& [key, coeff] : a.terms) out.terms.emplace(key, -coeff);
    return out;
}

Element operator*(const Rational& q, const Element& a) {
    Element out;
    if (q == 0) return out;
    for (const auto& [key, coeff] : a.terms) out.terms.emplace(key, q * coeff);
    return out;
}

TensorElement operator+(const TensorElement& a, const TensorElement& b) {
    TensorElement out = a;
    for (const auto& [pair, coeff] : b.terms) out.add(pair.first, pair.second, coeff);
    return out;
}

TensorElement operator-(const TensorElement& a, const TensorElement& b) {
    TensorElement out = a;
    for (const auto& [pair, coeff] : b.terms) out.add(pair.first, pair.second, -coeff);
    return out;
}

TensorElement operator*(const Rational& q, const TensorElement& a) {
    TensorElement out;
    if (q == 0) return out;
    for (const auto& [pair, coeff] : a.terms) out.terms.emplace(pair, q * coeff);
    return out;
}

TensorElement swap_legs(const TensorElement& a) {
    TensorElement out;
    for (const auto& [pair, coeff] : a.terms) out.terms.emplace(std::make_pair(pair.second, pair.first), coeff);
    return out;
}

Element make_element(const MultiComplex& c) { return Element::basis(canonical_form(c)); }

namespace {

struct Caches {
    std::map<std::pair<CanonicalKey, CanonicalKey>, CanonicalKey> product;
    std::map<CanonicalKey, TensorElement> coproduct;
    std::map<CanonicalKey, Element> antipode_axiom;
    std::map<CanonicalKey, Element> antipode_prim;
    std::map<CanonicalKey, MultiComplex> decode;
    std::shared_mutex mutex;
};

Caches& caches() {
    static Caches instance;
    return instance;
}

MultiComplex decode_cached(const CanonicalKey& key) {
    {
        std::shared_lock lock(caches().mutex);
        if (const auto it = caches().decode.find(key); it != caches().decode.end())
            return it->second;
    }
    MultiComplex c = decode_key(key);
    std::unique_lock lock(caches().mutex);
    caches().decode.emplace(key, c);
    return c;
}

} // namespace

void clear_hopf_caches() {
    std::unique_lock lock(caches().mutex);
    caches().product.clear();
    caches().coproduct.clear();
    caches().antipode_axiom.clear();
    caches().antipode_prim.clear();
    caches().decode.clear();
}

CanonicalKey product_key(const CanonicalKey& a, const CanonicalKey& b) {
    const auto pair = a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
    {
        std::shared_lock lock(caches().mutex);
        if (const auto it = caches().product.find(pair); it != caches().product.end())
            return it->second;
    }
    std::vector<CanonicalKey> blobs = split_key_components(pair.first);
    std::vector<CanonicalKey> more = split_key_components(pair.second);
    blobs.insert(blobs.end(), std::make_move_iterator(more.begin()),
                 std::make_move_iterator(more.end()));
    const int n = key_vertex_count(a) + key_vertex_count(b);
    if (n > std::min(limits().max_vertices, 16))
        fail(errc::size_limit_exceeded, "product exceeds the vertex bound");
    CanonicalKey key = merge_component_keys(std::move(blobs));
    std::unique_lock lock(caches().mutex);
    caches().product.emplace(pair, key);
    return key;
}

Element product(const Element& a, const Element& b) {
    Element out;
    for (const auto& [ka, qa] : a.terms)
        for (const auto& [kb, qb] : b.terms) out.add(product_key(ka, kb), qa * qb);
    return out;
}

Element operator*(const Element& a, const Element& b) { return product(a, b); }

TensorElement coproduct_masks_serial(const MultiComplex& c) {
    TensorElement out;
    const int n = c.vertex_count();
    const std::uint32_t full = n >= 32 ? ~0u : (1u << n) - 1;
    for (std::uint32_t mask = 0;; ++mask) {
        out.add(canonical_form(restrict_to(c, mask)),
                canonical_form(restrict_to(c, full & ~mask)), 1);
        if (mask == full) break;
    }
    return out;
}

TensorElement coproduct_masks_parallel(const MultiComplex& c) {
#ifndef MCX_HAVE_OPENMP
    return coproduct_masks_serial(c);
#else
    const int n = c.vertex_count();
    const std::uint32_t full = n >= 32 ? ~0u : (1u << n) - 1;
    const long long total = static_cast<long long>(full) + 1;
    TensorElement out;
#pragma omp parallel
    {
        TensorElement local;
#pragma omp for schedule(dynamic, 64)
        for (long long mask = 0; mask < total; ++mask) {
            const std::uint32_t x = static_cast<std::uint32_t>(mask);
            local.add(canonical_form(restrict_to(c, x)),
                      canonical_form(restrict_to(c, full & ~x)), 1);
        }
#pragma omp critical(mcx_coproduct_merge)
        out = out + local;
    }
    return out;
#endif
}

TensorElement coproduct_key(const CanonicalKey& key) {
    {
        std::shared_lock lock(caches().mutex);
        if (const auto it = caches().coproduct.find(key); it != caches().coproduct.end())
            return it->second;
    }
    const MultiComplex c = decode_cached(key);
    TensorElement out =
        c.vertex_count() >= 12 ? coproduct_masks_parallel(c) : coproduct_masks_serial(c);
    std::unique_lock lock(caches().mutex);
    caches().coproduct.emplace(key, out);
    return out;
}

TensorElement coproduct(const Element& a) {
    TensorElement out;
    for (const auto& [key, coeff] : a.terms) {
        const TensorElement dk = coproduct_key(key);
        for (const auto& [pair, q] : dk.terms) out.add(pair.first, pair.second, coeff * q);
    }
    return out;
}

Rational counit(const Element& a) { return a.coeff(empty_key()); }

TensorElement tensor_product(const TensorElement& a, const TensorElement& b) {
    TensorElement out;
    for (const auto& [pa, qa] : a.terms)
        for (const auto& [pb, qb] : b.terms)
            out.add(product_key(pa.first, pb.first), product_key(pa.second, pb.second), qa * qb);
    return out;
}

Element primitive_pc(const MultiComplex& c) {
    const SpanningLattice lattice(c);
    Element out;
    for (const std::uint32_t mask : lattice.ideals()) {
        const Integer mu = lattice.mobius(mask, lattice.full_mask());
        if (mu == 0) continue;
        out.add(canonical_form(subcomplex(c, mask)), Rational(mu));
    }
    return out;
}

std::map<std::vector<CanonicalKey>, long long> to_primitive_basis(const MultiComplex& c) {
    std::map<std::vector<CanonicalKey>, long long> out;
    for (const std::uint32_t mask : enumerate_ideals(c)) {
        std::vector<CanonicalKey> parts =
            split_key_components(canonical_form(subcomplex(c, mask)));
        out[std::move(parts)] += 1;
    }
    return out;
}

Element from_primitive_basis(const std::map<std::vector<CanonicalKey>, long long>& coeffs) {
    Element out;
    for (const auto& [parts, count] : coeffs) {
        if (count == 0) continue;
        Element term = Element::one();
        for (const CanonicalKey& key : parts) term = term * primitive_pc(decode_cached(key));
        out = out + Rational(count) * term;
    }
    return out;
}

namespace {

Element antipode_axiomatic_key(const CanonicalKey& key) {
    if (key == empty_key()) return Element::one();
    {
        std::shared_lock lock(caches().mutex);
        if (const auto it = caches().antipode_axiom.find(key);
            it != caches().antipode_axiom.end())
            return it->second;
    }
    const TensorElement delta = coproduct_key(key);
    Element out;
    for (const auto& [pair, q] : delta.terms) {
        if (pair.first == key) continue; // the S(C)*1 term being solved for
        out = out - q * (antipode_axiomatic_key(pair.first) * Element::basis(pair.second));
    }
    std::unique_lock lock(caches().mutex);
    caches().antipode_axiom.emplace(key, out);
    return out;
}

Element antipode_primitive_key(const CanonicalKey& key) {
    if (key == empty_key()) return Element::one();
    {
        std::shared_lock lock(caches().mutex);
        if (const auto it = caches().antipode_prim.find(key); it != caches().antipode_prim.end())
            return it->second;
    }
    const MultiComplex c = decode_cached(key);
    Element out;
    for (const std::uint32_t mask : enumerate_ideals(c)) {
        const MultiComplex sub = subcomplex(c, mask);
        const int sign_exp = component_count(sub);
        const Element pd = primitive_pc(sub);
        out = out + Rational(sign_exp % 2 == 0 ? 1 : -1) * pd;
    }
    std::unique_lock lock(caches().mutex);
    caches().antipode_prim.emplace(key, out);
    return out;
}

Element antipode_grouped_key(const CanonicalKey& key) {
    if (key == empty_key()) return Element::one();
    const MultiComplex c = decode_cached(key);
    Element out;
    for (const std::uint32_t mask : enumerate_ideals(c)) {
        const MultiComplex sub = subcomplex(c, mask);
        const int t = component_count(sub);
        out.add(canonical_form(sub), t % 2 == 0 ? 1 : -1);
    }
    return out;
}

} // namespace

Element antipode_axiomatic(const Element& a) {
    Element out;
    for (const auto& [key, coeff] : a.terms) out = out + coeff * antipode_axiomatic_key(key);
    return out;
}

Element antipode_primitive(const Element& a) {
    Element out;
    for (const auto& [key, coeff] : a.terms) out = out + coeff * antipode_primitive_key(key);
    return out;
}

Element antipode_grouped(const Element& a) {
    Element out;
    for (const auto& [key, coeff] : a.terms) out = out + coeff * antipode_grouped_key(key);
    return out;
}

bool is_primitive(const Element& a) {
    TensorElement expected;
    for (const auto& [key, coeff] : a.terms) {
        expected.add(key, empty_key(), coeff);
        expected.add(empty_key(), key, coeff);
    }
    return coproduct(a) == expected;
}

AxiomReport verify_hopf_axioms(const std::vector<Element>& corpus) {
    AxiomReport report;
    using Key3 = std::array<CanonicalKey, 3>;
    for (std::size_t at = 0; at < corpus.size(); ++at) {
        const Element& a = corpus[at];
        const std::string tag = "element #" + std::to_string(at);
        const TensorElement da = coproduct(a);

        std::map<Key3, Rational> left, right;
        auto bump = [](std::map<Key3, Rational>& table, Key3 k, const Rational& q) {
            auto [it, inserted] = table.emplace(std::move(k), q);
            if (!inserted) {
                it->second += q;
                if (it->second == 0) table.erase(it);
            }
        };
        for (const auto& [pair, q] : da.terms) {
            for (const auto& [inner, r] : coproduct_key(pair.first).terms)
                bump(left, {inner.first, inner.second, pair.second}, q * r);
            for (const auto& [inner, r] : coproduct_key(pair.second).terms)
                bump(right, {pair.first, inner.first, inner.second}, q * r);
        }
        if (left != right) report.failures.push_back("coassociativity failed on " + tag);

        Element from_left, from_right;
        for (const auto& [pair, q] : da.terms) {
            if (pair.first == empty_key()) from_left.add(pair.second, q);
            if (pair.second == empty_key()) from_right.add(pair.first, q);
        }
        if (from_left != a) report.failures.push_back("left counit law failed on " + tag);
        if (from_right != a) report.failures.push_back("right counit law failed on " + tag);

        bool graded = true;
        for (const auto& [key, coeff] : a.terms) {
            (void)coeff;
            const int deg = key_vertex_count(key);
            for (const auto& [pair, q] : coproduct_key(key).terms) {
                (void)q;
                if (key_vertex_count(pair.first) + key_vertex_count(pair.second) != deg)
                    graded = false;
            }
        }
        if (!graded) report.failures.push_back("coproduct grading failed on " + tag);

        if (swap_legs(da) != da) report.failures.push_back("cocommutativity failed on " + tag);

        const Element& b = corpus[(at + 1) % corpus.size()];
        if (coproduct(a * b) != tensor_product(da, coproduct(b)))
            report.failures.push_back("product compatibility failed on " + tag);

        Element convolution;
        for (const auto& [pair, q] : da.terms)
            convolution = convolution + q * (antipode_axiomatic(Element::basis(pair.first)) *
                                             Element::basis(pair.second));
        if (convolution != counit(a) * Element::one())
            report.failures.push_back("antipode law failed on " + tag);

        ++report.elements_checked;
    }
    return report;
}

} // namespace mcx
