#pragma once

#include <map>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "mcx/canonical.hpp"

namespace mcx {

using Rational = boost::multiprecision::cpp_rational;

/// Key of the empty complex (the algebra unit 1).
CanonicalKey empty_key();

/// Finite exact-rational linear combination of isomorphism classes.
/// Normal form: map ordering by key bytes, no zero coefficients stored, so
/// structural equality is semantic equality.
struct Element {
    std::map<CanonicalKey, Rational> terms;

    static Element zero() { return {}; }
    static Element one();
    static Element basis(const CanonicalKey& key);

    void add(const CanonicalKey& key, const Rational& coeff) {
        if (coeff == 0) return;
        auto [it, inserted] = terms.emplace(key, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms.erase(it);
        }
    }
    bool is_zero() const { return terms.empty(); }
    Rational coeff(const CanonicalKey& key) const {
        const auto it = terms.find(key);
        return it == terms.end() ? Rational(0) : it->second;
    }
    bool operator==(const Element&) const = default;
};

Element operator+(const Element& a, const Element& b);
Element operator-(const Element& a, const Element& b);
Element operator-(const Element& a);
Element operator*(const Rational& q, const Element& a);

/// Linear combination over ordered pairs of classes (the codomain of the
/// coproduct). Same normal-form contract as Element.
struct TensorElement {
    std::map<std::pair<CanonicalKey, CanonicalKey>, Rational> terms;

    void add(const CanonicalKey& x, const CanonicalKey& y, const Rational& coeff) {
        if (coeff == 0) return;
        auto [it, inserted] = terms.emplace(std::make_pair(x, y), coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms.erase(it);
        }
    }
    bool is_zero() const { return terms.empty(); }
    bool operator==(const TensorElement&) const = default;
};

TensorElement operator+(const TensorElement& a, const TensorElement& b);
TensorElement operator-(const TensorElement& a, const TensorElement& b);
TensorElement operator*(const Rational& q, const TensorElement& a);

/// Swaps the tensor legs (cocommutativity check).
TensorElement swap_legs(const TensorElement& a);

} // namespace mcx
