#pragma once

#include <string>
#include <vector>

#include "mcx/element.hpp"
#include "mcx/multicomplex.hpp"

namespace mcx {

Element make_element(const MultiComplex& c);

/// Bilinear extension of disjoint union; commutative and associative with
/// unit the empty-complex class.
Element product(const Element& a, const Element& b);
Element operator*(const Element& a, const Element& b);

/// Key-level product (memoized byte-level component merge).
CanonicalKey product_key(const CanonicalKey& a, const CanonicalKey& b);

/// Delta(C) = sum over ordered vertex bipartitions X | Y of C|_X (x) C|_Y,
/// extended linearly. Per-key results are memoized.
TensorElement coproduct(const Element& a);
TensorElement coproduct_key(const CanonicalKey& key);

/// Reference and OpenMP variants of the bipartition loop; identical results.
TensorElement coproduct_masks_serial(const MultiComplex& c);
TensorElement coproduct_masks_parallel(const MultiComplex& c);

/// Coefficient of the empty-complex class.
Rational counit(const Element& a);

/// Leg-wise product of tensors: (a (x) b) * (c (x) d) = ac (x) bd.
TensorElement tensor_product(const TensorElement& a, const TensorElement& b);

/// P_C: the Moebius-alternating sum over spanning sub-complexes.
Element primitive_pc(const MultiComplex& c);

/// Coefficients of C as a polynomial in {P_D : D connected}: the census of
/// spanning sub-complexes grouped by the multiset of component classes.
std::map<std::vector<CanonicalKey>, long long> to_primitive_basis(const MultiComplex& c);

/// Substitutes P back in and expands; inverse of to_primitive_basis.
Element from_primitive_basis(const std::map<std::vector<CanonicalKey>, long long>& coeffs);

/// Ground truth: the graded recursion S(C) = -C - sum of S(C|_X) C|_Y over
/// proper restrictions, from m(S (x) id)Delta = unit counit.
Element antipode_axiomatic(const Element& a);

/// S(C) = sum over spanning D of (-1)^{components(D)} P_D.
Element antipode_primitive(const Element& a);

/// The grouped formula, implemented exactly as printed: sum over the census
/// of (-1)^t [C:D_1...D_t] [D_1 ... D_t]. Not expected to equal the
/// axiomatic antipode; divergences are reported, not corrected.
Element antipode_grouped(const Element& a);

bool is_primitive(const Element& a);

struct AxiomReport {
    int elements_checked = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// Per element: coassociativity, both counit laws, compatibility of Delta
/// with the product (on consecutive pairs), the antipode law, grading of
/// coproduct terms, and cocommutativity.
AxiomReport verify_hopf_axioms(const std::vector<Element>& corpus);

/// Drops the hopf-level memo tables (coproduct, product, antipode caches).
void clear_hopf_caches();

} // namespace mcx
