#pragma once

#include <string>

#include "mcx/multicomplex.hpp"

namespace mcx {

/// Byte string naming an isomorphism class: the identity bytes of the
/// canonically relabeled complex. Equal keys iff isomorphic; a key can be
/// decoded back into a representative complex.
using CanonicalKey = std::string;

/// Deterministic, labeling-independent key. Connected components are
/// canonicalized separately (color refinement, then minimization over
/// color-monotone relabelings) and merged in sorted order.
CanonicalKey canonical_form(const MultiComplex& c);

/// Rebuilds the representative complex a key serializes.
MultiComplex decode_key(const CanonicalKey& key);

/// Vertex count encoded in a key (the grading degree).
int key_vertex_count(const CanonicalKey& key);

/// Component keys of a key, in stored (sorted) order. A canonical key is
/// exactly the merge of its component keys, so splitting and merging are
/// byte-level inverses; no relabeling search happens here.
std::vector<CanonicalKey> split_key_components(const CanonicalKey& key);

/// Key of the disjoint union of the named classes.
CanonicalKey merge_component_keys(std::vector<CanonicalKey> blobs);

std::string key_to_hex(const CanonicalKey& key);

bool is_isomorphic(const MultiComplex& a, const MultiComplex& b);

/// Number of isomorphisms C -> C: pairs (vertex bijection, face-instance
/// bijection) preserving contents and order.
long long automorphism_count(const MultiComplex& c);

/// Number of injective morphisms D -> C: injective vertex map f plus an
/// injective map of non-singleton face instances pi with content(pi(A)) =
/// f(content(A)) and A <= B implying pi(A) <= pi(B).
long long embedding_count(const MultiComplex& c, const MultiComplex& d);

/// [C:D]: sub-multi-complexes of C isomorphic to D, counted by a census of
/// down-closed face subsets padded with spare singletons; cross-checked
/// against embedding_count(C,D) / automorphism_count(D).
long long multiplicity(const MultiComplex& c, const MultiComplex& d);

/// Drops the process-wide memo (identity bytes -> key). For benchmarks.
void clear_canonical_cache();

} // namespace mcx
