#pragma once

#include <utility>
#include <vector>

#include "mcx/element.hpp"
#include "mcx/multicomplex.hpp"

namespace mcx {

// Encoders from classical combinatorial objects. Each returns a fully
// validated complex; each family is closed under restriction and disjoint
// union, so it spans a Hopf subalgebra.

/// Simple graph: singletons plus one {a,b} face per edge, minimal order.
MultiComplex from_graph(int n, const std::vector<std::pair<int, int>>& edges);

/// Multigraph: k parallel edges become k identical faces, a loop at a
/// becomes the multiset face {a,a}.
MultiComplex from_multigraph(int n, const std::vector<std::pair<int, int>>& edges);

/// Hypergraph: one face per hyperedge (repeats inside an edge collapse; the
/// edge list itself is a multiset). A singleton hyperedge {a} would collide
/// with the mandatory vertex face, so it is rejected unless
/// allow_singletons is set, which encodes it as the loop {a,a}.
MultiComplex from_hypergraph(int n, const std::vector<std::vector<int>>& edges,
                             bool allow_singletons = false);

/// Abstract simplicial complex: the family must be downward closed and list
/// every singleton of its support; repeated subsets collapse. Order is
/// inclusion.
MultiComplex from_simplicial(int n, const std::vector<std::vector<int>>& family);

/// One positive-dimensional simplex of a Delta-complex: a user id plus the
/// ordered tuple of its 0-simplices (length >= 2, repeats allowed; the
/// 0-simplices themselves are implicit in the base set).
struct DeltaSimplex {
    int id = 0;
    std::vector<int> vertices;
};

/// Delta-complex from explicit incidences: `parent_of` pairs (child id,
/// parent id) assert "child is a face of parent" and are closed
/// transitively; vertex relations are implicit. Only the induced vertex
/// multisets and the face order are retained.
MultiComplex from_delta(int n, const std::vector<DeltaSimplex>& simplices,
                        const std::vector<std::pair<int, int>>& parent_of);

/// Colored simplicial complex: the family obeys the from_simplicial rules
/// and colors[i] >= 0 pairs with family[i]. A vertex with color k gains k
/// loop faces {a,a}; a positive-dimensional face gains that many extra
/// copies. Order is strict multiset containment, so equal copies stay
/// incomparable.
MultiComplex from_colored_simplicial(int n, const std::vector<std::vector<int>>& family,
                                     const std::vector<long long>& colors);

/// Dimension <= 1 fast path for the primitive element: the alternating sum
/// over edge subsets E of (-1)^|E| [C - E]. Agrees with primitive_pc.
Element pc_dim1(const MultiComplex& c);

} // namespace mcx
