#pragma once

#include <map>
#include <shared_mutex>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mcx/multicomplex.hpp"

namespace mcx {

using Integer = boost::multiprecision::cpp_int;

/// All down-closed subsets of the non-singleton faces, as masks, ascending.
std::vector<std::uint32_t> enumerate_ideals(const MultiComplex& c);

/// The poset X_C of spanning sub-complexes of a fixed owner, ordered by mask
/// containment. Immutable apart from the Möbius memo, which is guarded for
/// concurrent readers.
class SpanningLattice {
public:
    explicit SpanningLattice(const MultiComplex& owner);

    const MultiComplex& owner() const { return owner_; }
    const std::vector<std::uint32_t>& ideals() const { return ideals_; }
    std::uint32_t full_mask() const { return full_; }
    std::size_t size() const { return ideals_.size(); }
    bool contains(std::uint32_t mask) const;

    /// mu_P(lo, hi) by the recursion mu(lo,hi) = delta - sum over lo < F <= hi
    /// of mu(F,hi); memoized per (lo,hi) so every query against a common upper
    /// bound shares the table.
    Integer mobius(std::uint32_t lo, std::uint32_t hi) const;

    /// Independent check: sum of (-1)^length over all strict chains from lo
    /// to hi, counted by direct depth-first enumeration (no memoization).
    Integer mobius_chain_oracle(std::uint32_t lo, std::uint32_t hi) const;

private:
    void require_interval(std::uint32_t lo, std::uint32_t hi) const;
    Integer mobius_locked(std::uint32_t lo, std::uint32_t hi) const;

    MultiComplex owner_;
    std::vector<std::uint32_t> ideals_;
    std::uint32_t full_ = 0;
    mutable std::map<std::pair<std::uint32_t, std::uint32_t>, Integer> memo_;
    mutable std::shared_mutex mutex_;
};

inline SpanningLattice spanning_subcomplexes(const MultiComplex& c) {
    return SpanningLattice(c);
}

} // namespace mcx
