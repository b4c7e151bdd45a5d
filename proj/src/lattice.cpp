#include "mcx/lattice.hpp"

#include <algorithm>
#include <bit>
#include <mutex>

namespace mcx {

std::vector<std::uint32_t> enumerate_ideals(const MultiComplex& c) {
    const int m = c.nonsingleton_count();
    if (m > 26)
        fail(errc::size_limit_exceeded,
             "ideal enumeration over " + std::to_string(m) + " faces (limit 26)");
    std::vector<std::uint32_t> downs(m);
    for (int i = 0; i < m; ++i) downs[i] = c.nonsingleton_down(i);

    std::vector<std::uint32_t> out;
    const std::uint64_t end = std::uint64_t{1} << m;
    for (std::uint64_t mask = 0; mask < end; ++mask) {
        std::uint32_t rest = static_cast<std::uint32_t>(mask);
        bool closed = true;
        while (rest && closed) {
            const int i = std::countr_zero(rest);
            rest &= rest - 1;
            closed = (downs[i] & ~static_cast<std::uint32_t>(mask)) == 0;
        }
        if (closed) out.push_back(static_cast<std::uint32_t>(mask));
    }
    return out;
}

SpanningLattice::SpanningLattice(const MultiComplex& owner)
    : owner_(owner), ideals_(enumerate_ideals(owner)) {
    const int m = owner_.nonsingleton_count();
    full_ = m >= 32 ? ~0u : (1u << m) - 1;
}

bool SpanningLattice::contains(std::uint32_t mask) const {
    return std::binary_search(ideals_.begin(), ideals_.end(), mask);
}

void SpanningLattice::require_interval(std::uint32_t lo, std::uint32_t hi) const {
    if (!contains(lo) || !contains(hi))
        fail(errc::not_downward_closed, "mask is not a spanning sub-complex of the owner");
    if ((lo & ~hi) != 0) fail(errc::not_comparable, "lower mask is not contained in upper mask");
}

Integer SpanningLattice::mobius(std::uint32_t lo, std::uint32_t hi) const {
    require_interval(lo, hi);
    std::unique_lock lock(mutex_);
    return mobius_locked(lo, hi);
}

Integer SpanningLattice::mobius_locked(std::uint32_t lo, std::uint32_t hi) const {
    if (lo == hi) return 1;
    const auto key = std::make_pair(lo, hi);
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
    Integer acc = 0;
    for (const std::uint32_t f : ideals_) {
        if (f == lo || (f & ~hi) != 0 || (lo & ~f) != 0) continue;
        acc -= mobius_locked(f, hi);
    }
    memo_[key] = acc;
    return acc;
}

Integer SpanningLattice::mobius_chain_oracle(std::uint32_t lo, std::uint32_t hi) const {
    require_interval(lo, hi);
    std::vector<std::uint32_t> interval;
    for (const std::uint32_t f : ideals_)
        if ((lo & ~f) == 0 && (f & ~hi) == 0) interval.push_back(f);
    if (interval.size() > 1u << 12)
        fail(errc::size_limit_exceeded, "chain enumeration interval too large");

    // strict-superset lists by interval position (submask implies numerically
    // smaller, so interval[0] == lo)
    const int count = static_cast<int>(interval.size());
    std::vector<std::vector<int>> up(count);
    for (int i = 0; i < count; ++i)
        for (int j = i + 1; j < count; ++j)
            if ((interval[i] & ~interval[j]) == 0) up[i].push_back(j);

    long long acc = 0;
    // chains lo = F0 < F1 < ... < Fk = hi contribute (-1)^k
    auto dfs = [&](auto&& self, int from, int sign) -> void {
        if (interval[from] == hi) {
            acc += sign;
            return;
        }
        for (const int g : up[from]) self(self, g, -sign);
    };
    dfs(dfs, 0, 1);
    return acc;
}

} // namespace mcx
