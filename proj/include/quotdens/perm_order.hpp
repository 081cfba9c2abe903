#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace quotdens {

// Permutation on 0..degree-1 as an image array.
using Perm = std::vector<uint32_t>;

Perm perm_identity(uint32_t degree);
Perm perm_compose(const Perm& a, const Perm& b);  // apply a, then b
Perm perm_inverse(const Perm& a);
bool perm_is_identity(const Perm& a);

struct GroupOrder {
    bool exceeded;   // true: order is > cap
    uint64_t order;  // exact when !exceeded
};

// Order of the group generated by gens, by an incremental stabilizer chain
// with sifting.  Aborts with exceeded=true as soon as the running product of
// orbit sizes (always a lower bound on the order) surpasses cap, which keeps
// giant images cheap when only a small window matters.
GroupOrder permutation_group_order(std::span<const Perm> gens, uint32_t degree,
                                   uint64_t cap);

}  // namespace quotdens
