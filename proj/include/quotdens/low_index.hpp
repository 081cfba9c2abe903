#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "quotdens/errors.hpp"
#include "quotdens/triangle.hpp"

namespace quotdens {

// Transitive action of the triangle group on the cosets 0..degree-1 of a
// subgroup, basepoint coset 0: the images of every coset under x and y.
struct CosetTable {
    uint32_t degree = 0;
    std::vector<uint32_t> x_img;
    std::vector<uint32_t> y_img;

    uint32_t xy(uint32_t c) const { return y_img[x_img[c]]; }
    friend bool operator==(const CosetTable&, const CosetTable&) = default;
};

// x^r, y^s and (xy)^t all trace to the identity and the action is transitive.
bool coset_table_valid(const CosetTable& t, const TriangleSignature& sig);

inline constexpr uint64_t kDefaultNodeBudget = 50'000'000;

struct SearchStats {
    uint64_t nodes = 0;
    bool complete = true;  // false when the node budget ran out
};

// One coset table per conjugacy class of subgroups of index <= max_index
// (first-in-class canonicity), emitted in deterministic search order.
// Returns complete=false when the node budget was hit; whatever was emitted
// before that stays valid.
SearchStats enumerate_coset_tables(const TriangleSignature& sig, uint32_t max_index,
                                   const std::function<void(const CosetTable&)>& sink,
                                   uint64_t max_nodes = kDefaultNodeBudget);

// Regular tables only (degree = order of the image): exactly one table per
// normal subgroup of index <= max_index.  The search carries the left-
// multiplication action alongside the coset action and propagates their
// commutation, so non-normal branches die early instead of being filtered.
SearchStats enumerate_regular_tables(const TriangleSignature& sig, uint32_t max_index,
                                     const std::function<void(const CosetTable&)>& sink,
                                     uint64_t max_nodes = kDefaultNodeBudget);

class LowIndexBudgetExhausted : public BudgetExhausted {
public:
    LowIndexBudgetExhausted(uint64_t nodes, std::vector<CosetTable> partial)
        : BudgetExhausted("low-index search: node budget exhausted", nodes),
          partial_tables(std::move(partial)) {}
    std::vector<CosetTable> partial_tables;
};

// Collecting wrapper around enumerate_coset_tables; throws
// LowIndexBudgetExhausted (carrying the tables found so far) on budget
// exhaustion.
std::vector<CosetTable> low_index_tables(const TriangleSignature& sig, uint32_t max_index,
                                         uint64_t max_nodes = kDefaultNodeBudget);

}  // namespace quotdens
