#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quotdens/bertram.hpp"
#include "quotdens/low_index.hpp"
#include "quotdens/perm_order.hpp"
#include "quotdens/triangle.hpp"

namespace quotdens {

// Exact order of the permutation group generated by the two generator
// actions.  Throws std::overflow_error if the order does not fit in 64 bits.
uint64_t image_order(const CosetTable& tbl);

// Orders of finite quotients of the triangle group found up to max_order,
// with one witnessing coset-table degree per order.  complete_up_to states
// the window [1, complete_up_to] in which the catalog is exhaustive; it is 0
// when the search ran out of budget (partial = true).
struct QuotientCatalog {
    explicit QuotientCatalog(TriangleSignature sig) : signature(sig) {}

    TriangleSignature signature;
    uint32_t max_index = 0;
    uint64_t complete_up_to = 0;
    std::vector<uint64_t> orders;
    std::vector<std::pair<uint64_t, uint32_t>> provenance;  // order -> degree
    bool partial = false;

    bool contains(uint64_t order) const;
    std::string to_json() const;
};

// Requires max_index >= max_order, which makes the catalog complete in
// [1, max_order]: every quotient of order q <= max_order is the image of a
// regular table of degree q.
QuotientCatalog quotient_orders(const TriangleSignature& sig, uint64_t max_order,
                                uint32_t max_index, uint64_t max_nodes = kDefaultNodeBudget);

struct CrossCheckEntry {
    uint64_t n = 0;
    bool kx = false;
    uint64_t kx_witness = 0;
    bool prop_b = false;
    uint64_t prop_b_witness = 0;
    bool is_quotient_order = false;
};

// Confronts the two exclusion predicates with the enumerated quotient
// orders: any n that a predicate rules out yet the catalog contains is a
// violation (the paper's mechanism failing), reported as a hard failure.
struct CrossCheckReport {
    explicit CrossCheckReport(TriangleSignature sig) : signature(sig), catalog(sig) {}

    TriangleSignature signature;
    uint64_t x = 0;
    double delta = 0;
    uint64_t max_n = 0;
    uint32_t max_index = 0;
    bool activated = false;  // threshold > r*s*t
    bool partial = false;    // catalog enumeration ran out of budget
    QuotientCatalog catalog;
    std::vector<CrossCheckEntry> flagged;  // entries with kx or prop_b set
    std::vector<uint64_t> violations;

    std::string to_json() const;
};

// Requires max_index >= max_n and params.x >= max_n.
CrossCheckReport cross_check(const TriangleSignature& sig, const SieveParams& params,
                             uint64_t max_n, uint32_t max_index, const PrimeTable& table,
                             uint64_t max_nodes = kDefaultNodeBudget);

}  // namespace quotdens
