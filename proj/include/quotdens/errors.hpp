#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace quotdens {

// A computation hit an internal mathematical identity that must hold
// unconditionally (a lemma bound, a set identity).  Seeing this means a bug,
// never bad input.
class InvariantViolation : public std::logic_error {
public:
    explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

// A bounded search ran out of its node budget.  Partial results stay with the
// caller's sink/collection; nodes_used records how far the search got.
class BudgetExhausted : public std::runtime_error {
public:
    BudgetExhausted(const std::string& what, uint64_t nodes)
        : std::runtime_error(what), nodes_used(nodes) {}
    uint64_t nodes_used;
};

}  // namespace quotdens
