#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quotdens/arith.hpp"

namespace quotdens {

enum class TriangleClass { spherical, euclidean, hyperbolic };

std::string to_string(TriangleClass c);

// Signature (r,s,t) of the two-generator triangle group
// < x, y | x^r = y^s = (xy)^t = 1 >.  Values of 1 are permitted and collapse
// the corresponding generator.
struct TriangleSignature {
    // keeps m = r*s*t comfortably inside 64 bits
    static constexpr uint32_t kMaxExponent = 1u << 20;

    uint32_t r, s, t;

    TriangleSignature(uint32_t r_, uint32_t s_, uint32_t t_);

    uint64_t m() const { return uint64_t{r} * s * t; }
    friend bool operator==(const TriangleSignature&, const TriangleSignature&) = default;
};

// Spherical / euclidean / hyperbolic by 1/r + 1/s + 1/t against 1,
// decided in exact integer arithmetic.
TriangleClass classify(const TriangleSignature& sig);

enum class EuclideanKind { k236, k244 };  // (2,3,6) and (2,4,4)

// All values <= limit of 6(b^2+bc+c^2) resp. 4(b^2+c^2) over integers
// b, c >= 0 not both zero, sorted ascending.
std::vector<uint64_t> euclidean_smooth_orders(EuclideanKind kind, uint64_t limit);

struct ExclusionResult {
    bool excluded = false;
    uint64_t witness = 0;  // the certifying prime when excluded
};

// Arithmetic exclusion test: true certifies that n is not the order of any
// finite quotient of the triangle group with this signature.  Looks for an
// odd prime p | n with p coprime to n/p, no divisor d > 1 of n congruent to
// 1 mod p, at least two of r,s,t coprime to (p-1)/2, and all of r,s,t
// coprime to p.  Returns the least such witness.
ExclusionResult prop_b_excludes(uint64_t n, const TriangleSignature& sig,
                                const PrimeTable& table);

}  // namespace quotdens
