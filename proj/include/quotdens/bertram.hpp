#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "quotdens/arith.hpp"
#include "quotdens/density.hpp"
#include "quotdens/triangle.hpp"

namespace quotdens {

// (x, delta, signature) bundle fixing the thresholds of the exclusion-set
// construction.  threshold = (log x)^{1+delta}, natural log.  The
// construction is fully active only when threshold > r*s*t; below that the
// predicates still evaluate literally but reports flag the checkpoint.
struct SieveParams {
    uint64_t x;
    double delta;
    TriangleSignature signature;
    double threshold;

    static SieveParams make(uint64_t x, double delta, TriangleSignature sig);
    bool activated() const { return threshold > static_cast<double>(signature.m()); }
};

enum class BertramKind { b1, b2, b3 };

std::string to_string(BertramKind k);

// One exceptional-set count against its stated upper bound.  For kinds b1
// and b2 the bound is a theorem: count < bound must always hold.
struct ExceptionReport {
    uint64_t x = 0;
    BertramKind kind = BertramKind::b1;
    uint64_t count = 0;
    double bound = 0;
    bool within_bound = false;
    double f = 0;          // b1/b2 parameter function value
    double g = 0, h = 0;   // b3 parameter function values
    double c = 0;          // b3: the constant supplied by the caller
    double c_min = 0;      // b3: infimum c for which count < bound holds
};

// |{n <= x : p^2 | n for some prime p > f_of_x}|, exact; bound x/f.
ExceptionReport count_b1(uint64_t x, double f_of_x, const PrimeTable& table);

// |{n <= x : some prime p > f_of_x divides n and some divisor d > 1 of n
// has d ≡ 1 mod p}|, exact; bound x(log x + 1)/f.
ExceptionReport count_b2(uint64_t x, double f_of_x, const PrimeTable& table);

// |{n <= x : some divisor d >= h_of_x of n has all prime factors < g_of_x}|,
// exact; bound x(log g + c)/log h for the supplied c.
ExceptionReport count_b3(uint64_t x, double g_of_x, double h_of_x, double c,
                         const PrimeTable& table);

struct KxResult {
    bool member = false;
    uint64_t witness = 0;  // least witness prime when member
};

// Exists-witness membership test: true iff some odd prime p | n has
//   p > threshold,  p^2 does not divide n,  gcd((p-1)/2, r*s*t) = 1,
//   and no divisor d > 1 of n is ≡ 1 mod p.
KxResult in_Kx(uint64_t n, const SieveParams& params, const PrimeTable& table);

// Membership bitmaps over 1..x (index 0 unused) for the witness set K_x and
// the three constituent sets it is built from.  g_bad/h_bad mark the
// COMPLEMENTS of G_x and H_x.
struct KxDecomposition {
    std::vector<uint8_t> kx;        // exists-witness K_x
    std::vector<uint8_t> s_member;  // S_x
    std::vector<uint8_t> g_bad;     // {1..x} \ G_x
    std::vector<uint8_t> h_bad;     // {1..x} \ H_x
};

KxDecomposition kx_decompose(const SieveParams& params, const PrimeTable& table);

struct KxRow {
    uint64_t x = 0;
    uint64_t kx_count = 0;
    double kx_ratio = 0;
    uint64_t comp_S = 0, comp_G = 0, comp_H = 0;
    double b1_bound = 0, b2_bound = 0;
    bool activated = false;
};

struct KxSeries {
    DensitySeries density;
    std::vector<KxRow> rows;

    // x,kx_count,kx_ratio,comp_S,comp_G,comp_H,b1_bound,b2_bound,activated
    void write_csv(std::ostream& os) const;
};

// Per checkpoint: |K_x|, d_x(K_x) and the exact complement counts of S_x,
// G_x, H_x.  Verifies elementwise that {1..x}\K_x is covered by the three
// complements and that the complement counts respect the Bertram bounds
// (both are theorems; violations throw InvariantViolation).
KxSeries kx_series(std::span<const uint64_t> checkpoints, double delta,
                   const TriangleSignature& sig, const PrimeTable& table);

}  // namespace quotdens
