#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "quotdens/bertram.hpp"
#include "quotdens/density.hpp"

namespace quotdens {

// Statistics of the additive function f(n) = number of distinct prime
// factors of n lying in P_x, where P_x is the set of primes in
// (threshold, x] with (p-1)/2 coprime to m = r*s*t.
struct TKReport {
    uint64_t x = 0;
    uint64_t m = 0;
    double delta = 0;
    double epsilon = 0;
    uint64_t px_size = 0;
    double A = 0;    // sum over prime powers p^v <= x, p in P_x, of (1/p^v)(1 - 1/p)
    double B2 = 0;   // sum of 1/p^v over the same prime powers
    double G = 0;    // sum of 1/p^{v+1}; algebraically A = B2 - G
    double lhs = 0;  // (1/x) * sum_{n<=x} (f(n) - A)^2
    double ratio = 0;        // lhs / B2 (0 when P_x empty)
    uint64_t n_bad = 0;      // |{n <= x : |f(n) - A| >= B^{1+eps}}|
    uint64_t sx_count = 0;   // |{n <= x : f(n) >= 1}|
    bool empty = false;      // P_x was empty (x too small)
    bool activated = false;  // A - B^{1+eps} > 1
};

// P_x: primes in (threshold, x] with (p-1)/2 coprime to m.
std::vector<uint64_t> px_primes(const SieveParams& params, const PrimeTable& table);

// Number of distinct primes of px dividing n; additive on coprime arguments.
uint32_t f_omega(uint64_t n, std::span<const uint64_t> px);

TKReport tk_statistics(const SieveParams& params, double epsilon, const PrimeTable& table);

struct TKCheck {
    bool holds;
    double ratio;
};

// lhs <= margin * B2?  The measured ratio is always returned; the margin is
// caller policy since the inequality's o(1) term is not computable.
TKCheck tk_inequality_check(const TKReport& report, double margin);

// x,m,delta,epsilon,Px_size,A,B2,G,lhs,ratio,n_bad,activated
void write_tk_csv(std::ostream& os, std::span<const TKReport> reports);

struct SxRow {
    uint64_t x = 0;
    uint64_t count = 0;  // |S_x|
    double ratio = 0;    // d_x(S_x)
    uint64_t complement = 0;
    uint64_t n_bad = 0;
    bool activated = false;
    bool complement_bounded = false;  // complement <= n_bad (checked when activated)
};

struct SxSeries {
    DensitySeries density;
    std::vector<SxRow> rows;
};

// d_x(S_x) along checkpoints, S_x = {n <= x : f(n) >= 1}, with the
// complement-vs-bad-count bound reported once A - B^{1+eps} > 1 holds.
SxSeries sx_series(std::span<const uint64_t> checkpoints, double delta,
                   const TriangleSignature& sig, double epsilon, const PrimeTable& table);

}  // namespace quotdens
