#pragma once

#include <cstdint>
#include <vector>

#include "quotdens/arith.hpp"

namespace quotdens {

// Residue class a mod b with gcd(a,b) = 1 (the Dirichlet hypothesis).
struct ProgressionClass {
    uint64_t residue;  // a
    uint64_t modulus;  // b

    ProgressionClass(uint64_t a, uint64_t b);
};

// Primes p <= x with p ≡ a (mod b), ascending.  Requires table.limit >= x.
std::vector<uint64_t> primes_in_class(const ProgressionClass& cls, uint64_t x,
                                      const PrimeTable& table);

struct LogSizeReport {
    double ell;        // sum of 1/p over the class primes <= x
    double predicted;  // (1/phi(b)) * log log x
    double ratio;      // ell / predicted
};

// Measured logarithmic size of V_x against its log-log asymptote.
// Requires x >= 16 so log log x is positive.
LogSizeReport logsize_vs_asymptote(const ProgressionClass& cls, uint64_t x,
                                   const PrimeTable& table);

// Class primes restricted to (log x)^{1+delta} < p <= x (natural log).
std::vector<uint64_t> truncated_class(const ProgressionClass& cls, uint64_t x,
                                      double delta, const PrimeTable& table);

// Odd primes p <= x with (p-1)/2 coprime to m, plus a flag per prime marking
// membership in the progression {2m-1 + 2mn : n >= 2} whose prime terms all
// have that property.
struct HalfCoprimePrimes {
    std::vector<uint64_t> primes;
    std::vector<uint8_t> in_progression;
};

HalfCoprimePrimes infntsize_primes(uint64_t m, uint64_t x, const PrimeTable& table);

}  // namespace quotdens
