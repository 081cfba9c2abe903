#include "quotdens/dirichlet.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "quotdens/density.hpp"

namespace quotdens {

namespace {

uint64_t phi_by_trial_division(uint64_t b) {
    uint64_t phi = 1, m = b;
    for (uint64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p != 0) continue;
        uint64_t pk = 1;
        while (m % p == 0) {
            m /= p;
            pk *= p;
        }
        phi *= pk - pk / p;
    }
    if (m > 1) phi *= m - 1;
    return phi;
}

}  // namespace

ProgressionClass::ProgressionClass(uint64_t a, uint64_t b) : residue(a), modulus(b) {
    if (a == 0 || b == 0)
        throw std::invalid_argument("ProgressionClass: residue and modulus must be positive");
    if (std::gcd(a, b) != 1)
        throw std::invalid_argument("ProgressionClass: gcd(a,b) must be 1");
}

std::vector<uint64_t> primes_in_class(const ProgressionClass& cls, uint64_t x,
                                      const PrimeTable& table) {
    if (table.limit() < x)
        throw std::invalid_argument("primes_in_class: table limit below x");
    std::vector<uint64_t> out;
    const uint64_t target = cls.residue % cls.modulus;
    table.for_each_prime(2, x, [&](uint64_t p) {
        if (p % cls.modulus == target) out.push_back(p);
    });
    return out;
}

LogSizeReport logsize_vs_asymptote(const ProgressionClass& cls, uint64_t x,
                                   const PrimeTable& table) {
    if (x < 16)
        throw std::invalid_argument("logsize_vs_asymptote: x must be >= 16");
    if (table.limit() < x)
        throw std::invalid_argument("logsize_vs_asymptote: table limit below x");
    KahanSum ell;
    const uint64_t target = cls.residue % cls.modulus;
    table.for_each_prime(2, x, [&](uint64_t p) {
        if (p % cls.modulus == target) ell.add(1.0 / static_cast<double>(p));
    });
    const double phi = static_cast<double>(phi_by_trial_division(cls.modulus));
    const double predicted = std::log(std::log(static_cast<double>(x))) / phi;
    const double e = ell.value();
    return {e, predicted, e / predicted};
}

std::vector<uint64_t> truncated_class(const ProgressionClass& cls, uint64_t x,
                                      double delta, const PrimeTable& table) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("truncated_class: delta must lie in (0,1)");
    if (table.limit() < x)
        throw std::invalid_argument("truncated_class: table limit below x");
    const double threshold = std::pow(std::log(static_cast<double>(x)), 1.0 + delta);
    std::vector<uint64_t> out;
    const uint64_t target = cls.residue % cls.modulus;
    table.for_each_prime(2, x, [&](uint64_t p) {
        if (static_cast<double>(p) > threshold && p % cls.modulus == target)
            out.push_back(p);
    });
    return out;
}

HalfCoprimePrimes infntsize_primes(uint64_t m, uint64_t x, const PrimeTable& table) {
    if (m < 2) throw std::invalid_argument("infntsize_primes: m must be >= 2");
    if (table.limit() < x)
        throw std::invalid_argument("infntsize_primes: table limit below x");
    HalfCoprimePrimes out;
    const uint64_t two_m = 2 * m;
    const uint64_t progression_floor = 6 * m - 1;  // 2m-1 + 2mn with n >= 2
    table.for_each_prime(3, x, [&](uint64_t p) {
        if (std::gcd((p - 1) / 2, m) != 1) return;
        out.primes.push_back(p);
        const bool in_prog = p % two_m == two_m - 1 && p >= progression_floor;
        out.in_progression.push_back(in_prog ? 1 : 0);
    });
    return out;
}

}  // namespace quotdens
