#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

namespace quotdens {

uint64_t isqrt(uint64_t n);

// Primality bitmap for 2..limit, packed over odd integers: bit k of the word
// array is the integer 3 + 2k, and 2 is handled as a special case.  Built by
// a segmented sieve so peak working memory beyond the bitmap is one segment.
// Immutable after construction; concurrent reads are safe.
class PrimeTable {
public:
    static constexpr uint64_t kDefaultSegmentOdds = uint64_t{1} << 20;

    explicit PrimeTable(uint64_t limit, uint64_t segment_odds = kDefaultSegmentOdds);

    uint64_t limit() const { return limit_; }
    bool is_prime(uint64_t n) const;  // n <= limit
    uint64_t count() const;           // pi(limit)

    std::vector<uint64_t> primes_in(uint64_t lo, uint64_t hi) const;

    // Visit primes in [lo, hi] ascending.  F may return void, or bool to stop
    // early (return false = stop).
    template <typename F>
    void for_each_prime(uint64_t lo, uint64_t hi, F&& f) const;

    // Cache file: "TDPR", u32 version, u64 limit, then the odd bitmap as
    // little-endian 64-bit words (LSB of word 0 = integer 3).
    void save(const std::filesystem::path& path) const;
    static PrimeTable load(const std::filesystem::path& path);

private:
    PrimeTable() = default;

    uint64_t limit_ = 0;
    uint64_t n_odd_ = 0;               // number of odd integers tracked
    std::vector<uint64_t> words_;

    bool bit(uint64_t k) const { return (words_[k >> 6] >> (k & 63)) & 1; }
};

struct PrimePower {
    uint64_t prime;
    uint32_t exponent;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// n together with its full prime-power decomposition, primes strictly
// increasing.  n = 1 has an empty factor list.
struct Factorization {
    uint64_t n = 1;
    std::vector<PrimePower> factors;

    uint64_t value() const;  // recomputed product, for consistency checks
};

PrimeTable primes_up_to(uint64_t limit,
                        uint64_t segment_odds = PrimeTable::kDefaultSegmentOdds);

// Requires table.limit >= n or table.limit^2 >= n, so that at most one
// cofactor above the table limit survives trial division and must be prime.
Factorization factorize(uint64_t n, const PrimeTable& table);

// All divisors of n, ascending, including 1 and n.
std::vector<uint64_t> divisors(const Factorization& f);

uint64_t euler_phi(const Factorization& f);

template <typename F>
void PrimeTable::for_each_prime(uint64_t lo, uint64_t hi, F&& f) const {
    constexpr bool stoppable = std::is_invocable_r_v<bool, F, uint64_t>;
    if (hi > limit_)
        throw std::invalid_argument("PrimeTable::for_each_prime: range exceeds table limit");
    if (lo > hi) return;
    if (lo <= 2 && hi >= 2) {
        if constexpr (stoppable) {
            if (!f(uint64_t{2})) return;
        } else {
            f(uint64_t{2});
        }
    }
    if (hi < 3) return;
    uint64_t first = lo < 3 ? 3 : (lo | 1);  // first odd >= max(lo, 3)
    if (first > hi) return;
    uint64_t k = (first - 3) / 2;
    uint64_t k_end = (hi - (hi & 1 ? 3 : 4)) / 2;  // last odd <= hi
    if (hi < 3 || k > k_end) return;
    uint64_t w = k >> 6;
    uint64_t word = words_[w] & (~uint64_t{0} << (k & 63));
    const uint64_t w_last = k_end >> 6;
    for (;;) {
        while (word != 0) {
            uint64_t b = (w << 6) + static_cast<uint64_t>(__builtin_ctzll(word));
            if (b > k_end) return;
            if constexpr (stoppable) {
                if (!f(3 + 2 * b)) return;
            } else {
                f(3 + 2 * b);
            }
            word &= word - 1;
        }
        if (++w > w_last) return;
        word = words_[w];
    }
}

}  // namespace quotdens
