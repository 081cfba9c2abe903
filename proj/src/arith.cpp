#include "quotdens/arith.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace quotdens {

namespace {

constexpr char kMagic[4] = {'T', 'D', 'P', 'R'};
constexpr uint32_t kCacheVersion = 1;

uint64_t odd_count(uint64_t limit) { return limit >= 3 ? (limit - 3) / 2 + 1 : 0; }

void put_u32(std::ostream& os, uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ostream& os, uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

bool get_u32(std::istream& is, uint32_t& v) {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4)) return false;
    v = 0;
    for (int i = 0; i < 4; ++i) v |= uint32_t{b[i]} << (8 * i);
    return true;
}

bool get_u64(std::istream& is, uint64_t& v) {
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8)) return false;
    v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t{b[i]} << (8 * i);
    return true;
}

// Plain odd-only sieve used for the base primes up to sqrt(limit).
std::vector<uint64_t> small_odd_primes(uint64_t limit) {
    std::vector<uint64_t> primes;
    if (limit < 3) return primes;
    const uint64_t n = odd_count(limit);
    std::vector<uint8_t> is_p(n, 1);
    for (uint64_t k = 0; k < n; ++k) {
        const uint64_t p = 3 + 2 * k;
        if (p * p > limit) break;
        if (!is_p[k]) continue;
        for (uint64_t q = p * p; q <= limit; q += 2 * p) is_p[(q - 3) / 2] = 0;
    }
    for (uint64_t k = 0; k < n; ++k)
        if (is_p[k]) primes.push_back(3 + 2 * k);
    return primes;
}

}  // namespace

uint64_t isqrt(uint64_t n) {
    if (n == 0) return 0;
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

PrimeTable::PrimeTable(uint64_t limit, uint64_t segment_odds) {
    if (limit < 2) throw std::invalid_argument("PrimeTable: limit must be >= 2");
    if (segment_odds == 0) throw std::invalid_argument("PrimeTable: segment size must be > 0");
    limit_ = limit;
    n_odd_ = odd_count(limit);
    words_.assign((n_odd_ + 63) / 64, ~uint64_t{0});

    const auto base = small_odd_primes(isqrt(limit));

    for (uint64_t seg_lo = 0; seg_lo < n_odd_; seg_lo += segment_odds) {
        const uint64_t seg_hi = std::min(seg_lo + segment_odds, n_odd_);  // [seg_lo, seg_hi)
        const uint64_t hi_val = 3 + 2 * (seg_hi - 1);
        for (uint64_t p : base) {
            uint64_t start = p * p;
            if (start > hi_val) break;
            const uint64_t lo_val = 3 + 2 * seg_lo;
            if (start < lo_val) {
                // first odd multiple of p at or above lo_val
                uint64_t q = (lo_val + p - 1) / p;
                q += 1 - (q & 1);  // round up to odd
                start = std::max(p * p, q * p);
            }
            for (uint64_t v = start; v <= hi_val; v += 2 * p) {
                const uint64_t k = (v - 3) / 2;
                words_[k >> 6] &= ~(uint64_t{1} << (k & 63));
            }
        }
    }

    // 1 is not tracked (bitmap starts at 3); zero the slack bits in the last
    // word so popcounts and serialized bytes are well defined.
    if (n_odd_ % 64 != 0 && !words_.empty())
        words_.back() &= (uint64_t{1} << (n_odd_ % 64)) - 1;
}

bool PrimeTable::is_prime(uint64_t n) const {
    if (n > limit_) throw std::invalid_argument("PrimeTable::is_prime: n exceeds table limit");
    if (n == 2) return true;
    if (n < 2 || n % 2 == 0) return false;
    return bit((n - 3) / 2);
}

uint64_t PrimeTable::count() const {
    uint64_t c = limit_ >= 2 ? 1 : 0;
    for (uint64_t w : words_) c += static_cast<uint64_t>(std::popcount(w));
    return c;
}

std::vector<uint64_t> PrimeTable::primes_in(uint64_t lo, uint64_t hi) const {
    std::vector<uint64_t> out;
    for_each_prime(lo, hi, [&](uint64_t p) { out.push_back(p); });
    return out;
}

void PrimeTable::save(const std::filesystem::path& path) const {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("PrimeTable::save: cannot open " + path.string());
    os.write(kMagic, 4);
    put_u32(os, kCacheVersion);
    put_u64(os, limit_);
    for (uint64_t w : words_) put_u64(os, w);
    if (!os) throw std::runtime_error("PrimeTable::save: write failed for " + path.string());
}

PrimeTable PrimeTable::load(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("PrimeTable::load: cannot open " + path.string());
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("PrimeTable::load: bad magic in " + path.string());
    uint32_t version = 0;
    if (!get_u32(is, version) || version != kCacheVersion)
        throw std::runtime_error("PrimeTable::load: unsupported version in " + path.string());
    uint64_t limit = 0;
    if (!get_u64(is, limit) || limit < 2)
        throw std::runtime_error("PrimeTable::load: bad limit in " + path.string());

    PrimeTable t;
    t.limit_ = limit;
    t.n_odd_ = odd_count(limit);
    const uint64_t n_words = (t.n_odd_ + 63) / 64;
    t.words_.resize(n_words);
    for (uint64_t i = 0; i < n_words; ++i) {
        if (!get_u64(is, t.words_[i]))
            throw std::runtime_error("PrimeTable::load: truncated bitmap in " + path.string());
    }
    return t;
}

uint64_t Factorization::value() const {
    uint64_t v = 1;
    for (const auto& [p, e] : factors)
        for (uint32_t i = 0; i < e; ++i) v *= p;
    return v;
}

PrimeTable primes_up_to(uint64_t limit, uint64_t segment_odds) {
    return PrimeTable(limit, segment_odds);
}

Factorization factorize(uint64_t n, const PrimeTable& table) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    const uint64_t lim = table.limit();
    if (lim < n && lim < (uint64_t{1} << 32) && lim * lim < n)
        throw std::invalid_argument("factorize: prime table too small for n");

    Factorization f;
    f.n = n;
    uint64_t m = n;
    table.for_each_prime(2, std::min(lim, isqrt(n)), [&](uint64_t p) {
        if (p * p > m) return false;
        if (m % p == 0) {
            uint32_t e = 0;
            do {
                m /= p;
                ++e;
            } while (m % p == 0);
            f.factors.push_back({p, e});
        }
        return true;
    });
    if (m > 1) f.factors.push_back({m, 1});  // prime cofactor
    return f;
}

std::vector<uint64_t> divisors(const Factorization& f) {
    std::vector<uint64_t> divs{1};
    for (const auto& [p, e] : f.factors) {
        const size_t base = divs.size();
        uint64_t pk = 1;
        for (uint32_t i = 0; i < e; ++i) {
            pk *= p;
            for (size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

uint64_t euler_phi(const Factorization& f) {
    uint64_t phi = 1;
    for (const auto& [p, e] : f.factors) {
        for (uint32_t i = 0; i + 1 < e; ++i) phi *= p;
        phi *= p - 1;
    }
    return phi;
}

}  // namespace quotdens
