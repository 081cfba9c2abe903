#include "quotdens/triangle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace quotdens {

std::string to_string(TriangleClass c) {
    switch (c) {
        case TriangleClass::spherical: return "spherical";
        case TriangleClass::euclidean: return "euclidean";
        case TriangleClass::hyperbolic: return "hyperbolic";
    }
    return "?";
}

TriangleSignature::TriangleSignature(uint32_t r_, uint32_t s_, uint32_t t_)
    : r(r_), s(s_), t(t_) {
    if (r == 0 || s == 0 || t == 0)
        throw std::invalid_argument("TriangleSignature: r,s,t must be >= 1");
    if (uint64_t{r} > kMaxExponent || uint64_t{s} > kMaxExponent || uint64_t{t} > kMaxExponent)
        throw std::invalid_argument("TriangleSignature: exponent too large");
}

TriangleClass classify(const TriangleSignature& sig) {
    // 1/r + 1/s + 1/t vs 1  <=>  st + rt + rs vs rst
    const uint64_t r = sig.r, s = sig.s, t = sig.t;
    const uint64_t lhs = s * t + r * t + r * s;
    const uint64_t rhs = r * s * t;
    if (lhs > rhs) return TriangleClass::spherical;
    if (lhs == rhs) return TriangleClass::euclidean;
    return TriangleClass::hyperbolic;
}

std::vector<uint64_t> euclidean_smooth_orders(EuclideanKind kind, uint64_t limit) {
    if (limit < 1) throw std::invalid_argument("euclidean_smooth_orders: limit must be >= 1");
    std::vector<uint64_t> out;
    for (uint64_t b = 0;; ++b) {
        const uint64_t min_val = kind == EuclideanKind::k236 ? 6 * b * b : 4 * b * b;
        if (b > 0 && min_val > limit) break;
        for (uint64_t c = 0;; ++c) {
            if (b == 0 && c == 0) continue;
            const uint64_t v = kind == EuclideanKind::k236 ? 6 * (b * b + b * c + c * c)
                                                           : 4 * (b * b + c * c);
            if (v > limit) break;
            out.push_back(v);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ExclusionResult prop_b_excludes(uint64_t n, const TriangleSignature& sig,
                                const PrimeTable& table) {
    if (n == 0) throw std::invalid_argument("prop_b_excludes: n must be positive");
    const Factorization f = factorize(n, table);
    std::vector<uint64_t> divs;  // filled lazily, only if a candidate survives

    for (const auto& [p, e] : f.factors) {
        if (p == 2) continue;       // (p-1)/2 must be a positive integer
        if (e != 1) continue;       // (i) gcd(p, n/p) = 1
        const uint64_t half = (p - 1) / 2;
        int coprime_half = 0;
        for (uint64_t v : {uint64_t{sig.r}, uint64_t{sig.s}, uint64_t{sig.t}})
            if (std::gcd(v, half) == 1) ++coprime_half;
        if (coprime_half < 2) continue;
        if (sig.r % p == 0 || sig.s % p == 0 || sig.t % p == 0) continue;

        if (divs.empty()) divs = divisors(f);
        bool has_unit_divisor = false;  // (ii) some d > 1 with d ≡ 1 mod p
        for (uint64_t d : divs) {
            if (d > 1 && d % p == 1) {
                has_unit_divisor = true;
                break;
            }
        }
        if (!has_unit_divisor) return {true, p};
    }
    return {false, 0};
}

}  // namespace quotdens
