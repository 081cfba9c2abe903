#include "quotdens/bertram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "quotdens/errors.hpp"

namespace quotdens {

namespace {

// First integer strictly above a real threshold.
uint64_t above(double threshold) {
    if (threshold < 0) return 0;
    const auto f = static_cast<uint64_t>(std::floor(threshold));
    return f + 1;
}

uint64_t sum_bytes(const std::vector<uint8_t>& v) {
    uint64_t s = 0;
    for (uint8_t b : v) s += b;
    return s;
}

void collect_smooth(uint64_t v, size_t i, const std::vector<uint64_t>& primes,
                    uint64_t x, double h, std::vector<uint64_t>& out) {
    if (static_cast<double>(v) >= h) out.push_back(v);
    for (size_t j = i; j < primes.size(); ++j) {
        const uint64_t p = primes[j];
        if (v > x / p) break;
        collect_smooth(v * p, j, primes, x, h, out);
    }
}

}  // namespace

SieveParams SieveParams::make(uint64_t x, double delta, TriangleSignature sig) {
    if (x < 2) throw std::invalid_argument("SieveParams: x must be >= 2");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("SieveParams: delta must lie in (0,1)");
    const double threshold = std::pow(std::log(static_cast<double>(x)), 1.0 + delta);
    return {x, delta, sig, threshold};
}

std::string to_string(BertramKind k) {
    switch (k) {
        case BertramKind::b1: return "B1";
        case BertramKind::b2: return "B2";
        case BertramKind::b3: return "B3";
    }
    return "?";
}

ExceptionReport count_b1(uint64_t x, double f_of_x, const PrimeTable& table) {
    if (f_of_x < 2) throw std::invalid_argument("count_b1: f(x) must be >= 2");
    if (table.limit() < isqrt(x))
        throw std::invalid_argument("count_b1: table limit below sqrt(x)");
    std::vector<uint8_t> marked(x + 1, 0);
    table.for_each_prime(above(f_of_x), isqrt(x), [&](uint64_t p) {
        for (uint64_t q = p * p; q <= x; q += p * p) marked[q] = 1;
    });
    ExceptionReport r;
    r.x = x;
    r.kind = BertramKind::b1;
    r.count = sum_bytes(marked);
    r.bound = static_cast<double>(x) / f_of_x;
    r.within_bound = static_cast<double>(r.count) < r.bound;
    r.f = f_of_x;
    return r;
}

ExceptionReport count_b2(uint64_t x, double f_of_x, const PrimeTable& table) {
    if (f_of_x < 2) throw std::invalid_argument("count_b2: f(x) must be >= 2");
    if (table.limit() < isqrt(x))
        throw std::invalid_argument("count_b2: table limit below sqrt(x)");
    std::vector<uint8_t> marked(x + 1, 0);
    // n has a divisor d > 1 with d ≡ 1 mod p and p | n  <=>  p*d | n for some
    // d = 1 + jp (d is automatically coprime to p), so mark multiples of p*d.
    table.for_each_prime(above(f_of_x), isqrt(x), [&](uint64_t p) {
        for (uint64_t d = p + 1;; d += p) {
            const uint64_t pd = p * d;
            if (pd > x) break;
            for (uint64_t q = pd; q <= x; q += pd) marked[q] = 1;
        }
    });
    ExceptionReport r;
    r.x = x;
    r.kind = BertramKind::b2;
    r.count = sum_bytes(marked);
    r.bound = static_cast<double>(x) * (std::log(static_cast<double>(x)) + 1.0) / f_of_x;
    r.within_bound = static_cast<double>(r.count) < r.bound;
    r.f = f_of_x;
    return r;
}

ExceptionReport count_b3(uint64_t x, double g_of_x, double h_of_x, double c,
                         const PrimeTable& table) {
    if (g_of_x < 2 || h_of_x < 2)
        throw std::invalid_argument("count_b3: g(x) and h(x) must be >= 2");
    std::vector<uint64_t> small_primes;
    const uint64_t prime_cap =
        g_of_x < static_cast<double>(x) ? static_cast<uint64_t>(g_of_x) : x;
    table.for_each_prime(2, prime_cap, [&](uint64_t p) {
        if (static_cast<double>(p) < g_of_x) small_primes.push_back(p);
    });
    std::vector<uint64_t> smooth;  // g-smooth d in [h, x]
    collect_smooth(1, 0, small_primes, x, h_of_x, smooth);

    std::vector<uint8_t> marked(x + 1, 0);
    for (uint64_t d : smooth)
        for (uint64_t q = d; q <= x; q += d) marked[q] = 1;

    ExceptionReport r;
    r.x = x;
    r.kind = BertramKind::b3;
    r.count = sum_bytes(marked);
    r.g = g_of_x;
    r.h = h_of_x;
    r.c = c;
    r.bound = static_cast<double>(x) * (std::log(g_of_x) + c) / std::log(h_of_x);
    r.within_bound = static_cast<double>(r.count) < r.bound;
    r.c_min = static_cast<double>(r.count) * std::log(h_of_x) / static_cast<double>(x) -
              std::log(g_of_x);
    return r;
}

KxResult in_Kx(uint64_t n, const SieveParams& params, const PrimeTable& table) {
    if (n == 0 || n > params.x)
        throw std::invalid_argument("in_Kx: need 1 <= n <= params.x");
    const uint64_t m = params.signature.m();
    const Factorization f = factorize(n, table);
    std::vector<uint64_t> divs;

    for (const auto& [p, e] : f.factors) {
        if (p == 2) continue;
        if (static_cast<double>(p) <= params.threshold) continue;
        if (e != 1) continue;
        if (std::gcd((p - 1) / 2, m) != 1) continue;
        if (divs.empty()) divs = divisors(f);
        bool bad = false;
        for (uint64_t d : divs) {
            if (d > 1 && d % p == 1) {
                bad = true;
                break;
            }
        }
        if (!bad) return {true, p};
    }
    return {false, 0};
}

KxDecomposition kx_decompose(const SieveParams& params, const PrimeTable& table) {
    const uint64_t x = params.x;
    if (table.limit() < x) throw std::invalid_argument("kx_decompose: table limit below x");
    const uint64_t m = params.signature.m();
    const double T = params.threshold;

    KxDecomposition d;
    d.kx.assign(x + 1, 0);
    d.s_member.assign(x + 1, 0);
    d.g_bad.assign(x + 1, 0);
    d.h_bad.assign(x + 1, 0);

    std::vector<uint8_t> scratch;  // indexed by k = n/p, reused across primes

    table.for_each_prime(above(T), x, [&](uint64_t p) {
        // complement of H_x: a square of a large prime divides n
        if (p <= x / p) {
            for (uint64_t q = p * p; q <= x; q += p * p) d.h_bad[q] = 1;
        }
        // complement of G_x: p | n and some divisor d0 > 1 of n is ≡ 1 mod p
        for (uint64_t d0 = p + 1;; d0 += p) {
            const uint64_t pd = p * d0;
            if (pd > x) break;
            for (uint64_t q = pd; q <= x; q += pd) d.g_bad[q] = 1;
        }
        if (p == 2 || std::gcd((p - 1) / 2, m) != 1) return;
        // S_x membership and the witness set in k-space (k = n/p)
        const uint64_t M = x / p;
        if (scratch.size() < M + 1) scratch.resize(M + 1);
        std::fill_n(scratch.begin(), M + 1, uint8_t{0});
        for (uint64_t d0 = p + 1; d0 <= M; d0 += p)
            for (uint64_t k = d0; k <= M; k += d0) scratch[k] = 1;
        for (uint64_t k = 1; k <= M; ++k) {
            d.s_member[k * p] = 1;
            if (k % p != 0 && !scratch[k]) d.kx[k * p] = 1;
        }
    });
    return d;
}

KxSeries kx_series(std::span<const uint64_t> checkpoints, double delta,
                   const TriangleSignature& sig, const PrimeTable& table) {
    for (size_t i = 1; i < checkpoints.size(); ++i)
        if (checkpoints[i] <= checkpoints[i - 1])
            throw std::invalid_argument("kx_series: checkpoints must be ascending");

    KxSeries series;
    for (uint64_t x : checkpoints) {
        const SieveParams params = SieveParams::make(x, delta, sig);
        const KxDecomposition d = kx_decompose(params, table);

        KxRow row;
        row.x = x;
        row.kx_count = sum_bytes(d.kx);
        row.kx_ratio = static_cast<double>(row.kx_count) / static_cast<double>(x);
        row.comp_S = x - sum_bytes(d.s_member);
        row.comp_G = sum_bytes(d.g_bad);
        row.comp_H = sum_bytes(d.h_bad);
        row.b1_bound = static_cast<double>(x) / params.threshold;
        row.b2_bound =
            static_cast<double>(x) * (std::log(static_cast<double>(x)) + 1.0) / params.threshold;
        row.activated = params.activated();

        // {1..x}\K_x must be covered by the three complements: equivalently
        // S_x ∩ G_x ∩ H_x ⊆ K_x, elementwise and exactly.
        for (uint64_t n = 1; n <= x; ++n) {
            if (!d.kx[n] && d.s_member[n] && !d.g_bad[n] && !d.h_bad[n])
                throw InvariantViolation("kx_series: complement decomposition identity failed at n=" +
                                         std::to_string(n));
        }
        // Lemmas with f = threshold; both unconditional.
        if (!(static_cast<double>(row.comp_H) < row.b1_bound))
            throw InvariantViolation("kx_series: H complement exceeds Bertram B1 bound");
        if (!(static_cast<double>(row.comp_G) < row.b2_bound))
            throw InvariantViolation("kx_series: G complement exceeds Bertram B2 bound");

        series.density.push(x, row.kx_count);
        series.rows.push_back(row);
    }
    return series;
}

void KxSeries::write_csv(std::ostream& os) const {
    os << "x,kx_count,kx_ratio,comp_S,comp_G,comp_H,b1_bound,b2_bound,activated\n";
    for (const KxRow& r : rows) {
        os << r.x << ',' << r.kx_count << ',' << format_sig(r.kx_ratio) << ',' << r.comp_S << ','
           << r.comp_G << ',' << r.comp_H << ',' << format_sig(r.b1_bound) << ','
           << format_sig(r.b2_bound) << ',' << (r.activated ? 1 : 0) << '\n';
    }
}

}  // namespace quotdens
