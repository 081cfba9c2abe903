#include "quotdens/turan_kubilius.hpp"

#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "quotdens/dirichlet.hpp"
#include "quotdens/errors.hpp"

namespace quotdens {

namespace {

// Histogram of f(n) over 1..x, f(n) = #{p in px : p | n}, by one sieve pass.
std::vector<uint64_t> f_histogram(uint64_t x, std::span<const uint64_t> px) {
    std::vector<uint8_t> fcnt(x + 1, 0);
    for (uint64_t p : px)
        for (uint64_t q = p; q <= x; q += p) ++fcnt[q];
    uint8_t maxf = 0;
    for (uint64_t n = 1; n <= x; ++n) maxf = std::max(maxf, fcnt[n]);
    std::vector<uint64_t> hist(maxf + 1, 0);
    for (uint64_t n = 1; n <= x; ++n) ++hist[fcnt[n]];
    return hist;
}

}  // namespace

std::vector<uint64_t> px_primes(const SieveParams& params, const PrimeTable& table) {
    const uint64_t m = params.signature.m();
    std::vector<uint64_t> px;
    if (m == 1) {
        table.for_each_prime(3, params.x, [&](uint64_t p) {
            if (static_cast<double>(p) > params.threshold) px.push_back(p);
        });
        return px;
    }
    const HalfCoprimePrimes family = infntsize_primes(m, params.x, table);
    for (uint64_t p : family.primes)
        if (static_cast<double>(p) > params.threshold) px.push_back(p);
    return px;
}

uint32_t f_omega(uint64_t n, std::span<const uint64_t> px) {
    uint32_t count = 0;
    for (uint64_t p : px) {
        if (p > n) break;
        if (n % p == 0) ++count;
    }
    return count;
}

TKReport tk_statistics(const SieveParams& params, double epsilon, const PrimeTable& table) {
    if (!(epsilon > 0)) throw std::invalid_argument("tk_statistics: epsilon must be > 0");
    if (params.x < 16) throw std::invalid_argument("tk_statistics: x must be >= 16");
    if (table.limit() < params.x)
        throw std::invalid_argument("tk_statistics: table limit below x");

    TKReport r;
    r.x = params.x;
    r.m = params.signature.m();
    r.delta = params.delta;
    r.epsilon = epsilon;

    const std::vector<uint64_t> px = px_primes(params, table);
    r.px_size = px.size();
    if (px.empty()) {
        r.empty = true;
        r.sx_count = 0;
        return r;
    }

    // A, B2, G over the prime powers p^v <= x with p in P_x.  A gets its own
    // compensated sum so A = B2 - G stays a genuine two-route identity.
    KahanSum a_sum, b2_sum, g_sum;
    for (uint64_t p : px) {
        const double pd = static_cast<double>(p);
        for (uint64_t q = p; q <= params.x; ) {
            const double qd = static_cast<double>(q);
            a_sum.add((1.0 / qd) * (1.0 - 1.0 / pd));
            b2_sum.add(1.0 / qd);
            g_sum.add(1.0 / (qd * pd));
            if (q > params.x / p) break;
            q *= p;
        }
    }
    r.A = a_sum.value();
    r.B2 = b2_sum.value();
    r.G = g_sum.value();

    const std::vector<uint64_t> hist = f_histogram(params.x, px);
    const double b_eps = std::pow(r.B2, (1.0 + epsilon) / 2.0);

    KahanSum lhs_sum;
    uint64_t n_bad = 0;
    for (size_t v = 0; v < hist.size(); ++v) {
        if (hist[v] == 0) continue;
        const double dev = static_cast<double>(v) - r.A;
        lhs_sum.add(static_cast<double>(hist[v]) * dev * dev);
        if (std::abs(dev) >= b_eps) n_bad += hist[v];
    }
    r.lhs = lhs_sum.value() / static_cast<double>(params.x);
    r.ratio = r.lhs / r.B2;
    r.n_bad = n_bad;
    r.sx_count = params.x - hist[0];
    r.activated = r.A - b_eps > 1.0;

    // f(n) = 0 and A >= B^{1+eps} forces n bad, so the S_x complement is
    // covered by the bad count whenever that holds.
    if (r.A >= b_eps && hist[0] > r.n_bad)
        throw InvariantViolation("tk_statistics: S_x complement exceeds bad count");
    return r;
}

TKCheck tk_inequality_check(const TKReport& report, double margin) {
    if (!(report.B2 > 0))
        throw std::invalid_argument("tk_inequality_check: needs B2 > 0");
    return {report.lhs <= margin * report.B2, report.lhs / report.B2};
}

void write_tk_csv(std::ostream& os, std::span<const TKReport> reports) {
    os << "x,m,delta,epsilon,Px_size,A,B2,G,lhs,ratio,n_bad,activated\n";
    for (const TKReport& r : reports) {
        os << r.x << ',' << r.m << ',' << format_sig(r.delta) << ',' << format_sig(r.epsilon)
           << ',' << r.px_size << ',' << format_sig(r.A) << ',' << format_sig(r.B2) << ','
           << format_sig(r.G) << ',' << format_sig(r.lhs) << ',' << format_sig(r.ratio) << ','
           << r.n_bad << ',' << (r.activated ? 1 : 0) << '\n';
    }
}

SxSeries sx_series(std::span<const uint64_t> checkpoints, double delta,
                   const TriangleSignature& sig, double epsilon, const PrimeTable& table) {
    for (size_t i = 1; i < checkpoints.size(); ++i)
        if (checkpoints[i] <= checkpoints[i - 1])
            throw std::invalid_argument("sx_series: checkpoints must be ascending");
    SxSeries series;
    for (uint64_t x : checkpoints) {
        const TKReport r = tk_statistics(SieveParams::make(x, delta, sig), epsilon, table);
        SxRow row;
        row.x = x;
        row.count = r.sx_count;
        row.ratio = static_cast<double>(r.sx_count) / static_cast<double>(x);
        row.complement = x - r.sx_count;
        row.n_bad = r.n_bad;
        row.activated = r.activated;
        row.complement_bounded = !r.activated || row.complement <= r.n_bad;
        series.density.push(x, row.count);
        series.rows.push_back(row);
    }
    return series;
}

}  // namespace quotdens
