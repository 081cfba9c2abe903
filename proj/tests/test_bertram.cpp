#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "quotdens/bertram.hpp"
#include "quotdens/errors.hpp"

using namespace quotdens;

TEST_CASE("sieve params") {
    const SieveParams p = SieveParams::make(1'000'000, 0.1, TriangleSignature(3, 5, 7));
    CHECK(p.threshold == doctest::Approx(17.963).epsilon(1e-4));
    CHECK_FALSE(p.activated());  // 17.96 < 105
    const SieveParams q = SieveParams::make(1'000'000, 0.1, TriangleSignature(2, 2, 2));
    CHECK(q.activated());  // 17.96 > 8
    CHECK_THROWS_AS(SieveParams::make(100, 0.0, TriangleSignature(2, 3, 7)),
                    std::invalid_argument);
    CHECK_THROWS_AS(SieveParams::make(100, 1.0, TriangleSignature(2, 3, 7)),
                    std::invalid_argument);
    CHECK_THROWS_AS(SieveParams::make(1, 0.5, TriangleSignature(2, 3, 7)),
                    std::invalid_argument);
}

TEST_CASE("count_b1 examples") {
    const PrimeTable t(1'000);
    const ExceptionReport r = count_b1(100, 5.0, t);
    CHECK(r.count == 2);  // 49 and 98
    CHECK(r.bound == doctest::Approx(20.0));
    CHECK(r.within_bound);
    CHECK(count_b1(48, 7.0, t).count == 0);
    CHECK_THROWS_AS(count_b1(100, 1.0, t), std::invalid_argument);
}

TEST_CASE("count_b2 example n=56") {
    const PrimeTable t(1'000);
    const ExceptionReport r = count_b2(100, 5.0, t);
    // brute scan: n=56 is the only one (p=7 | 56, d=8 ≡ 1 mod 7)
    uint64_t expect = 0;
    for (uint64_t n = 1; n <= 100; ++n)
        if (oracle::b2_member(n, 5.0)) ++expect;
    CHECK(expect == 1);
    CHECK(oracle::b2_member(56, 5.0));
    CHECK(r.count == expect);
    CHECK(count_b2(20, 19.0, t).count == 0);
}

TEST_CASE("count_b3 examples") {
    const PrimeTable t(1'000);
    const ExceptionReport r = count_b3(100, 3.0, 8.0, 2.0, t);
    uint64_t expect = 0;
    for (uint64_t n = 1; n <= 100; ++n)
        if (oracle::b3_member(n, 3.0, 8.0)) ++expect;
    CHECK(r.count == expect);
    CHECK(oracle::b3_member(8, 3.0, 8.0));  // d = 8 = 2^3
    CHECK(count_b3(10, 2.0, 16.0, 2.0, t).count == 0);
    CHECK_THROWS_AS(count_b3(100, 1.0, 8.0, 2.0, t), std::invalid_argument);
}

TEST_CASE("exceptional-set counts match divisor-scan oracles up to 2000") {
    const PrimeTable t(2'000);
    for (double f : {3.0, 5.0, 10.0}) {
        uint64_t e1 = 0, e2 = 0;
        for (uint64_t n = 1; n <= 2'000; ++n) {
            if (oracle::b1_member(n, f)) ++e1;
            if (oracle::b2_member(n, f)) ++e2;
        }
        REQUIRE(count_b1(2'000, f, t).count == e1);
        REQUIRE(count_b2(2'000, f, t).count == e2);
    }
    for (auto [g, h] : {std::pair{5.0, 20.0}, {3.0, 8.0}, {7.6, 12.0}}) {
        uint64_t e3 = 0;
        for (uint64_t n = 1; n <= 2'000; ++n)
            if (oracle::b3_member(n, g, h)) ++e3;
        REQUIRE(count_b3(2'000, g, h, 2.0, t).count == e3);
    }
}

TEST_CASE("b1 and b2 stay strictly below their bounds at 1e4") {
    const PrimeTable t(10'000);
    const double f = std::pow(std::log(10'000.0), 1.1);
    const ExceptionReport r1 = count_b1(10'000, f, t);
    const ExceptionReport r2 = count_b2(10'000, f, t);
    CHECK(r1.within_bound);
    CHECK(static_cast<double>(r1.count) < r1.bound);
    CHECK(r2.within_bound);
    CHECK(static_cast<double>(r2.count) < r2.bound);
}

TEST_CASE("b3 minimal constant semantics") {
    const PrimeTable t(10'000);
    const ExceptionReport r = count_b3(10'000, 8.0, 50.0, 0.0, t);
    CHECK(count_b3(10'000, 8.0, 50.0, r.c_min + 0.01, t).within_bound);
    if (r.count > 0) CHECK_FALSE(count_b3(10'000, 8.0, 50.0, r.c_min - 0.01, t).within_bound);
}

TEST_CASE("in_Kx examples") {
    const PrimeTable t(1'000'000);
    SUBCASE("46 at x=1e6 for (3,5,7): witness 23") {
        const SieveParams p = SieveParams::make(1'000'000, 0.1, TriangleSignature(3, 5, 7));
        const KxResult r = in_Kx(46, p, t);
        CHECK(r.member);
        CHECK(r.witness == 23);
    }
    SUBCASE("1 has no prime factor") {
        const SieveParams p = SieveParams::make(1'000'000, 0.1, TriangleSignature(3, 5, 7));
        CHECK_FALSE(in_Kx(1, p, t).member);
    }
    SUBCASE("168 has no factor above the threshold") {
        const SieveParams p = SieveParams::make(1'000'000, 0.1, TriangleSignature(2, 3, 7));
        CHECK_FALSE(in_Kx(168, p, t).member);
    }
    SUBCASE("n above x is rejected") {
        const SieveParams p = SieveParams::make(100, 0.1, TriangleSignature(2, 3, 7));
        CHECK_THROWS_AS(in_Kx(101, p, t), std::invalid_argument);
    }
}

TEST_CASE("in_Kx agrees with the divisor-scan oracle up to 3000") {
    const PrimeTable t(3'000);
    for (auto sig : {TriangleSignature(3, 5, 7), TriangleSignature(2, 3, 7)}) {
        for (double delta : {0.1, 0.5}) {
            const SieveParams p = SieveParams::make(3'000, delta, sig);
            for (uint64_t n = 1; n <= 3'000; ++n) {
                const KxResult r = in_Kx(n, p, t);
                const uint64_t w = oracle::kx_witness(n, p.threshold, sig.m());
                REQUIRE(r.member == (w != 0));
                if (r.member) REQUIRE(r.witness == w);
            }
        }
    }
}

TEST_CASE("raising delta never adds elements to K_x") {
    const PrimeTable t(2'000);
    const TriangleSignature sig(3, 5, 7);
    const SieveParams lo = SieveParams::make(2'000, 0.1, sig);
    const SieveParams hi = SieveParams::make(2'000, 0.5, sig);
    for (uint64_t n = 1; n <= 2'000; ++n)
        if (in_Kx(n, hi, t).member) REQUIRE(in_Kx(n, lo, t).member);
}

TEST_CASE("kx_decompose matches per-n predicates") {
    const PrimeTable t(10'000);
    const TriangleSignature sig(3, 5, 7);
    const SieveParams p = SieveParams::make(10'000, 0.1, sig);
    const KxDecomposition d = kx_decompose(p, t);
    SUBCASE("kx bitmap equals in_Kx for every n up to 1e4") {
        for (uint64_t n = 1; n <= 10'000; ++n)
            REQUIRE(static_cast<bool>(d.kx[n]) == in_Kx(n, p, t).member);
    }
    SUBCASE("constituent bitmaps match brute membership up to 2000") {
        for (uint64_t n = 1; n <= 2'000; ++n) {
            REQUIRE(static_cast<bool>(d.s_member[n]) ==
                    oracle::s_member(n, p.threshold, sig.m()));
            REQUIRE(static_cast<bool>(d.g_bad[n]) == !oracle::g_member(n, p.threshold));
            REQUIRE(static_cast<bool>(d.h_bad[n]) == !oracle::h_member(n, p.threshold));
        }
    }
    SUBCASE("true containments: S∩G∩H ⊆ K ⊆ S") {
        for (uint64_t n = 1; n <= 10'000; ++n) {
            if (d.s_member[n] && !d.g_bad[n] && !d.h_bad[n]) REQUIRE(d.kx[n]);
            if (d.kx[n]) REQUIRE(d.s_member[n]);
        }
    }
}

TEST_CASE("the witness set is strictly larger than the triple intersection") {
    // n = 1081 = 23*47 at x=1e5, m=105: witness 47 passes all four bullets,
    // yet 47 ≡ 1 (mod 23) breaks the all-large-primes divisor condition, so
    // n is outside G_x.  This pins the exists-witness semantics of in_Kx.
    const PrimeTable t(100'000);
    const SieveParams p = SieveParams::make(100'000, 0.1, TriangleSignature(3, 5, 7));
    const KxResult r = in_Kx(1'081, p, t);
    CHECK(r.member);
    CHECK(r.witness == 47);
    CHECK_FALSE(oracle::g_member(1'081, p.threshold));
}

TEST_CASE("kx_series rows and identities") {
    const PrimeTable t(100'000);
    const std::vector<uint64_t> checkpoints{1'000, 10'000, 100'000};
    const KxSeries s = kx_series(checkpoints, 0.1, TriangleSignature(2, 3, 7), t);
    REQUIRE(s.rows.size() == 3);
    for (size_t i = 0; i < s.rows.size(); ++i) {
        const KxRow& r = s.rows[i];
        CHECK(r.x == checkpoints[i]);
        CHECK(r.kx_count == s.density.counts[i]);
        CHECK(static_cast<double>(r.comp_H) < r.b1_bound);
        CHECK(static_cast<double>(r.comp_G) < r.b2_bound);
        // union bound: |{1..x}\K| <= sum of the three complement counts
        CHECK(r.x - r.kx_count <= r.comp_S + r.comp_G + r.comp_H);
    }
    // the density climb emerges from 1e4 on (it can dip below that)
    CHECK(s.rows[2].kx_ratio > s.rows[1].kx_ratio);

    std::ostringstream os;
    s.write_csv(os);
    const std::string csv = os.str();
    CHECK(csv.rfind("x,kx_count,kx_ratio,comp_S,comp_G,comp_H,b1_bound,b2_bound,activated\n",
                    0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);

    CHECK_THROWS_AS(kx_series(std::vector<uint64_t>{100, 100}, 0.1,
                              TriangleSignature(2, 3, 7), t),
                    std::invalid_argument);
}
