#include <doctest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "quotdens/density.hpp"
#include "quotdens/dirichlet.hpp"

using namespace quotdens;

TEST_CASE("primes_in_class examples") {
    const PrimeTable t(100);
    CHECK(primes_in_class(ProgressionClass(1, 4), 30, t) ==
          std::vector<uint64_t>{5, 13, 17, 29});
    CHECK(primes_in_class(ProgressionClass(1, 2), 10, t) == std::vector<uint64_t>{3, 5, 7});
    CHECK(primes_in_class(ProgressionClass(3, 4), 20, t) ==
          std::vector<uint64_t>{3, 7, 11, 19});
    CHECK_THROWS_AS(ProgressionClass(2, 4), std::invalid_argument);
    CHECK_THROWS_AS(ProgressionClass(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(primes_in_class(ProgressionClass(1, 4), 1'000, t), std::invalid_argument);
}

TEST_CASE("logsize_vs_asymptote") {
    const PrimeTable t(10'000);
    CHECK_THROWS_AS(logsize_vs_asymptote(ProgressionClass(1, 4), 15, t), std::invalid_argument);

    SUBCASE("class 1 mod 1 at x=16 is the bare log log") {
        const LogSizeReport r = logsize_vs_asymptote(ProgressionClass(1, 1), 16, t);
        CHECK(r.predicted == doctest::Approx(std::log(std::log(16.0))).epsilon(1e-15));
        CHECK(r.predicted == doctest::Approx(1.0197).epsilon(1e-4));
    }
    SUBCASE("class 1 mod 4 at x=100 against the direct sum") {
        const LogSizeReport r = logsize_vs_asymptote(ProgressionClass(1, 4), 100, t);
        long double direct = 0;  // oracle: the eleven primes 1 mod 4 up to 100
        for (uint64_t p : {5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97}) direct += 1.0L / p;
        CHECK(r.ell == doctest::Approx((double)direct).epsilon(1e-13));
        CHECK(r.ell == doctest::Approx(0.492151867).epsilon(1e-8));
        CHECK(r.ratio == doctest::Approx(r.ell / r.predicted).epsilon(1e-15));
    }
    SUBCASE("ell is strictly increasing in x") {
        const ProgressionClass cls(1, 4);
        double prev = 0;
        for (uint64_t x : {100, 1'000, 10'000}) {
            const double ell = logsize_vs_asymptote(cls, x, t).ell;
            REQUIRE(ell > prev);
            prev = ell;
        }
    }
}

TEST_CASE("truncated_class") {
    const PrimeTable t(1'000);
    SUBCASE("3 mod 4 at x=100, delta=0.1") {
        // threshold = (log 100)^1.1 ~ 5.36
        CHECK(truncated_class(ProgressionClass(3, 4), 100, 0.1, t) ==
              std::vector<uint64_t>{7, 11, 19, 23, 31, 43, 47, 59, 67, 71, 79, 83});
    }
    SUBCASE("x=16, delta=0.9 keeps only primes above ~6.9") {
        CHECK(truncated_class(ProgressionClass(1, 1), 16, 0.9, t) ==
              std::vector<uint64_t>{7, 11, 13});
    }
    SUBCASE("window can be empty") {
        // (log 16)^1.9 ~ 6.9 > nothing of 1 mod 15 below 16... use tight x
        const auto v = truncated_class(ProgressionClass(1, 13), 16, 0.9, t);
        CHECK(v.empty());
    }
    SUBCASE("always a subset of the full class") {
        for (uint64_t b : {2, 3, 4, 5, 7}) {
            for (uint64_t a = 1; a < b; ++a) {
                if (std::gcd(a, b) != 1) continue;
                const ProgressionClass cls(a, b);
                const auto full = primes_in_class(cls, 1'000, t);
                const auto truncated = truncated_class(cls, 1'000, 0.3, t);
                for (uint64_t p : truncated)
                    REQUIRE(std::find(full.begin(), full.end(), p) != full.end());
            }
        }
    }
    CHECK_THROWS_AS(truncated_class(ProgressionClass(1, 4), 100, 0.0, t), std::invalid_argument);
    CHECK_THROWS_AS(truncated_class(ProgressionClass(1, 4), 100, 1.0, t), std::invalid_argument);
}

TEST_CASE("infntsize_primes examples") {
    const PrimeTable t(1'000);
    SUBCASE("m=6, x=100 contains 47 inside the progression") {
        const HalfCoprimePrimes r = infntsize_primes(6, 100, t);
        const auto it = std::find(r.primes.begin(), r.primes.end(), 47);
        REQUIRE(it != r.primes.end());
        CHECK(r.in_progression[it - r.primes.begin()] == 1);  // 47 = 11 + 12*3
        // 23 = 11 + 12*1 is in the class mod 12 but below the n>=2 floor
        const auto it23 = std::find(r.primes.begin(), r.primes.end(), 23);
        REQUIRE(it23 != r.primes.end());
        CHECK(r.in_progression[it23 - r.primes.begin()] == 0);
    }
    SUBCASE("m=2 gives exactly the primes 3 mod 4") {
        CHECK(infntsize_primes(2, 20, t).primes == std::vector<uint64_t>{3, 7, 11, 19});
    }
    SUBCASE("m=6, x=10") {
        CHECK(infntsize_primes(6, 10, t).primes == std::vector<uint64_t>{3});
    }
    CHECK_THROWS_AS(infntsize_primes(1, 100, t), std::invalid_argument);
    CHECK_THROWS_AS(infntsize_primes(0, 100, t), std::invalid_argument);
}

TEST_CASE("every prime of the progression 2m-1+2mn (n>=2) has (p-1)/2 coprime to m") {
    const PrimeTable t(1'000'000);
    for (uint64_t m = 2; m <= 50; ++m) {
        t.for_each_prime(3, 1'000'000, [&](uint64_t p) {
            if (p % (2 * m) == 2 * m - 1 && p >= 6 * m - 1)
                REQUIRE(std::gcd((p - 1) / 2, m) == 1);
        });
        // and the reported flags match the progression definition exactly
        const HalfCoprimePrimes r = infntsize_primes(m, 10'000, t);
        for (size_t i = 0; i < r.primes.size(); ++i) {
            const uint64_t p = r.primes[i];
            const bool expect = p % (2 * m) == 2 * m - 1 && p >= 6 * m - 1;
            REQUIRE(r.in_progression[i] == (expect ? 1 : 0));
            REQUIRE(std::gcd((p - 1) / 2, m) == 1);
        }
    }
}
