#include <doctest.h>

#include <random>
#include <sstream>

#include "quotdens/density.hpp"

using namespace quotdens;

TEST_CASE("dx_count examples") {
    const auto [c3, r3] = dx_count([](uint64_t n) { return n % 3 == 0; }, 30);
    CHECK(c3 == 10);
    CHECK(r3 == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    const auto none = dx_count([](uint64_t) { return false; }, 100);
    CHECK(none.count == 0);
    CHECK(none.ratio == 0.0);

    const auto all = dx_count([](uint64_t) { return true; }, 7);
    CHECK(all.count == 7);
    CHECK(all.ratio == 1.0);

    CHECK_THROWS_AS(dx_count([](uint64_t) { return true; }, 0), std::invalid_argument);
}

TEST_CASE("dx_count ratio times x is the exact count") {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 20; ++trial) {
        const uint64_t x = 1 + rng() % 5'000;
        const uint64_t k = 1 + rng() % 50;
        const auto [count, ratio] = dx_count([&](uint64_t n) { return n % k == 0; }, x);
        uint64_t expected = 0;
        for (uint64_t n = 1; n <= x; ++n)
            if (n % k == 0) ++expected;
        REQUIRE(count == expected);
        REQUIRE(ratio * static_cast<double>(x) == doctest::Approx(count).epsilon(1e-12));
    }
}

TEST_CASE("logarithmic_size examples") {
    const uint64_t dyadic[] = {1, 2, 4};
    CHECK(logarithmic_size(dyadic) == 1.75);  // exact dyadic sum
    CHECK(logarithmic_size({}) == 0.0);
    const uint64_t primes14[] = {5, 13, 17, 29};
    // direct-summation oracle: 1/5 + 1/13 + 1/17 + 1/29
    long double direct = 0;
    for (uint64_t p : primes14) direct += 1.0L / p;
    CHECK(logarithmic_size(primes14) == doctest::Approx((double)direct).epsilon(1e-14));
    CHECK(logarithmic_size(primes14) == doctest::Approx(0.3702294).epsilon(1e-6));
    const uint64_t zero[] = {0};
    CHECK_THROWS_AS(logarithmic_size(zero), std::invalid_argument);
}

TEST_CASE("logarithmic_size is monotone under inclusion") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<uint64_t> a, b;
        for (int i = 0; i < 60; ++i) {
            const uint64_t v = 1 + rng() % 100'000;
            b.push_back(v);
            if (rng() % 2) a.push_back(v);
        }
        REQUIRE(logarithmic_size(a) <= logarithmic_size(b) + 1e-15);
    }
}

TEST_CASE("compensated summation tracks a long-double reference") {
    KahanSum s;
    long double ref = 0;
    for (uint64_t n = 1; n <= 2'000'000; ++n) {
        s.add(1.0 / static_cast<double>(n));
        ref += 1.0L / static_cast<long double>(n);
    }
    CHECK(s.value() == doctest::Approx((double)ref).epsilon(1e-15));
}

TEST_CASE("density series CSV schema") {
    DensitySeries s;
    s.push(10, 3);
    s.push(100, 37);
    std::ostringstream os;
    s.write_csv(os);
    CHECK(os.str() == "x,count,ratio\n10,3,0.3\n100,37,0.37\n");
    CHECK_THROWS_AS(s.push(100, 40), std::invalid_argument);  // not ascending
}

TEST_CASE("format_sig gives 12 significant digits") {
    CHECK(format_sig(1.0 / 3.0) == "0.333333333333");
    CHECK(format_sig(0.5) == "0.5");
    CHECK(format_sig(123456.0) == "123456");
}
