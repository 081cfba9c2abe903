#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace quotdens {

// Neumaier-compensated accumulator.  The quantities here are long, slowly
// varying tails of reciprocals where naive summation loses digits.
class KahanSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

std::string format_sig(double v, int significant_digits = 12);

struct CountRatio {
    uint64_t count;
    double ratio;
};

// |{n <= x : pred(n)}| and the finite-x density, streaming over 1..x.
template <typename Pred>
CountRatio dx_count(Pred&& pred, uint64_t x) {
    if (x == 0) throw std::invalid_argument("dx_count: x must be positive");
    uint64_t count = 0;
    for (uint64_t n = 1; n <= x; ++n)
        if (pred(n)) ++count;
    return {count, static_cast<double>(count) / static_cast<double>(x)};
}

// Sum of reciprocals of the elements (their "logarithmic size").
// Elements must be distinct positive integers; order does not matter.
double logarithmic_size(std::span<const uint64_t> elems);

struct DensitySeries {
    std::vector<uint64_t> checkpoints;
    std::vector<uint64_t> counts;
    std::vector<double> ratios;

    void push(uint64_t x, uint64_t count);
    void write_csv(std::ostream& os) const;  // header: x,count,ratio
};

}  // namespace quotdens
