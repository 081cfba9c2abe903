#include "quotdens/density.hpp"

#include <cstdio>
#include <ostream>

#include "quotdens/errors.hpp"

namespace quotdens {

std::string format_sig(double v, int significant_digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", significant_digits, v);
    return buf;
}

double logarithmic_size(std::span<const uint64_t> elems) {
    KahanSum s;
    for (uint64_t n : elems) {
        if (n == 0) throw std::invalid_argument("logarithmic_size: elements must be >= 1");
        s.add(1.0 / static_cast<double>(n));
    }
    return s.value();
}

void DensitySeries::push(uint64_t x, uint64_t count) {
    if (!checkpoints.empty() && x <= checkpoints.back())
        throw std::invalid_argument("DensitySeries: checkpoints must be ascending");
    if (!counts.empty() && count < counts.back())
        throw InvariantViolation("DensitySeries: counts must be non-decreasing");
    checkpoints.push_back(x);
    counts.push_back(count);
    ratios.push_back(static_cast<double>(count) / static_cast<double>(x));
}

void DensitySeries::write_csv(std::ostream& os) const {
    os << "x,count,ratio\n";
    for (size_t i = 0; i < checkpoints.size(); ++i)
        os << checkpoints[i] << ',' << counts[i] << ',' << format_sig(ratios[i]) << '\n';
}

}  // namespace quotdens
