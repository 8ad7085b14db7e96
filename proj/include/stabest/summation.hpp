#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace stabest {

// Pairwise (tree) summation. Error grows like O(log n) instead of O(n), and
// the fixed association order makes parallel chunked reductions reproducible.
inline double pairwise_sum(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n <= 64) {
        double s = 0.0;
        for (double v : x) s += v;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(x.subspan(0, half)) + pairwise_sum(x.subspan(half));
}

// Neumaier compensated sum; `exact_zero` is true only when the running sum and
// its error term are both exactly zero, which for a handful of dyadic-rational
// inputs decides Sum(a_k) = 0 without tolerance.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
    bool exact_zero() const { return sum + comp == 0.0 && comp == 0.0 && sum == 0.0; }
};

} // namespace stabest
