#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace gbap {

// Exact accumulator for sums of von Mangoldt values. Every log p with p >= 2
// lies in [0.5, 32), so its double representation is an integer multiple of
// 2^-53 and fits in 58 bits after scaling. Sums of such values are therefore
// exact in 128-bit integers and independent of summation order.
using Fixed = __int128;

inline constexpr int kFixedShift = 53;

inline std::int64_t to_fixed(double lambda) {
    return static_cast<std::int64_t>(std::ldexp(lambda, kFixedShift));
}

// Correctly rounded conversion back to double.
inline double from_fixed(Fixed f) {
    return std::ldexp(static_cast<double>(f), -kFixedShift);
}

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    CompensatedSum& operator+=(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
        return *this;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class ComplexCompensatedSum {
public:
    ComplexCompensatedSum& operator+=(std::complex<double> x) {
        re_ += x.real();
        im_ += x.imag();
        return *this;
    }

    std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

} // namespace gbap
