#pragma once

#include <cmath>
#include <algorithm>

namespace rangerenew {

// Value of an infinite sum or integral together with a bound on the absolute
// error (truncation tail plus rounding allowance). Arithmetic propagates the
// bounds; they are small enough that first-order propagation suffices.
struct CertifiedValue {
    double value = 0.0;
    double abs_error = 0.0;

    friend CertifiedValue operator+(CertifiedValue a, CertifiedValue b) {
        return {a.value + b.value, a.abs_error + b.abs_error};
    }
    friend CertifiedValue operator-(CertifiedValue a, CertifiedValue b) {
        return {a.value - b.value, a.abs_error + b.abs_error};
    }
    friend CertifiedValue operator*(double c, CertifiedValue a) {
        return {c * a.value, std::abs(c) * a.abs_error};
    }
    CertifiedValue& operator+=(CertifiedValue b) {
        value += b.value;
        abs_error += b.abs_error;
        return *this;
    }
    double lower() const { return value - abs_error; }
    double upper() const { return value + abs_error; }
};

// Neumaier variant of compensated summation: the correction term also
// captures the case |term| > |sum|.
class CompensatedSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
        abs_sum_ += std::abs(x);
    }
    double value() const { return sum_ + comp_; }
    // Rounding allowance for the compensated result.
    double rounding_error() const {
        return 4.0 * 2.220446049250313e-16 * abs_sum_;
    }
private:
    double sum_ = 0.0;
    double comp_ = 0.0;
    double abs_sum_ = 0.0;
};

} // namespace rangerenew
