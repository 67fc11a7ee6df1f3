#pragma once

#include <gmpxx.h>

#include <string>

namespace padic {

/// Value of the normalized valuation v (v(p) = 1): an exact rational with
/// denominator dividing the ramification index, or +infinity for elements
/// indistinguishable from zero at the working precision.
class Valuation {
public:
    Valuation() : inf_(true) {}  // +infinity
    Valuation(long n) : inf_(false), v_(n) {}
    Valuation(const mpq_class& q) : inf_(false), v_(q) { v_.canonicalize(); }
    Valuation(long num, long den) : inf_(false), v_(num, den) { v_.canonicalize(); }

    static Valuation infinity() { return Valuation(); }

    bool is_infinite() const { return inf_; }
    bool is_finite() const { return !inf_; }

    // Finite value; undefined for +infinity.
    const mpq_class& value() const { return v_; }

    bool is_zero() const { return !inf_ && v_ == 0; }
    bool is_positive() const { return inf_ || v_ > 0; }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        if (a.inf_ != b.inf_) return false;
        return a.inf_ || a.v_ == b.v_;
    }
    friend bool operator<(const Valuation& a, const Valuation& b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.v_ < b.v_;
    }
    friend bool operator<=(const Valuation& a, const Valuation& b) { return a == b || a < b; }
    friend bool operator>(const Valuation& a, const Valuation& b) { return b < a; }
    friend bool operator>=(const Valuation& a, const Valuation& b) { return b <= a; }

    // v(xy) = v(x) + v(y); infinity absorbs.
    friend Valuation operator+(const Valuation& a, const Valuation& b) {
        if (a.inf_ || b.inf_) return infinity();
        return Valuation(mpq_class(a.v_ + b.v_));
    }

    friend Valuation min(const Valuation& a, const Valuation& b) { return a < b ? a : b; }

    std::string str() const { return inf_ ? "+inf" : v_.get_str(); }

private:
    bool inf_;
    mpq_class v_;
};

}  // namespace padic
