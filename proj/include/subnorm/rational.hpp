#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace subnorm {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

/// Nonnegative rational extended with a single point at infinity.
/// Arithmetic follows the measure-theoretic conventions
/// 0*inf = inf*0 = 0, 1/0 = inf, 0/0 = 1.
class ExtRat {
public:
    ExtRat() : value_(0), inf_(false) {}
    ExtRat(Rat v) : value_(std::move(v)), inf_(false) {
        if (value_ < 0) throw std::invalid_argument("ExtRat: negative value");
    }
    ExtRat(int v) : ExtRat(Rat(v)) {}

    static ExtRat infinity() {
        ExtRat e;
        e.inf_ = true;
        return e;
    }

    bool is_infinite() const { return inf_; }
    bool is_finite() const { return !inf_; }

    const Rat& finite_value() const {
        if (inf_) throw std::logic_error("ExtRat: infinite value has no finite part");
        return value_;
    }

    bool operator==(const ExtRat& o) const {
        return inf_ == o.inf_ && (inf_ || value_ == o.value_);
    }
    bool operator!=(const ExtRat& o) const { return !(*this == o); }
    bool operator<(const ExtRat& o) const {
        if (inf_) return false;
        if (o.inf_) return true;
        return value_ < o.value_;
    }
    bool operator<=(const ExtRat& o) const { return *this < o || *this == o; }

    ExtRat operator+(const ExtRat& o) const {
        if (inf_ || o.inf_) return infinity();
        return ExtRat(value_ + o.value_);
    }
    ExtRat operator*(const ExtRat& o) const {
        if (inf_ || o.inf_) {
            // 0 * inf = 0
            if ((is_finite() && value_ == 0) || (o.is_finite() && o.value_ == 0))
                return ExtRat(Rat(0));
            return infinity();
        }
        return ExtRat(value_ * o.value_);
    }

    std::string str() const;

private:
    Rat value_;
    bool inf_;
};

/// Exact quotient with the paper's conventions: p/0 = inf for p > 0, 0/0 = 1.
inline ExtRat ext_div(const Rat& num, const Rat& den) {
    if (den == 0) {
        if (num == 0) return ExtRat(Rat(1));
        return ExtRat::infinity();
    }
    return ExtRat(num / den);
}

/// r^n for any integer n; negative exponents require r != 0.
inline Rat rat_pow(const Rat& r, long n) {
    if (n < 0) {
        if (r == 0) throw std::invalid_argument("rat_pow: negative power of zero");
        return rat_pow(Rat(1) / r, -n);
    }
    Rat out = 1;
    Rat base = r;
    for (unsigned long k = static_cast<unsigned long>(n); k; k >>= 1) {
        if (k & 1) out *= base;
        base *= base;
    }
    return out;
}

/// Parses "p/q", "p", or a plain decimal such as "0.25", exactly.
Rat parse_rational(const std::string& s);

/// Canonical "p/q" (or "p" for integers) rendering.
std::string rational_str(const Rat& r);

double to_double(const Rat& r);

}  // namespace subnorm
