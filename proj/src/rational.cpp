#include "subnorm/rational.hpp"

#include <cctype>
#include <sstream>

namespace subnorm {

std::string ExtRat::str() const {
    if (inf_) return "inf";
    return rational_str(value_);
}

Rat parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("parse_rational: zero denominator in \"" + s + "\"");
        return Rat(num, den);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        size_t frac_len = s.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+")
            throw std::invalid_argument("parse_rational: malformed \"" + s + "\"");
        Int num(digits);
        Int den = 1;
        for (size_t i = 0; i < frac_len; ++i) den *= 10;
        return Rat(num, den);
    }
    return Rat(Int(s));
}

std::string rational_str(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

double to_double(const Rat& r) { return r.convert_to<double>(); }

}  // namespace subnorm
