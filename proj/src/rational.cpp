#include "symdiv/rational.hpp"

#include <regex>
#include <stdexcept>

namespace symdiv {

Rational parse_rational(const std::string& text) {
    static const std::regex form(R"(\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?)");
    std::smatch m;
    if (!std::regex_match(text, m, form))
        throw std::invalid_argument("not a rational: \"" + text + "\"");
    Integer num(m[1].str());
    Integer den(1);
    if (m[2].matched) den = Integer(m[2].str());
    if (den == 0) throw std::invalid_argument("zero denominator: \"" + text + "\"");
    return Rational(num, den);
}

std::string to_string(const Rational& r) {
    const Integer& num = boost::multiprecision::numerator(r);
    const Integer& den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

}  // namespace symdiv
