#ifndef MAGHOM_INTEGER_HPP
#define MAGHOM_INTEGER_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace maghom {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q", "p", or a terminating decimal such as "1.25" into an exact rational.
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto fail = [&]() -> Rational {
        throw std::invalid_argument("not a rational number: '" + s + "'");
    };
    if (s.empty())
        return fail();
    try {
        if (auto slash = s.find('/'); slash != std::string::npos) {
            Integer num(s.substr(0, slash));
            Integer den(s.substr(slash + 1));
            if (den == 0)
                return fail();
            return Rational(num, den);
        }
        if (auto dot = s.find('.'); dot != std::string::npos) {
            std::string whole = s.substr(0, dot);
            std::string frac = s.substr(dot + 1);
            bool negative = !whole.empty() && whole[0] == '-';
            if (negative)
                whole.erase(0, 1);
            if (whole.empty())
                whole = "0";
            if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos)
                return fail();
            Integer den = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac.size()));
            Integer num = Integer(whole) * den + Integer(frac);
            return Rational(negative ? Integer(-num) : num, den);
        }
        return Rational(Integer(s));
    } catch (const std::runtime_error&) {
        return fail();
    }
}

inline std::string format_rational(const Rational& r)
{
    auto num = boost::multiprecision::numerator(r);
    auto den = boost::multiprecision::denominator(r);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Integer abs_value(const Integer& v) { return v < 0 ? Integer(-v) : v; }

} // namespace maghom

#endif // MAGHOM_INTEGER_HPP
