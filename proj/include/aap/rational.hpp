#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace aap {

// Arbitrary-precision integers and rationals. Rationals are kept in canonical
// reduced form (gcd(p,q)=1, q>0) by the backend on every operation.
// Expression templates are off so that arithmetic in generic code yields the
// plain number types.
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline Int numer(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int denom(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Rat rat(long long n, long long d = 1) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    return Rat(Int(n), Int(d));
}

inline int sign(const Rat& r) { return r.sign(); }

inline Rat abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

/// Renders "p" when the denominator is 1, "p/q" otherwise.
inline std::string to_string(const Rat& r) {
    std::string s = numer(r).str();
    if (denom(r) != 1) s += "/" + denom(r).str();
    return s;
}

/// Parses an exact rational from "p" or "p/q". Floating-point syntax
/// ("0.5", "1e-3") is rejected: exactness is the whole point.
inline Rat parse_rational(const std::string& text) {
    auto fail = [&] { throw std::invalid_argument("not an exact rational: '" + text + "'"); };
    if (text.empty()) fail();
    auto check_int = [&](const std::string& part, bool allow_sign) {
        if (part.empty()) fail();
        std::size_t i = 0;
        if (allow_sign && (part[0] == '+' || part[0] == '-')) i = 1;
        if (i == part.size()) fail();
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9') fail();
    };
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        check_int(text, true);
        return Rat(Int(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    check_int(num, true);
    check_int(den, false);
    Int d(den);
    if (d == 0) fail();
    return Rat(Int(num), d);
}

inline Int int_gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(Int a, Int b) { return boost::multiprecision::lcm(a, b); }

inline Int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Int r = 1;
    for (int i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

inline Int pow2(int e) { return Int(1) << e; }

}  // namespace aap
