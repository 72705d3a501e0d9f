#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sigtau {

using Integer = boost::multiprecision::cpp_int;

/// Raised when an operation would need a non-exact integer division.
class InexactDivision : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// a / b, requiring b | a.
inline Integer exact_div(const Integer& a, const Integer& b)
{
    if (b == 0) {
        throw InexactDivision("division by zero");
    }
    Integer q;
    Integer r;
    boost::multiprecision::divide_qr(a, b, q, r);
    if (r != 0) {
        throw InexactDivision("inexact division " + a.str() + " / " + b.str());
    }
    return q;
}

inline bool divides(const Integer& d, const Integer& a)
{
    if (d == 0) {
        return a == 0;
    }
    return a % d == 0;
}

/// Representative of a in [0, |m|).
inline Integer floor_mod(const Integer& a, const Integer& m)
{
    Integer r = a % m;
    if (r < 0) {
        r += abs(m);
    }
    return r;
}

inline std::int64_t floor_mod(std::int64_t a, std::int64_t m)
{
    std::int64_t r = a % m;
    return r < 0 ? r + (m < 0 ? -m : m) : r;
}

inline bool is_prime(std::int64_t n)
{
    if (n < 2) {
        return false;
    }
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

inline bool is_square_free(std::int64_t n)
{
    if (n == 0) {
        return false;
    }
    std::int64_t m = n < 0 ? -n : n;
    for (std::int64_t d = 2; d * d <= m; ++d) {
        if (m % (d * d) == 0) {
            return false;
        }
    }
    return true;
}

/// Extended gcd: returns g = gcd(a, b) >= 0 and sets x, y with a*x + b*y = g.
inline Integer extended_gcd(const Integer& a, const Integer& b, Integer& x, Integer& y)
{
    Integer old_r = a, r = b;
    Integer old_s = 1, s = 0;
    Integer old_t = 0, t = 1;
    while (r != 0) {
        Integer q = old_r / r;
        Integer tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    x = old_s;
    y = old_t;
    return old_r;
}

inline Integer parse_integer(std::string_view text)
{
    std::size_t b = 0;
    std::size_t e = text.size();
    while (b < e && (text[b] == ' ' || text[b] == '\t')) {
        ++b;
    }
    while (e > b && (text[e - 1] == ' ' || text[e - 1] == '\t')) {
        --e;
    }
    std::string_view body = text.substr(b, e - b);
    std::size_t digits = (!body.empty() && (body[0] == '-' || body[0] == '+')) ? 1 : 0;
    if (body.size() == digits) {
        throw std::invalid_argument("empty integer literal");
    }
    for (std::size_t i = digits; i < body.size(); ++i) {
        if (body[i] < '0' || body[i] > '9') {
            throw std::invalid_argument("not an integer: '" + std::string(body) + "'");
        }
    }
    std::string s(body[0] == '+' ? body.substr(1) : body);
    return Integer(s);
}

/// Parses "1,-2,3" into integers. An empty string yields an empty list.
inline std::vector<Integer> parse_integer_list(std::string_view text)
{
    std::vector<Integer> out;
    if (text.find_first_not_of(" \t") == std::string_view::npos) {
        return out;
    }
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        out.push_back(parse_integer(text.substr(start, comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

inline std::int64_t to_int64(const Integer& v)
{
    if (v > Integer(INT64_MAX) || v < Integer(INT64_MIN)) {
        throw std::overflow_error("integer does not fit in 64 bits: " + v.str());
    }
    return static_cast<std::int64_t>(v);
}

} // namespace sigtau
