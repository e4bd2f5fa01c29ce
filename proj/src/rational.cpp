#include "gmwin/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace gmwin {

std::string rational_to_string(const Rational& r) {
    const Int num = numerator(r);
    const Int den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

namespace {

bool parse_int_token(const std::string& s, std::size_t& pos, Int& out) {
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
    std::size_t digits_from = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits_from) return false;
    out = Int(s.substr(start, pos - start));
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::size_t pos = 0;
    Int num;
    if (!parse_int_token(text, pos, num)) {
        throw std::invalid_argument("not a rational: '" + text + "'");
    }
    if (pos == text.size()) return Rational(num);
    if (text[pos] != '/') {
        throw std::invalid_argument("not a rational: '" + text + "'");
    }
    ++pos;
    Int den;
    if (!parse_int_token(text, pos, den) || pos != text.size()) {
        throw std::invalid_argument("not a rational: '" + text + "'");
    }
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(num, den);
}

bool is_integer(const Rational& r) { return denominator(r) == 1; }

Int floor_rational(const Rational& r) {
    Int q = numerator(r) / denominator(r);  // truncates toward zero
    if (q * denominator(r) != numerator(r) && r < 0) --q;
    return q;
}

Int ceil_rational(const Rational& r) { return -floor_rational(-r); }

std::string int_to_string(const Int& n) { return n.str(); }

}  // namespace gmwin
