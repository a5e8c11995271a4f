#include "lojeig/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace lojeig {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

Rational parse_rational(const std::string& text) {
    std::string s = text;
    if (s.empty()) throw input_error("empty coefficient string");

    bool negative = false;
    if (s[0] == '+' || s[0] == '-') {
        negative = (s[0] == '-');
        s = s.substr(1);
    }
    if (s.empty()) throw input_error("sign with no digits in coefficient '" + text + "'");

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw input_error("malformed fraction '" + text + "'");
        Rational q{BigInt(num, 10), BigInt(den, 10)};
        if (q.get_den() == 0) throw input_error("zero denominator in '" + text + "'");
        q.canonicalize();
        if (negative) q = -q;
        return q;
    }

    // Decimal / scientific: mantissa [.fraction] [e exponent], all exact.
    std::string mantissa = s;
    long exp10 = 0;
    auto epos = s.find_first_of("eE");
    if (epos != std::string::npos) {
        mantissa = s.substr(0, epos);
        std::string es = s.substr(epos + 1);
        if (es.empty()) throw input_error("empty exponent in '" + text + "'");
        bool eneg = false;
        if (es[0] == '+' || es[0] == '-') {
            eneg = (es[0] == '-');
            es = es.substr(1);
        }
        if (!all_digits(es)) throw input_error("malformed exponent in '" + text + "'");
        exp10 = std::strtol(es.c_str(), nullptr, 10);
        if (eneg) exp10 = -exp10;
    }

    std::string digits = mantissa;
    auto dot = mantissa.find('.');
    if (dot != std::string::npos) {
        digits = mantissa.substr(0, dot) + mantissa.substr(dot + 1);
        exp10 -= static_cast<long>(mantissa.size() - dot - 1);
    }
    if (!all_digits(digits))
        throw input_error("malformed coefficient '" + text + "'");

    Rational q{BigInt(digits, 10)};
    BigInt pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    if (exp10 >= 0)
        q *= Rational{pow10};
    else
        q /= Rational{pow10};
    q.canonicalize();
    if (negative) q = -q;
    return q;
}

std::string rational_to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

} // namespace lojeig
