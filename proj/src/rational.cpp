#include "sftweyl/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace sftweyl {

std::string to_string(const Rational& r) {
    return r.get_str();
}

Rational rational_from_string(const std::string& s) {
    if (s.empty())
        throw std::invalid_argument("empty rational literal");
    std::size_t i = 0;
    if (s[i] == '-') ++i;
    bool digits = false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        ++i;
        digits = true;
    }
    if (!digits)
        throw std::invalid_argument("malformed rational literal '" + s + "'");
    if (i < s.size()) {
        if (s[i] != '/')
            throw std::invalid_argument("malformed rational literal '" + s + "'");
        ++i;
        bool den = false;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            ++i;
            den = true;
        }
        if (!den || i != s.size())
            throw std::invalid_argument("malformed rational literal '" + s + "'");
    }
    Rational r(s);
    if (r.get_den() == 0)
        throw std::invalid_argument("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

} // namespace sftweyl
