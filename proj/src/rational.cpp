#include "marclab/rational.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace marclab {

double to_double(const Rat& r) { return r.convert_to<double>(); }

Rat rat_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rat_from_double: non-finite input");
    return Rat(x);  // exact for finite doubles
}

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("rat_from_string: empty string");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("rat_from_string: zero denominator");
        return Rat(num, den);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rat(BigInt(s));
    std::string head = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool neg = !head.empty() && head[0] == '-';
    if (neg || (!head.empty() && head[0] == '+')) head = head.substr(1);
    if (head.empty()) head = "0";
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt num = BigInt(head) * scale + (frac.empty() ? BigInt(0) : BigInt(frac));
    Rat r(num, scale);
    return neg ? Rat(-r) : r;
}

std::string rat_to_string(const Rat& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << '/' << denominator(r);
    return os.str();
}

Rat rat_pow(const Rat& base, int exp) {
    if (exp < 0) {
        if (base == 0) throw std::domain_error("rat_pow: zero to negative power");
        return Rat(1) / rat_pow(base, -exp);
    }
    Rat acc = 1, b = base;
    while (exp > 0) {
        if (exp & 1) acc *= b;
        b *= b;
        exp >>= 1;
    }
    return acc;
}

Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

}  // namespace marclab
