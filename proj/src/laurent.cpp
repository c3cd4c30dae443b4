#include "nilwitness/laurent.hpp"

#include <cctype>
#include <stdexcept>

namespace nilwitness {

LaurentPoly::LaurentPoly(uint32_t p) : p_(p) {
    if (!is_prime(p)) {
        throw std::invalid_argument("LaurentPoly: modulus " + std::to_string(p) + " is not prime");
    }
}

LaurentPoly LaurentPoly::monomial(const Fp& c, int64_t m) {
    LaurentPoly out(c.modulus());
    out.add_coeff(m, c.value());
    return out;
}

LaurentPoly LaurentPoly::monomial(uint32_t p, int64_t c, int64_t m) {
    LaurentPoly out(p);
    out.add_coeff(m, c);
    return out;
}

uint32_t LaurentPoly::coeff(int64_t m) const {
    auto it = coeffs_.find(m);
    return it == coeffs_.end() ? 0 : it->second;
}

void LaurentPoly::add_coeff(int64_t m, int64_t c) {
    uint32_t v = add_mod(coeff(m), reduce_mod(c, p_), p_);
    if (v == 0) {
        coeffs_.erase(m);
    } else {
        coeffs_[m] = v;
    }
}

std::optional<int64_t> LaurentPoly::valuation() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.begin()->first;
}

LaurentPoly add(const LaurentPoly& x, const LaurentPoly& y) {
    if (x.modulus() != y.modulus()) {
        throw std::invalid_argument("add: modulus mismatch");
    }
    LaurentPoly out = x;
    for (const auto& [m, c] : y.support()) out.add_coeff(m, c);
    return out;
}

LaurentPoly negate(const LaurentPoly& x) {
    LaurentPoly out(x.modulus());
    for (const auto& [m, c] : x.support()) out.add_coeff(m, neg_mod(c, x.modulus()));
    return out;
}

LaurentPoly shift(const LaurentPoly& x, int64_t k) {
    LaurentPoly out(x.modulus());
    for (const auto& [m, c] : x.support()) out.add_coeff(m + k, c);
    return out;
}

LaurentPoly parity_part(const LaurentPoly& x, int parity) {
    LaurentPoly out(x.modulus());
    for (const auto& [m, c] : x.support()) {
        if (((m % 2) + 2) % 2 == parity) out.add_coeff(m, c);
    }
    return out;
}

std::string LaurentPoly::to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : coeffs_) {
        if (!out.empty()) out += " + ";
        if (c != 1) {
            out += std::to_string(c);
            out += "*";
        }
        out += "t^";
        out += std::to_string(m);
    }
    return out;
}

namespace {

struct Cursor {
    std::string_view s;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() { return s[i]; }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    int64_t integer() {
        skip_ws();
        bool neg = false;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
            neg = s[i] == '-';
            ++i;
        }
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) {
            throw std::invalid_argument("LaurentPoly::parse: expected integer in \"" +
                                        std::string(s) + "\"");
        }
        int64_t v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + (s[i] - '0');
            ++i;
        }
        return neg ? -v : v;
    }
};

}  // namespace

LaurentPoly LaurentPoly::parse(uint32_t p, std::string_view text) {
    LaurentPoly out(p);
    Cursor cur{text};
    if (cur.done()) throw std::invalid_argument("LaurentPoly::parse: empty input");
    bool first = true;
    while (!cur.done()) {
        int64_t sign = 1;
        if (!first) {
            if (cur.eat('+')) {
                sign = 1;
            } else if (cur.eat('-')) {
                sign = -1;
            } else {
                throw std::invalid_argument("LaurentPoly::parse: expected '+' or '-' in \"" +
                                            std::string(text) + "\"");
            }
        } else if (cur.eat('-')) {
            sign = -1;
        }
        first = false;
        cur.skip_ws();

        int64_t coeff = 1;
        bool have_coeff = false;
        if (cur.i < text.size() && std::isdigit(static_cast<unsigned char>(cur.peek()))) {
            coeff = cur.integer();
            have_coeff = true;
            cur.eat('*');
        }
        cur.skip_ws();
        int64_t exponent = 0;
        if (cur.i < text.size() && (cur.peek() == 't' || cur.peek() == 'T')) {
            ++cur.i;
            exponent = cur.eat('^') ? cur.integer() : 1;
        } else if (!have_coeff) {
            throw std::invalid_argument("LaurentPoly::parse: malformed term in \"" +
                                        std::string(text) + "\"");
        }
        out.add_coeff(exponent, sign * coeff);
    }
    return out;
}

}  // namespace nilwitness
