#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "nilwitness/linalg.hpp"

namespace nilwitness {

// Finitely supported Laurent polynomial over F_p: an element of the dense
// subgroup F_p[t, 1/t] of F_p((t)). Only the additive group structure is
// provided; every operation in this library preserves finite support, so
// all arithmetic is exact.
class LaurentPoly {
public:
    explicit LaurentPoly(uint32_t p);

    static LaurentPoly monomial(const Fp& c, int64_t m);
    static LaurentPoly monomial(uint32_t p, int64_t c, int64_t m);

    uint32_t modulus() const { return p_; }
    bool is_zero() const { return coeffs_.empty(); }

    // Coefficient at exponent m; 0 when m is outside the support.
    uint32_t coeff(int64_t m) const;

    // Adds c to the coefficient at exponent m, pruning zeros.
    void add_coeff(int64_t m, int64_t c);

    // Exponent -> nonzero coefficient, in increasing exponent order.
    const std::map<int64_t, uint32_t>& support() const { return coeffs_; }

    // Minimum of the support; nullopt is the +infinity marker of the zero
    // element and is never mixed into integer arithmetic.
    std::optional<int64_t> valuation() const;

    bool operator==(const LaurentPoly& o) const = default;

    // Canonical text form "c*t^m + ..." in increasing exponent order;
    // unit coefficients are elided ("t^m"), zero prints as "0".
    std::string to_string() const;

    // Accepts terms in any exponent order, e.g. "t^-2 + 2*t^3" or "2t^3+t^-2".
    static LaurentPoly parse(uint32_t p, std::string_view text);

private:
    uint32_t p_;
    std::map<int64_t, uint32_t> coeffs_;
};

LaurentPoly add(const LaurentPoly& x, const LaurentPoly& y);
LaurentPoly negate(const LaurentPoly& x);

// Exponentwise translation: coefficient of the result at m + k equals the
// coefficient of x at m. shift(., 1) is the contractive automorphism of the
// additive group (multiplication by t).
LaurentPoly shift(const LaurentPoly& x, int64_t k);

// The part of x supported on exponents congruent to parity mod 2.
LaurentPoly parity_part(const LaurentPoly& x, int parity);

}  // namespace nilwitness
