#pragma once

#include <cstdint>
#include <vector>

#include "nilwitness/linalg.hpp"

namespace nilwitness {

// Small finite field F_{p^e}, represented as F_p[x] modulo a monic
// irreducible polynomial found at construction time. Elements are
// coefficient vectors of length e (low degree first). Intended for the
// tiny fields of the algebraic constructions (p^e well below 2^16).
class FqField {
public:
    using Elem = std::vector<uint32_t>;

    FqField() : FqField(2, 1, {0, 1}) {}  // defaults to F_2

    static FqField make(uint32_t p, uint32_t degree);

    uint32_t characteristic() const { return p_; }
    uint32_t degree() const { return e_; }
    size_t order() const { return q_; }
    const std::vector<uint32_t>& modulus_poly() const { return modulus_; }

    Elem zero() const { return Elem(e_, 0); }
    Elem one() const;
    Elem from_index(size_t i) const;
    size_t index(const Elem& a) const;

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem pow(const Elem& a, uint64_t n) const;
    Elem inverse(const Elem& a) const;

    // x -> x^{p^k}
    Elem frobenius(const Elem& a, uint32_t k = 1) const;

    bool is_zero(const Elem& a) const;

    bool operator==(const FqField&) const = default;

private:
    FqField(uint32_t p, uint32_t e, std::vector<uint32_t> modulus);

    uint32_t p_ = 2;
    uint32_t e_ = 0;
    size_t q_ = 0;
    std::vector<uint32_t> modulus_;  // length e+1, monic
};

}  // namespace nilwitness
