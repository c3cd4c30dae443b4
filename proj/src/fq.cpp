#include "nilwitness/fq.hpp"

#include <stdexcept>
#include <string>

namespace nilwitness {

namespace {

using Poly = std::vector<uint32_t>;  // dense, low degree first

size_t poly_degree(const Poly& a) {
    size_t d = a.size();
    while (d > 0 && a[d - 1] == 0) --d;
    return d == 0 ? 0 : d - 1;
}

bool poly_is_zero(const Poly& a) {
    for (uint32_t c : a)
        if (c != 0) return false;
    return true;
}

Poly poly_mul(const Poly& a, const Poly& b, uint32_t p) {
    Poly out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            out[i + j] = add_mod(out[i + j], mul_mod(a[i], b[j], p), p);
        }
    }
    return out;
}

// remainder of a modulo monic m
Poly poly_rem(Poly a, const Poly& m, uint32_t p) {
    size_t dm = poly_degree(m);
    while (!poly_is_zero(a) && poly_degree(a) >= dm) {
        size_t da = poly_degree(a);
        uint32_t lead = a[da];
        for (size_t i = 0; i <= dm; ++i) {
            a[da - dm + i] = sub_mod(a[da - dm + i], mul_mod(lead, m[i], p), p);
        }
    }
    a.resize(dm, 0);
    return a;
}

bool divides(const Poly& d, const Poly& a, uint32_t p) {
    Poly padded = a;
    if (padded.size() < d.size()) padded.resize(d.size(), 0);
    // make d monic before dividing
    Poly dm = d;
    uint32_t inv = inv_mod(dm[poly_degree(dm)], p);
    for (uint32_t& c : dm) c = mul_mod(c, inv, p);
    Poly r = poly_rem(padded, dm, p);
    return poly_is_zero(r);
}

// trial division by every lower-degree monic polynomial; fine for the
// tiny parameter range this library uses
bool irreducible(const Poly& f, uint32_t p) {
    size_t df = poly_degree(f);
    for (size_t d = 1; 2 * d <= df; ++d) {
        // enumerate monic polynomials of degree d
        size_t count = 1;
        for (size_t i = 0; i < d; ++i) count *= p;
        for (size_t idx = 0; idx < count; ++idx) {
            Poly g(d + 1, 0);
            size_t v = idx;
            for (size_t i = 0; i < d; ++i) {
                g[i] = static_cast<uint32_t>(v % p);
                v /= p;
            }
            g[d] = 1;
            if (divides(g, f, p)) return false;
        }
    }
    return true;
}

}  // namespace

FqField::FqField(uint32_t p, uint32_t e, std::vector<uint32_t> modulus)
    : p_(p), e_(e), modulus_(std::move(modulus)) {
    q_ = 1;
    for (uint32_t i = 0; i < e; ++i) q_ *= p;
}

FqField FqField::make(uint32_t p, uint32_t degree) {
    if (!is_prime(p)) {
        throw std::invalid_argument("FqField: characteristic " + std::to_string(p) +
                                    " is not prime");
    }
    if (degree == 0) throw std::invalid_argument("FqField: degree must be positive");
    size_t q = 1;
    for (uint32_t i = 0; i < degree; ++i) {
        q *= p;
        if (q > (1u << 16)) throw std::invalid_argument("FqField: field too large");
    }
    if (degree == 1) {
        return FqField(p, 1, {0, 1});
    }
    size_t count = 1;
    for (uint32_t i = 0; i < degree; ++i) count *= p;
    for (size_t idx = 0; idx < count; ++idx) {
        Poly f(degree + 1, 0);
        size_t v = idx;
        for (uint32_t i = 0; i < degree; ++i) {
            f[i] = static_cast<uint32_t>(v % p);
            v /= p;
        }
        f[degree] = 1;
        if (irreducible(f, p)) {
            return FqField(p, degree, std::move(f));
        }
    }
    throw std::logic_error("FqField: no irreducible polynomial found");
}

FqField::Elem FqField::one() const {
    Elem a(e_, 0);
    a[0] = 1;
    return a;
}

FqField::Elem FqField::from_index(size_t i) const {
    Elem a(e_, 0);
    for (uint32_t k = 0; k < e_; ++k) {
        a[k] = static_cast<uint32_t>(i % p_);
        i /= p_;
    }
    return a;
}

size_t FqField::index(const Elem& a) const {
    size_t i = 0;
    for (uint32_t k = e_; k-- > 0;) i = i * p_ + (a[k] % p_);
    return i;
}

FqField::Elem FqField::add(const Elem& a, const Elem& b) const {
    Elem out(e_);
    for (uint32_t i = 0; i < e_; ++i) out[i] = add_mod(a[i], b[i], p_);
    return out;
}

FqField::Elem FqField::sub(const Elem& a, const Elem& b) const {
    Elem out(e_);
    for (uint32_t i = 0; i < e_; ++i) out[i] = sub_mod(a[i], b[i], p_);
    return out;
}

FqField::Elem FqField::neg(const Elem& a) const {
    Elem out(e_);
    for (uint32_t i = 0; i < e_; ++i) out[i] = neg_mod(a[i], p_);
    return out;
}

FqField::Elem FqField::mul(const Elem& a, const Elem& b) const {
    if (e_ == 1) return Elem{mul_mod(a[0], b[0], p_)};
    Poly prod = poly_mul(a, b, p_);
    return poly_rem(std::move(prod), modulus_, p_);
}

FqField::Elem FqField::pow(const Elem& a, uint64_t n) const {
    Elem result = one();
    Elem base = a;
    while (n > 0) {
        if (n & 1) result = mul(result, base);
        base = mul(base, base);
        n >>= 1;
    }
    return result;
}

FqField::Elem FqField::inverse(const Elem& a) const {
    if (is_zero(a)) throw std::invalid_argument("FqField::inverse: zero element");
    return pow(a, q_ - 2);
}

FqField::Elem FqField::frobenius(const Elem& a, uint32_t k) const {
    Elem out = a;
    for (uint32_t i = 0; i < k; ++i) out = pow(out, p_);
    return out;
}

bool FqField::is_zero(const Elem& a) const {
    for (uint32_t c : a)
        if (c != 0) return false;
    return true;
}

}  // namespace nilwitness
