#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "nilwitness/laurent.hpp"

namespace nilwitness {

inline constexpr uint64_t kDefaultSeed = 12345;

// Eventually periodic odd sequence sigma: Z -> F_p. Only the values at
// positive indices are stored (prefix sigma_1..sigma_L, then the period
// repeating); sigma_0 = 0 and sigma_{-z} = -sigma_z are enforced by the
// evaluation rule, never stored.
class SigmaSeq {
public:
    SigmaSeq(uint32_t p, std::vector<int64_t> prefix, std::vector<int64_t> period);

    uint32_t modulus() const { return p_; }
    const std::vector<uint32_t>& prefix() const { return prefix_; }
    const std::vector<uint32_t>& period() const { return period_; }

    uint32_t at(int64_t z) const;

    bool zero_one_valued() const;
    bool identically_zero() const;

    bool operator==(const SigmaSeq& o) const = default;

private:
    uint32_t p_;
    std::vector<uint32_t> prefix_;
    std::vector<uint32_t> period_;
};

uint32_t sigma_at(const SigmaSeq& sigma, int64_t z);

// The two infinite-group cocycle flavours, plus an explicit finite table.
//
// EtaS carries the sequence s of the contraction-group cocycle
//   eta_s(x, y) = sum_{k in supp(s)} sum_i x_i y_{i+2k} t^{i+k},
// with s valued in {0,1}.
//
// MonomialGamma carries the sequence sigma of a monomial commutator map
//   gamma(t^m, t^n) = sigma_{m-n} t^{m+n}.
// As a group-defining 2-cocycle it is evaluated through its strictly
// triangular polarization (see cocycle_eval), whose antisymmetrization is
// exactly gamma in every characteristic.
struct EtaS {
    SigmaSeq s;
    bool operator==(const EtaS&) const = default;
};

struct MonomialGamma {
    SigmaSeq sigma;
    bool operator==(const MonomialGamma&) const = default;
};

// F_p-valued cocycle on a finite window span, stored as a full value table
// over all pairs of elements so that single-entry corruption is observable.
class CocycleTable {
public:
    // Bi-additive extension of the given values on basis pairs.
    CocycleTable(uint32_t p, std::vector<int64_t> basis, const FpMatrix& basis_values);

    uint32_t modulus() const { return p_; }
    const std::vector<int64_t>& basis() const { return basis_; }
    size_t group_size() const { return size_; }

    uint32_t value(size_t a, size_t b) const;

    // Test hook: adds delta to a single stored entry.
    void perturb(size_t a, size_t b, int64_t delta);

    // Element index <-> coefficient vector over the basis (mixed radix p).
    std::vector<uint32_t> decode(size_t index) const;
    size_t encode(const std::vector<uint32_t>& v) const;

    bool operator==(const CocycleTable&) const = default;

private:
    uint32_t p_;
    std::vector<int64_t> basis_;
    size_t size_;
    std::vector<uint32_t> values_;
};

using CocycleSpec = std::variant<EtaS, MonomialGamma, CocycleTable>;

// eta_s(x, y); s must be {0,1}-valued.
LaurentPoly eval_eta(const SigmaSeq& s, const LaurentPoly& x, const LaurentPoly& y);

// Bi-additive extension of gamma(t^m, t^n) = sigma_{m-n} t^{m+n}.
LaurentPoly gamma_monomial(const SigmaSeq& sigma, const LaurentPoly& x, const LaurentPoly& y);

// Commutator of (t^a, 0) and (t^b, 0) in A x_{eta_s} A:
//   0                    if a = b or a != b mod 2,
//   s((b-a)/2) t^{(a+b)/2}   if a < b, same parity,
// and the negative for a > b.
LaurentPoly gw_commutator_closed_form(const SigmaSeq& s, int64_t a, int64_t b);

// The monomial commutation sequence of the even-part subgroup of
// A x_{eta_s} A after reindexing t^{2n} -> t^n and negating the central
// coordinate: sigma_z = s(z) for z > 0, extended oddly.
SigmaSeq g0_sigma(const SigmaSeq& s);

// Evaluates the group-defining 2-cocycle: eta_s for EtaS, and for
// MonomialGamma the strictly triangular polarization
//   omega(x, y) = sum_{m > n} sigma_{m-n} x_m y_n t^{m+n},
// so that omega(x,y) - omega(y,x) = gamma_monomial(sigma, x, y).
// Table cocycles are finite-window objects and are rejected here.
LaurentPoly cocycle_eval(const CocycleSpec& omega, const LaurentPoly& x, const LaurentPoly& y);

struct Window {
    int64_t lo;
    int64_t hi;
};

struct VerifyReport {
    bool pass = true;
    size_t checks = 0;
    std::string first_failure;
};

// Exhaustive cocycle-identity check omega(a+b,c) + omega(a,b) =
// omega(a,b+c) + omega(b,c). For EtaS/MonomialGamma the triples run over
// all monomials in the window plus seeded random non-monomial triples; for
// a table the check is exhaustive over its finite domain (window ignored).
VerifyReport verify_cocycle_identity(const CocycleSpec& omega, Window window,
                                     uint64_t seed = kDefaultSeed);

// Checks eta_s(t x, t y) = t eta_s(x, y) over window monomials and seeded
// random pairs.
VerifyReport verify_equivariance(const SigmaSeq& s, Window window, uint64_t seed = kDefaultSeed);

// Seeded random element with support inside the window (test/verify helper).
LaurentPoly random_poly(uint32_t p, Window window, uint64_t& state);

}  // namespace nilwitness
