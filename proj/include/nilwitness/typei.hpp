#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilwitness/cocycle.hpp"

namespace nilwitness {

class FiniteWindowGroup;

// Continuous character of A as a finitely supported functional
// a: Z -> F_p, chi(x) = sum_m a_m x_m. k0 is the top of the support and
// K0 = max(-1, k0) fixes the ambient compact open subgroup
// U^A = t^{K0+1} F_p[[t]].
class CharacterSpec {
public:
    CharacterSpec(uint32_t p, const std::map<int64_t, int64_t>& coeffs);

    uint32_t modulus() const { return p_; }
    const std::map<int64_t, uint32_t>& coeffs() const { return coeffs_; }
    bool trivial() const { return coeffs_.empty(); }

    std::optional<int64_t> k0() const;
    int64_t K0() const;  // throws for the trivial character

    uint32_t coeff(int64_t m) const;
    uint32_t evaluate(const LaurentPoly& x) const;

    bool operator==(const CharacterSpec&) const = default;

private:
    uint32_t p_;
    std::map<int64_t, uint32_t> coeffs_;
};

struct TypeIVerdict {
    enum class Kind { type_i, not_type_i, unknown };

    Kind kind = Kind::unknown;
    // For kind == type_i: which symbolic criterion fired (1, 2 or 3), with
    // 0 marking the dedicated abelian tag for sigma == 0, and the threshold
    // c beyond which the criterion's non-vanishing holds.
    int criterion = 0;
    int64_t threshold = 0;
    // For kind == not_type_i: the witness lattice step d with sigma_d != 0
    // and sigma_{dn} = 0 for all n >= 2.
    int64_t witness_d = 0;

    bool operator==(const TypeIVerdict&) const = default;
};

std::string to_string(const TypeIVerdict& v);

// Symbolic classification of an eventually periodic sequence:
//   criterion 1: sigma_z != 0 for all |z| > c;
//   criterion 2: sigma vanishes on even z and sigma_z != 0 for odd |z| > c;
//   criterion 3: sigma supported on dZ and sigma_z != 0 for z in dZ, |z| > c;
//   not type I:  sigma_d != 0 and sigma_{dn} = 0 for all n >= 2;
//   sigma == 0 classifies as the abelian type-I tag; anything else Unknown.
// All conditions are decided exactly from the prefix/period encoding.
TypeIVerdict classify_sigma(const SigmaSeq& sigma);

// Classification of A x_{eta_s} A through its even-part subgroup:
// classify_sigma(g0_sigma(s)).
TypeIVerdict classify_s(const SigmaSeq& s);

// The lower-triangular linear system cutting out the window part of
// O^A = {x : chi(gamma(x, t^m)) = 0 for all m > K0}. Rows are indexed by
// l in {0, ..., k0 - i0 - K0 - 1}, columns by n (the coefficient x_{i0+n}),
// and entry(l, n) = sigma_{2 i0 + l - k0 + n} * a_{k0 - l + n}. Requires a
// nontrivial chi and i0 <= K0; empty when the row range is empty.
FpMatrix build_O_system(const CharacterSpec& chi, const SigmaSeq& sigma, int64_t i0);

// Basis of {x supported on [i0, K0] : chi(gamma(x, t^m)) = 0 for m > K0},
// assembled from the kernel of build_O_system plus the unconstrained
// columns. Every vector is re-verified by direct pairing against the
// monomials t^m, K0 < m <= k0 - i0.
std::vector<LaurentPoly> O_window_basis(const CharacterSpec& chi, const SigmaSeq& sigma,
                                        int64_t i0);

// One row of finiteness evidence at window depth i0: the dimension of the
// window part of O^A, the rank of the alternating form
// B(u, v) = chi(gamma(u, v)) on it, and the induced quotient dimension
// (equal to the rank). The trivial character short-circuits to rank 0.
struct GramRow {
    int64_t i0 = 0;
    size_t dim_O = 0;
    size_t rank = 0;
    size_t quotient_dim = 0;

    bool operator==(const GramRow&) const = default;
};

GramRow gram_rank(const CharacterSpec& chi, const SigmaSeq& sigma, int64_t i0);

// Character supported on {-d - 6nd : 1 <= n <= M} with every coefficient
// sigma_d^{-1}, so that each pair (t^{-3nd}, t^{-3nd-d}) pairs to 1 under
// chi(gamma(., .)) and distinct pairs do not interact. Requires
// sigma_d != 0.
CharacterSpec witness_character(int64_t d, size_t M, const SigmaSeq& sigma);

enum class SweepVerdict { bounded_evidence, growth_evidence, inconclusive };

std::string to_string(SweepVerdict v);

// BOUNDED-EVIDENCE when the last two ranks agree, GROWTH-EVIDENCE when the
// ranks strictly increase throughout, INCONCLUSIVE otherwise.
SweepVerdict assess_rank_sweep(const std::vector<GramRow>& rows);

// log_p of the index of the center of a finite two-step nilpotent group
// presented by its cocycle table: the rank of the antisymmetrized pairing.
size_t center_index_exponent(const FiniteWindowGroup& q);

}  // namespace nilwitness
