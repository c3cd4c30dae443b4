#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nilwitness/cocycle.hpp"
#include "nilwitness/typei.hpp"

namespace nilwitness {

// Finite exponent-p two-step nilpotent group presented by a cocycle table:
// elements are (coefficient vector over the window basis, central
// coordinate in F_p identified with C = N/ker(chi) via chi), multiplied by
//   (x, c) (y, e) = (x + y, c + e + sum_ij x_i y_j pairing(i, j)).
class FiniteWindowGroup {
public:
    FiniteWindowGroup(uint32_t p, std::vector<int64_t> basis, FpMatrix pairing,
                      std::string provenance = "");

    // Q = G/ker(chi) at window scale: pairing(i, j) = chi(omega(t^{b_i}, t^{b_j})).
    static FiniteWindowGroup from_character(const CharacterSpec& chi, const CocycleSpec& omega,
                                            std::vector<int64_t> basis,
                                            std::string provenance = "");

    uint32_t modulus() const { return p_; }
    size_t window_size() const { return basis_.size(); }
    const std::vector<int64_t>& basis() const { return basis_; }
    uint32_t pairing(size_t i, size_t j) const { return pairing_.at(i, j); }
    const std::string& provenance() const { return provenance_; }

    struct Elem {
        std::vector<uint32_t> x;
        uint32_t c = 0;

        bool operator==(const Elem&) const = default;
    };

    Elem identity() const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem inverse(const Elem& a) const;
    Elem commutator(const Elem& a, const Elem& b) const;

    size_t order() const;  // p^{window_size + 1}
    Elem decode(size_t index) const;
    size_t encode(const Elem& e) const;

private:
    uint32_t p_;
    std::vector<int64_t> basis_;
    FpMatrix pairing_;
    std::string provenance_;
};

// Element of E = (dual of A_W) x Q: phi is a coefficient functional on the
// window span (a character of A_W valued in F_p through the identification
// C = im(chi)), q the Q-part.
struct SemidirectElement {
    std::vector<uint32_t> phi;
    FiniteWindowGroup::Elem q;

    bool operator==(const SemidirectElement&) const = default;
};

// The type-I envelope of Q at window scale, with multiplication
//   (phi, g) (psi, h) = (phi + psi, (x_g, c_g - psi(x_g)) * h).
class SemidirectEnvelope {
public:
    explicit SemidirectEnvelope(FiniteWindowGroup q);

    const FiniteWindowGroup& base() const { return q_; }
    uint32_t modulus() const { return q_.modulus(); }
    size_t window_size() const { return q_.window_size(); }

    SemidirectElement identity() const;
    SemidirectElement mul(const SemidirectElement& g, const SemidirectElement& h) const;
    SemidirectElement inverse(const SemidirectElement& g) const;

    // Closed form: trivial dual, zero x-part, central coordinate
    // (x_g K x_h) - psi(x_g) + phi(x_h) with K the antisymmetrized pairing.
    SemidirectElement commutator(const SemidirectElement& g, const SemidirectElement& h) const;
    SemidirectElement commutator_literal(const SemidirectElement& g,
                                         const SemidirectElement& h) const;

    size_t order() const;  // p^{2 window_size + 1}
    SemidirectElement decode(size_t index) const;
    size_t encode(const SemidirectElement& g) const;

    // Membership in Cbar = {(trivial dual, central element)}.
    bool in_cbar(const SemidirectElement& g) const;

private:
    uint32_t p_;
    FiniteWindowGroup q_;
};

// Explicit multiplication table; the verification suites re-derive
// inverses and commutators from it so that a corrupted entry is observable.
struct MulTable {
    size_t n = 0;
    size_t identity = 0;
    std::vector<size_t> prod;  // row-major n x n

    size_t at(size_t a, size_t b) const { return prod[a * n + b]; }
    void set(size_t a, size_t b, size_t v) { prod[a * n + b] = v; }
};

MulTable build_mul_table(const SemidirectEnvelope& e);

// Checks [E, E] <= Cbar <= Z(E). Exhaustive over literal products when
// |E| <= enumeration_limit, otherwise on the generator set (dual unit
// vectors, Q basis elements and the central generator), which spans E.
VerifyReport verify_class2_and_center(const SemidirectEnvelope& e,
                                      size_t enumeration_limit = 8192);

// Table-driven variant of the same check; cbar_mask flags the elements of
// Cbar by index.
VerifyReport verify_class2_and_center_table(const MulTable& table,
                                            const std::vector<bool>& cbar_mask);

struct SurjectivityReport {
    bool pass = false;
    size_t image_size = 0;
    size_t expected_size = 0;
    std::string detail;
};

// Image of omega_sigma: (phi, g) -> ((psi, h) Cbar -> sigma([g,h] psi(g)^{-1} phi(h)))
// as a subgroup of the dual of E/Cbar; passes when it is the whole dual of
// size p^{2 window_size}. sigma_unit is the nonzero scalar identifying the
// nontrivial character of C = Z/p.
SurjectivityReport omega_sigma_surjective(const SemidirectEnvelope& e, uint32_t sigma_unit,
                                          size_t enumeration_limit = 8192);

}  // namespace nilwitness
