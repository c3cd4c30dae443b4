#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilwitness/fq.hpp"

namespace nilwitness {

// Bi-additive map gamma: A x A -> N between F_q-spaces, stored on the
// F_p-basis of A (blocks of field.degree() coordinates per F_q-basis
// vector, scalars acting blockwise through the regular representation).
// Storing prime-field data keeps genuinely non-F_q-bilinear maps
// representable, which is what the bilinearity checker is for.
struct BiAddMapSpec {
    FqField field;     // the field k over which bilinearity is claimed
    size_t dim_a = 0;  // dim over k of the A-space
    size_t dim_n = 0;  // dim over k of the N-space
    // table[a][b] = gamma(u_a, u_b) on the F_p-basis of A, as an F_p
    // coordinate vector over the N-space
    std::vector<std::vector<std::vector<uint32_t>>> table;

    size_t a_coords() const { return dim_a * field.degree(); }
    size_t n_coords() const { return dim_n * field.degree(); }

    std::vector<uint32_t> eval(const std::vector<uint32_t>& u,
                               const std::vector<uint32_t>& v) const;

    // scalar action of lambda in F_q, blockwise on the e coordinates of
    // each F_q-basis vector
    std::vector<uint32_t> scale(const FqField::Elem& lambda,
                                const std::vector<uint32_t>& v) const;
    std::vector<uint32_t> scale_n(const FqField::Elem& lambda,
                                  const std::vector<uint32_t>& v) const;

    bool alternating() const;
};

struct BilinearCheck {
    bool pass = true;
    std::string witness;  // describes the failing (lambda, slot, basis pair)
};

// Checks gamma(lambda v, w) = lambda gamma(v, w) = gamma(v, lambda w) for
// every scalar lambda in F_q and every F_p-basis pair; by bi-additivity
// this decides F_q-bilinearity exactly.
BilinearCheck is_k_bilinear(const BiAddMapSpec& gamma);

// Finite two-step group on pairs (a, n) in F_p^{a_coords} x F_p^{n_coords}
// with multiplication (a, n)(b, m) = (a + b, n + m + omega(a, b)) for an
// F_p-bilinear cocycle omega given on the basis.
class CocycleGroup {
public:
    CocycleGroup() : CocycleGroup(2, 0, 0, {}) {}
    CocycleGroup(uint32_t p, size_t a_coords, size_t n_coords,
                 std::vector<std::vector<std::vector<uint32_t>>> omega);

    uint32_t modulus() const { return p_; }
    size_t a_coords() const { return na_; }
    size_t n_coords() const { return nn_; }

    struct Elem {
        std::vector<uint32_t> a;
        std::vector<uint32_t> n;

        bool operator==(const Elem&) const = default;
    };

    Elem identity() const;
    Elem mul(const Elem& g, const Elem& h) const;
    Elem inverse(const Elem& g) const;
    Elem commutator_literal(const Elem& g, const Elem& h) const;

    std::vector<uint32_t> omega_eval(const std::vector<uint32_t>& a,
                                     const std::vector<uint32_t>& b) const;

    size_t order() const;  // p^{a_coords + n_coords}
    Elem decode(size_t index) const;
    size_t encode(const Elem& g) const;

private:
    uint32_t p_;
    size_t na_;
    size_t nn_;
    std::vector<std::vector<std::vector<uint32_t>>> omega_;
};

struct HeisenbergResult {
    CocycleGroup group;
    BiAddMapSpec gamma;
};

// The 2n+1-dimensional Heisenberg group over F_q: A = F_q^{2n}, N = F_q,
// cocycle ((u, v), (u', v')) -> u . v' and commutator map
// gamma = u . v' - u' . v.
HeisenbergResult heisenberg(size_t n, const FqField& field);

// Group with underlying set a two-step Lie algebra and multiplication
// v . w = v + w + [v, w]; its commutator map is 2[v, w], and the group is
// abelian exactly in characteristic 2.
class TwistedAdditionGroup {
public:
    TwistedAdditionGroup(uint32_t p, size_t coords,
                         std::vector<std::vector<std::vector<uint32_t>>> bracket);

    uint32_t modulus() const { return p_; }
    size_t coords() const { return n_; }

    using Elem = std::vector<uint32_t>;

    Elem identity() const { return Elem(n_, 0); }
    Elem mul(const Elem& v, const Elem& w) const;
    Elem inverse(const Elem& v) const;
    Elem commutator_literal(const Elem& v, const Elem& w) const;

    std::vector<uint32_t> bracket_eval(const Elem& v, const Elem& w) const;

    size_t order() const;
    Elem decode(size_t index) const;
    size_t encode(const Elem& v) const;

private:
    uint32_t p_;
    size_t n_;
    std::vector<std::vector<std::vector<uint32_t>>> bracket_;
};

struct LazardResult {
    TwistedAdditionGroup group;
    BiAddMapSpec gamma;  // 2 * bracket
};

// Builds the group from the structure constants of a two-step Lie algebra
// (bracket given as a BiAddMapSpec with dim_n == dim_a); rejects input
// that is not alternating, not central-image, or not two-step.
LazardResult lazard_E(const BiAddMapSpec& bracket);

// Pseudo-quadratic data over the quadratic extension K = F_{q^2} of a
// prime field k = F_q, with theta the Frobenius x -> x^q and
// D_0 = Fix(theta) = F_q. The group lives on pairs (v, a) with
// q_form(v) - a in D_0 and has commutator map h(w, v) + h(w, v)^theta.
struct PseudoQuadraticSpec {
    uint32_t q = 2;  // prime
    size_t n = 1;    // rank of the module V over K
    // skew-hermitian matrix over K: H^{theta T} = -H; empty means the
    // default delta * I with delta a canonical trace-zero unit
    std::vector<std::vector<FqField::Elem>> form;
};

struct PseudoQuadraticResult {
    FqField small;  // F_q
    FqField big;    // F_{q^2}
    std::vector<std::vector<FqField::Elem>> form;
    FqField::Elem half;  // lambda with lambda + lambda^theta = 1
    CocycleGroup group;  // offset coordinates: V (2n over F_p) by D_0 (1)
    BiAddMapSpec gamma_over_k;  // bilinear over F_q
    BiAddMapSpec gamma_over_K;  // generally not bilinear over F_{q^2}
};

PseudoQuadraticResult pseudo_quadratic_group(const PseudoQuadraticSpec& spec);

// q_form(v) = half * h(v, v); p(v) - a in D_0 defines the membership set.
FqField::Elem pseudo_quadratic_form(const PseudoQuadraticResult& r,
                                    const std::vector<FqField::Elem>& v);

// h(v, w) = sum_ij v_i^theta H_ij w_j
FqField::Elem hermitian_form(const PseudoQuadraticResult& r,
                             const std::vector<FqField::Elem>& v,
                             const std::vector<FqField::Elem>& w);

}  // namespace nilwitness
