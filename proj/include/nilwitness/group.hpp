#pragma once

#include <memory>
#include <string>

#include "nilwitness/cocycle.hpp"

namespace nilwitness {

// Element (x, a) of the central extension A x_omega A: x is the image in
// G/N and a the central N-coordinate. Elements carry a shared reference to
// the defining cocycle; operations on elements of different extensions
// throw.
struct CentralExtElement {
    LaurentPoly x;
    LaurentPoly a;
    std::shared_ptr<const CocycleSpec> omega;

    uint32_t modulus() const { return x.modulus(); }

    bool operator==(const CentralExtElement& o) const {
        return x == o.x && a == o.a &&
               (omega == o.omega || (omega && o.omega && *omega == *o.omega));
    }
};

CentralExtElement make_element(std::shared_ptr<const CocycleSpec> omega, LaurentPoly x,
                               LaurentPoly a);
CentralExtElement identity_element(std::shared_ptr<const CocycleSpec> omega, uint32_t p);

// (x, a).(y, b) = (x + y, a + b + omega(x, y)).
CentralExtElement mul(const CentralExtElement& g, const CentralExtElement& h);

// (x, a)^{-1} = (-x, -a - omega(x, -x)).
CentralExtElement inverse(const CentralExtElement& g);

// Closed form (0, omega(x, y) - omega(y, x)); equals g h g^{-1} h^{-1}.
CentralExtElement commutator(const CentralExtElement& g, const CentralExtElement& h);

// Literal product g h g^{-1} h^{-1}, used as an oracle against the closed
// form by the verification suites.
CentralExtElement commutator_literal(const CentralExtElement& g, const CentralExtElement& h);

// Contractive automorphism. For EtaS both coordinates shift by 1 (the
// cocycle satisfies eta(tx, ty) = t eta(x, y)); for MonomialGamma the
// central coordinate shifts by 2, matching the equivariance
// omega(tx, ty) = t^2 omega(x, y) of the triangular polarization. Table
// cocycles have no canonical shift and are rejected.
CentralExtElement alpha(const CentralExtElement& g);

// Decomposition along even/odd exponent parts of x (EtaS only): returns
// g0 = (x_even, a - eta(x_even, x_odd)) and g1 = (x_odd, 0) with
// mul(g0, g1) = g. The reassembly defect eta(x_even, x_odd) is central and
// folded into g0.
struct SplitResult {
    CentralExtElement even_part;
    CentralExtElement odd_part;
    LaurentPoly central_correction;
    bool parts_commute = false;
};

SplitResult split_even_odd(const CentralExtElement& g);

// Text form "(x | a)".
std::string format_element(const CentralExtElement& g);
CentralExtElement parse_element(std::shared_ptr<const CocycleSpec> omega, uint32_t p,
                                std::string_view text);

}  // namespace nilwitness
