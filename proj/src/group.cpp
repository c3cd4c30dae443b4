#include "nilwitness/group.hpp"

#include <stdexcept>

namespace nilwitness {

namespace {

uint32_t cocycle_modulus(const CocycleSpec& omega) {
    if (const auto* eta = std::get_if<EtaS>(&omega)) return eta->s.modulus();
    if (const auto* mono = std::get_if<MonomialGamma>(&omega)) return mono->sigma.modulus();
    return std::get<CocycleTable>(omega).modulus();
}

void require_compatible(const CentralExtElement& g, const CentralExtElement& h) {
    if (g.modulus() != h.modulus()) {
        throw std::invalid_argument("central extension: modulus mismatch");
    }
    if (g.omega != h.omega && !(*g.omega == *h.omega)) {
        throw std::invalid_argument("central extension: elements belong to different cocycles");
    }
}

}  // namespace

CentralExtElement make_element(std::shared_ptr<const CocycleSpec> omega, LaurentPoly x,
                               LaurentPoly a) {
    if (!omega) throw std::invalid_argument("make_element: null cocycle");
    if (std::holds_alternative<CocycleTable>(*omega)) {
        throw std::invalid_argument("make_element: table cocycles define finite-window groups");
    }
    uint32_t p = cocycle_modulus(*omega);
    if (x.modulus() != p || a.modulus() != p) {
        throw std::invalid_argument("make_element: modulus mismatch with cocycle");
    }
    return CentralExtElement{std::move(x), std::move(a), std::move(omega)};
}

CentralExtElement identity_element(std::shared_ptr<const CocycleSpec> omega, uint32_t p) {
    return make_element(std::move(omega), LaurentPoly(p), LaurentPoly(p));
}

CentralExtElement mul(const CentralExtElement& g, const CentralExtElement& h) {
    require_compatible(g, h);
    LaurentPoly x = add(g.x, h.x);
    LaurentPoly a = add(add(g.a, h.a), cocycle_eval(*g.omega, g.x, h.x));
    return CentralExtElement{std::move(x), std::move(a), g.omega};
}

CentralExtElement inverse(const CentralExtElement& g) {
    LaurentPoly nx = negate(g.x);
    LaurentPoly a = negate(add(g.a, cocycle_eval(*g.omega, g.x, nx)));
    return CentralExtElement{std::move(nx), std::move(a), g.omega};
}

CentralExtElement commutator(const CentralExtElement& g, const CentralExtElement& h) {
    require_compatible(g, h);
    LaurentPoly c = add(cocycle_eval(*g.omega, g.x, h.x),
                        negate(cocycle_eval(*g.omega, h.x, g.x)));
    return CentralExtElement{LaurentPoly(g.modulus()), std::move(c), g.omega};
}

CentralExtElement commutator_literal(const CentralExtElement& g, const CentralExtElement& h) {
    return mul(mul(mul(g, h), inverse(g)), inverse(h));
}

CentralExtElement alpha(const CentralExtElement& g) {
    if (std::holds_alternative<EtaS>(*g.omega)) {
        return CentralExtElement{shift(g.x, 1), shift(g.a, 1), g.omega};
    }
    if (std::holds_alternative<MonomialGamma>(*g.omega)) {
        return CentralExtElement{shift(g.x, 1), shift(g.a, 2), g.omega};
    }
    throw std::invalid_argument("alpha: table cocycles have no canonical shift");
}

SplitResult split_even_odd(const CentralExtElement& g) {
    const auto* eta = std::get_if<EtaS>(&*g.omega);
    if (eta == nullptr) {
        throw std::invalid_argument("split_even_odd: requires an EtaS cocycle");
    }
    LaurentPoly x0 = parity_part(g.x, 0);
    LaurentPoly x1 = parity_part(g.x, 1);
    LaurentPoly correction = eval_eta(eta->s, x0, x1);
    CentralExtElement even{x0, add(g.a, negate(correction)), g.omega};
    CentralExtElement odd{x1, LaurentPoly(g.modulus()), g.omega};
    bool commute = commutator(even, odd).a.is_zero();
    return SplitResult{std::move(even), std::move(odd), std::move(correction), commute};
}

std::string format_element(const CentralExtElement& g) {
    return "(" + g.x.to_string() + " | " + g.a.to_string() + ")";
}

CentralExtElement parse_element(std::shared_ptr<const CocycleSpec> omega, uint32_t p,
                                std::string_view text) {
    size_t open = text.find('(');
    size_t close = text.rfind(')');
    size_t bar = text.find('|');
    if (open == std::string_view::npos || close == std::string_view::npos ||
        bar == std::string_view::npos || !(open < bar && bar < close)) {
        throw std::invalid_argument("parse_element: expected \"(x | a)\"");
    }
    LaurentPoly x = LaurentPoly::parse(p, text.substr(open + 1, bar - open - 1));
    LaurentPoly a = LaurentPoly::parse(p, text.substr(bar + 1, close - bar - 1));
    return make_element(std::move(omega), std::move(x), std::move(a));
}

}  // namespace nilwitness
