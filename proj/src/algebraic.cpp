#include "nilwitness/algebraic.hpp"

#include <stdexcept>

namespace nilwitness {

namespace {

std::vector<uint32_t> vec_add(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                              uint32_t p) {
    std::vector<uint32_t> out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = add_mod(a[i], b[i], p);
    return out;
}

std::vector<uint32_t> vec_neg(const std::vector<uint32_t>& a, uint32_t p) {
    std::vector<uint32_t> out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = neg_mod(a[i], p);
    return out;
}

std::vector<uint32_t> vec_scale(uint32_t c, const std::vector<uint32_t>& a, uint32_t p) {
    std::vector<uint32_t> out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = mul_mod(c, a[i], p);
    return out;
}

bool vec_is_zero(const std::vector<uint32_t>& a) {
    for (uint32_t c : a)
        if (c != 0) return false;
    return true;
}

std::string vec_to_string(const std::vector<uint32_t>& a) {
    std::string s = "(";
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a[i]);
    }
    return s + ")";
}

}  // namespace

std::vector<uint32_t> BiAddMapSpec::eval(const std::vector<uint32_t>& u,
                                         const std::vector<uint32_t>& v) const {
    uint32_t p = field.characteristic();
    if (u.size() != a_coords() || v.size() != a_coords()) {
        throw std::invalid_argument("BiAddMapSpec::eval: wrong vector dimension");
    }
    std::vector<uint32_t> out(n_coords(), 0);
    for (size_t a = 0; a < a_coords(); ++a) {
        if (u[a] == 0) continue;
        for (size_t b = 0; b < a_coords(); ++b) {
            if (v[b] == 0) continue;
            uint32_t c = mul_mod(u[a], v[b], p);
            for (size_t i = 0; i < out.size(); ++i) {
                out[i] = add_mod(out[i], mul_mod(c, table[a][b][i], p), p);
            }
        }
    }
    return out;
}

namespace {

std::vector<uint32_t> blockwise_scale(const FqField& field, const FqField::Elem& lambda,
                                      const std::vector<uint32_t>& v, size_t blocks) {
    uint32_t e = field.degree();
    std::vector<uint32_t> out(v.size(), 0);
    for (size_t b = 0; b < blocks; ++b) {
        FqField::Elem coeff(v.begin() + b * e, v.begin() + (b + 1) * e);
        FqField::Elem scaled = field.mul(lambda, coeff);
        for (uint32_t i = 0; i < e; ++i) out[b * e + i] = scaled[i];
    }
    return out;
}

}  // namespace

std::vector<uint32_t> BiAddMapSpec::scale(const FqField::Elem& lambda,
                                          const std::vector<uint32_t>& v) const {
    return blockwise_scale(field, lambda, v, dim_a);
}

std::vector<uint32_t> BiAddMapSpec::scale_n(const FqField::Elem& lambda,
                                            const std::vector<uint32_t>& v) const {
    return blockwise_scale(field, lambda, v, dim_n);
}

bool BiAddMapSpec::alternating() const {
    uint32_t p = field.characteristic();
    for (size_t a = 0; a < a_coords(); ++a) {
        if (!vec_is_zero(table[a][a])) return false;
        for (size_t b = 0; b < a_coords(); ++b) {
            for (size_t i = 0; i < n_coords(); ++i) {
                if (table[a][b][i] != neg_mod(table[b][a][i], p)) return false;
            }
        }
    }
    // alternating on sums follows from bi-additivity once the diagonal
    // basis values vanish and the table is antisymmetric
    return true;
}

BilinearCheck is_k_bilinear(const BiAddMapSpec& gamma) {
    BilinearCheck check;
    const FqField& k = gamma.field;
    for (size_t li = 1; li < k.order(); ++li) {
        FqField::Elem lambda = k.from_index(li);
        for (size_t a = 0; a < gamma.a_coords(); ++a) {
            std::vector<uint32_t> ua(gamma.a_coords(), 0);
            ua[a] = 1;
            std::vector<uint32_t> lua = gamma.scale(lambda, ua);
            for (size_t b = 0; b < gamma.a_coords(); ++b) {
                std::vector<uint32_t> ub(gamma.a_coords(), 0);
                ub[b] = 1;
                std::vector<uint32_t> expected = gamma.scale_n(lambda, gamma.eval(ua, ub));
                if (gamma.eval(lua, ub) != expected) {
                    check.pass = false;
                    check.witness = "gamma(lambda u_" + std::to_string(a) + ", u_" +
                                    std::to_string(b) + ") != lambda gamma at lambda=" +
                                    vec_to_string(lambda);
                    return check;
                }
                std::vector<uint32_t> lub = gamma.scale(lambda, ub);
                if (gamma.eval(ua, lub) != expected) {
                    check.pass = false;
                    check.witness = "gamma(u_" + std::to_string(a) + ", lambda u_" +
                                    std::to_string(b) + ") != lambda gamma at lambda=" +
                                    vec_to_string(lambda);
                    return check;
                }
            }
        }
    }
    return check;
}

CocycleGroup::CocycleGroup(uint32_t p, size_t a_coords, size_t n_coords,
                           std::vector<std::vector<std::vector<uint32_t>>> omega)
    : p_(p), na_(a_coords), nn_(n_coords), omega_(std::move(omega)) {
    if (!is_prime(p)) throw std::invalid_argument("CocycleGroup: modulus is not prime");
    if (omega_.size() != na_) throw std::invalid_argument("CocycleGroup: bad cocycle table");
    for (const auto& row : omega_) {
        if (row.size() != na_) throw std::invalid_argument("CocycleGroup: bad cocycle table");
        for (const auto& v : row) {
            if (v.size() != nn_) throw std::invalid_argument("CocycleGroup: bad cocycle table");
        }
    }
}

std::vector<uint32_t> CocycleGroup::omega_eval(const std::vector<uint32_t>& a,
                                               const std::vector<uint32_t>& b) const {
    std::vector<uint32_t> out(nn_, 0);
    for (size_t i = 0; i < na_; ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < na_; ++j) {
            if (b[j] == 0) continue;
            uint32_t c = mul_mod(a[i], b[j], p_);
            for (size_t t = 0; t < nn_; ++t) {
                out[t] = add_mod(out[t], mul_mod(c, omega_[i][j][t], p_), p_);
            }
        }
    }
    return out;
}

CocycleGroup::Elem CocycleGroup::identity() const {
    return Elem{std::vector<uint32_t>(na_, 0), std::vector<uint32_t>(nn_, 0)};
}

CocycleGroup::Elem CocycleGroup::mul(const Elem& g, const Elem& h) const {
    Elem out;
    out.a = vec_add(g.a, h.a, p_);
    out.n = vec_add(vec_add(g.n, h.n, p_), omega_eval(g.a, h.a), p_);
    return out;
}

CocycleGroup::Elem CocycleGroup::inverse(const Elem& g) const {
    Elem out;
    out.a = vec_neg(g.a, p_);
    out.n = vec_neg(vec_add(g.n, omega_eval(g.a, out.a), p_), p_);
    return out;
}

CocycleGroup::Elem CocycleGroup::commutator_literal(const Elem& g, const Elem& h) const {
    return mul(mul(mul(g, h), inverse(g)), inverse(h));
}

size_t CocycleGroup::order() const {
    size_t n = 1;
    for (size_t i = 0; i < na_ + nn_; ++i) n *= p_;
    return n;
}

CocycleGroup::Elem CocycleGroup::decode(size_t index) const {
    Elem e = identity();
    for (size_t i = 0; i < na_; ++i) {
        e.a[i] = static_cast<uint32_t>(index % p_);
        index /= p_;
    }
    for (size_t i = 0; i < nn_; ++i) {
        e.n[i] = static_cast<uint32_t>(index % p_);
        index /= p_;
    }
    return e;
}

size_t CocycleGroup::encode(const Elem& g) const {
    size_t index = 0;
    for (size_t i = nn_; i-- > 0;) index = index * p_ + (g.n[i] % p_);
    for (size_t i = na_; i-- > 0;) index = index * p_ + (g.a[i] % p_);
    return index;
}

HeisenbergResult heisenberg(size_t n, const FqField& field) {
    if (n == 0) throw std::invalid_argument("heisenberg: n must be positive");
    uint32_t p = field.characteristic();
    uint32_t e = field.degree();
    size_t a_coords = 2 * n * e;
    size_t n_coords = e;

    // cocycle omega((u, v), (u', v')) = u . v' over F_q, extended
    // F_q-bilinearly to the F_p-basis {e_i beta^r}
    std::vector<std::vector<std::vector<uint32_t>>> omega(
        a_coords, std::vector<std::vector<uint32_t>>(a_coords, std::vector<uint32_t>(n_coords, 0)));
    FqField::Elem beta = e > 1 ? field.from_index(p) : field.one();
    for (size_t i = 0; i < n; ++i) {
        for (uint32_t r = 0; r < e; ++r) {
            for (uint32_t s = 0; s < e; ++s) {
                // u-slot i scaled by beta^r against v'-slot i scaled by
                // beta^s contributes beta^{r+s}
                FqField::Elem value = field.pow(beta, r + s);
                size_t row = i * e + r;
                size_t col = (n + i) * e + s;
                for (uint32_t t = 0; t < e; ++t) omega[row][col][t] = value[t];
            }
        }
    }

    CocycleGroup group(p, a_coords, n_coords, omega);

    BiAddMapSpec gamma;
    gamma.field = field;
    gamma.dim_a = 2 * n;
    gamma.dim_n = 1;
    gamma.table.assign(a_coords, std::vector<std::vector<uint32_t>>(
                                     a_coords, std::vector<uint32_t>(n_coords, 0)));
    for (size_t a = 0; a < a_coords; ++a) {
        for (size_t b = 0; b < a_coords; ++b) {
            for (size_t t = 0; t < n_coords; ++t) {
                gamma.table[a][b][t] = sub_mod(omega[a][b][t], omega[b][a][t], p);
            }
        }
    }
    return HeisenbergResult{std::move(group), std::move(gamma)};
}

TwistedAdditionGroup::TwistedAdditionGroup(uint32_t p, size_t coords,
                                           std::vector<std::vector<std::vector<uint32_t>>> bracket)
    : p_(p), n_(coords), bracket_(std::move(bracket)) {
    if (!is_prime(p)) throw std::invalid_argument("TwistedAdditionGroup: modulus is not prime");
}

std::vector<uint32_t> TwistedAdditionGroup::bracket_eval(const Elem& v, const Elem& w) const {
    std::vector<uint32_t> out(n_, 0);
    for (size_t i = 0; i < n_; ++i) {
        if (v[i] == 0) continue;
        for (size_t j = 0; j < n_; ++j) {
            if (w[j] == 0) continue;
            uint32_t c = mul_mod(v[i], w[j], p_);
            for (size_t t = 0; t < n_; ++t) {
                out[t] = add_mod(out[t], mul_mod(c, bracket_[i][j][t], p_), p_);
            }
        }
    }
    return out;
}

TwistedAdditionGroup::Elem TwistedAdditionGroup::mul(const Elem& v, const Elem& w) const {
    return vec_add(vec_add(v, w, p_), bracket_eval(v, w), p_);
}

TwistedAdditionGroup::Elem TwistedAdditionGroup::inverse(const Elem& v) const {
    // v . (-v) = v - v + [v, -v] = 0 since the bracket is alternating
    return vec_neg(v, p_);
}

TwistedAdditionGroup::Elem TwistedAdditionGroup::commutator_literal(const Elem& v,
                                                                    const Elem& w) const {
    return mul(mul(mul(v, w), inverse(v)), inverse(w));
}

size_t TwistedAdditionGroup::order() const {
    size_t n = 1;
    for (size_t i = 0; i < n_; ++i) n *= p_;
    return n;
}

TwistedAdditionGroup::Elem TwistedAdditionGroup::decode(size_t index) const {
    Elem v(n_, 0);
    for (size_t i = 0; i < n_; ++i) {
        v[i] = static_cast<uint32_t>(index % p_);
        index /= p_;
    }
    return v;
}

size_t TwistedAdditionGroup::encode(const Elem& v) const {
    size_t index = 0;
    for (size_t i = n_; i-- > 0;) index = index * p_ + (v[i] % p_);
    return index;
}

LazardResult lazard_E(const BiAddMapSpec& bracket) {
    if (bracket.dim_n != bracket.dim_a) {
        throw std::invalid_argument("lazard_E: bracket must map the algebra into itself");
    }
    uint32_t p = bracket.field.characteristic();
    size_t coords = bracket.a_coords();

    // alternating and bilinear over the carried field
    if (!bracket.alternating()) {
        throw std::invalid_argument("lazard_E: bracket is not alternating");
    }
    if (!is_k_bilinear(bracket).pass) {
        throw std::invalid_argument("lazard_E: bracket is not bilinear over the base field");
    }
    // two-step: [[u_a, u_b], u_c] = 0 for all basis triples
    for (size_t a = 0; a < coords; ++a) {
        std::vector<uint32_t> ua(coords, 0);
        ua[a] = 1;
        for (size_t b = 0; b < coords; ++b) {
            std::vector<uint32_t> ub(coords, 0);
            ub[b] = 1;
            std::vector<uint32_t> inner = bracket.eval(ua, ub);
            for (size_t c = 0; c < coords; ++c) {
                std::vector<uint32_t> uc(coords, 0);
                uc[c] = 1;
                if (!vec_is_zero(bracket.eval(inner, uc)) ||
                    !vec_is_zero(bracket.eval(uc, inner))) {
                    throw std::invalid_argument("lazard_E: bracket image is not central (not two-step)");
                }
            }
        }
    }

    std::vector<std::vector<std::vector<uint32_t>>> table(
        coords, std::vector<std::vector<uint32_t>>(coords));
    for (size_t a = 0; a < coords; ++a) {
        std::vector<uint32_t> ua(coords, 0);
        ua[a] = 1;
        for (size_t b = 0; b < coords; ++b) {
            std::vector<uint32_t> ub(coords, 0);
            ub[b] = 1;
            table[a][b] = bracket.eval(ua, ub);
        }
    }
    TwistedAdditionGroup group(p, coords, table);

    BiAddMapSpec gamma = bracket;
    for (size_t a = 0; a < coords; ++a) {
        for (size_t b = 0; b < coords; ++b) {
            gamma.table[a][b] = vec_scale(2 % p, bracket.table[a][b], p);
        }
    }
    return LazardResult{std::move(group), std::move(gamma)};
}

namespace {

FqField::Elem hermitian_eval(const FqField& K, const std::vector<std::vector<FqField::Elem>>& form,
                             const std::vector<FqField::Elem>& v,
                             const std::vector<FqField::Elem>& w) {
    FqField::Elem acc = K.zero();
    for (size_t i = 0; i < v.size(); ++i) {
        for (size_t j = 0; j < w.size(); ++j) {
            acc = K.add(acc, K.mul(K.mul(K.frobenius(v[i]), form[i][j]), w[j]));
        }
    }
    return acc;
}

}  // namespace

FqField::Elem hermitian_form(const PseudoQuadraticResult& r,
                             const std::vector<FqField::Elem>& v,
                             const std::vector<FqField::Elem>& w) {
    return hermitian_eval(r.big, r.form, v, w);
}

FqField::Elem pseudo_quadratic_form(const PseudoQuadraticResult& r,
                                    const std::vector<FqField::Elem>& v) {
    return r.big.mul(r.half, hermitian_form(r, v, v));
}

PseudoQuadraticResult pseudo_quadratic_group(const PseudoQuadraticSpec& spec) {
    if (!is_prime(spec.q)) {
        throw std::invalid_argument("pseudo_quadratic_group: q must be prime");
    }
    if (spec.n == 0) throw std::invalid_argument("pseudo_quadratic_group: n must be positive");
    uint32_t p = spec.q;

    PseudoQuadraticResult r;
    r.small = FqField::make(p, 1);
    r.big = FqField::make(p, 2);
    const FqField& K = r.big;

    // default form: delta * I with delta^theta = -delta (for p = 2 this is
    // the identity, since every element of F_q is trace-compatible there)
    if (spec.form.empty()) {
        FqField::Elem delta = K.zero();
        for (size_t i = 1; i < K.order(); ++i) {
            FqField::Elem cand = K.from_index(i);
            if (K.frobenius(cand) == K.neg(cand)) {
                delta = cand;
                break;
            }
        }
        if (K.is_zero(delta)) throw std::logic_error("pseudo_quadratic_group: no trace-zero unit");
        r.form.assign(spec.n, std::vector<FqField::Elem>(spec.n, K.zero()));
        for (size_t i = 0; i < spec.n; ++i) r.form[i][i] = delta;
    } else {
        if (spec.form.size() != spec.n) {
            throw std::invalid_argument("pseudo_quadratic_group: form has wrong shape");
        }
        r.form = spec.form;
    }
    // H^{theta T} = -H
    for (size_t i = 0; i < spec.n; ++i) {
        if (r.form[i].size() != spec.n) {
            throw std::invalid_argument("pseudo_quadratic_group: form has wrong shape");
        }
        for (size_t j = 0; j < spec.n; ++j) {
            if (!(K.frobenius(r.form[j][i]) == K.neg(r.form[i][j]))) {
                throw std::invalid_argument("pseudo_quadratic_group: form is not skew-hermitian");
            }
        }
    }
    // D_0 = F_q: 1 in D_0 and a^theta D_0 a subset D_0 for every a in D
    for (size_t ai = 0; ai < K.order(); ++ai) {
        FqField::Elem a = K.from_index(ai);
        for (uint32_t u = 0; u < p; ++u) {
            FqField::Elem d0 = K.zero();
            d0[0] = u;
            FqField::Elem image = K.mul(K.mul(K.frobenius(a), d0), a);
            if (image[1] != 0) {
                throw std::logic_error("pseudo_quadratic_group: D_0 is not theta-stable");
            }
        }
    }

    // half-trace element lambda with lambda + lambda^theta = 1
    r.half = K.zero();
    bool found = false;
    for (size_t i = 0; i < K.order(); ++i) {
        FqField::Elem cand = K.from_index(i);
        FqField::Elem tr = K.add(cand, K.frobenius(cand));
        if (tr == K.one()) {
            r.half = cand;
            found = true;
            break;
        }
    }
    if (!found) throw std::logic_error("pseudo_quadratic_group: trace is not onto");

    // F_p-basis of V: v_i, v_i * beta for each module coordinate; the
    // group cocycle in offset coordinates is
    //   omega(v, w) = Tr(half * h(w, v)^theta),
    // whose antisymmetrization is h(w, v) + h(w, v)^theta in D_0 = F_q.
    size_t coords = 2 * spec.n;
    auto coords_to_module = [&](const std::vector<uint32_t>& x) {
        std::vector<FqField::Elem> v(spec.n, K.zero());
        for (size_t i = 0; i < spec.n; ++i) {
            v[i][0] = x[2 * i];
            v[i][1] = x[2 * i + 1];
        }
        return v;
    };
    auto tau = [&](const std::vector<uint32_t>& xv, const std::vector<uint32_t>& xw) {
        FqField::Elem h = hermitian_eval(K, r.form, coords_to_module(xw), coords_to_module(xv));
        FqField::Elem scaled = K.mul(r.half, K.frobenius(h));
        FqField::Elem trace = K.add(scaled, K.frobenius(scaled));
        return trace[0];
    };

    std::vector<std::vector<std::vector<uint32_t>>> omega(
        coords, std::vector<std::vector<uint32_t>>(coords, std::vector<uint32_t>(1, 0)));
    for (size_t a = 0; a < coords; ++a) {
        std::vector<uint32_t> ua(coords, 0);
        ua[a] = 1;
        for (size_t b = 0; b < coords; ++b) {
            std::vector<uint32_t> ub(coords, 0);
            ub[b] = 1;
            omega[a][b][0] = tau(ua, ub);
        }
    }
    r.group = CocycleGroup(p, coords, 1, omega);

    // gamma over k = F_q: A has k-dimension 2n, N = D_0 has dimension 1
    r.gamma_over_k.field = r.small;
    r.gamma_over_k.dim_a = coords;
    r.gamma_over_k.dim_n = 1;
    r.gamma_over_k.table.assign(coords, std::vector<std::vector<uint32_t>>(
                                            coords, std::vector<uint32_t>(1, 0)));
    // gamma over K: A = V of K-dimension n, N = D of K-dimension 1 with
    // D_0 embedded as the constants
    r.gamma_over_K.field = r.big;
    r.gamma_over_K.dim_a = spec.n;
    r.gamma_over_K.dim_n = 1;
    r.gamma_over_K.table.assign(coords, std::vector<std::vector<uint32_t>>(
                                            coords, std::vector<uint32_t>(2, 0)));
    for (size_t a = 0; a < coords; ++a) {
        for (size_t b = 0; b < coords; ++b) {
            uint32_t value = sub_mod(omega[a][b][0], omega[b][a][0], p);
            r.gamma_over_k.table[a][b][0] = value;
            r.gamma_over_K.table[a][b][0] = value;
        }
    }
    return r;
}

}  // namespace nilwitness
