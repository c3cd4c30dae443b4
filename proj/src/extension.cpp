#include "nilwitness/extension.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace nilwitness {

namespace {

uint32_t dot(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b, uint32_t p) {
    uint64_t acc = 0;
    for (size_t i = 0; i < a.size(); ++i) acc += static_cast<uint64_t>(a[i]) * b[i];
    return static_cast<uint32_t>(acc % p);
}

}  // namespace

FiniteWindowGroup::FiniteWindowGroup(uint32_t p, std::vector<int64_t> basis, FpMatrix pairing,
                                     std::string provenance)
    : p_(p), basis_(std::move(basis)), pairing_(std::move(pairing)),
      provenance_(std::move(provenance)) {
    if (!is_prime(p)) {
        throw std::invalid_argument("FiniteWindowGroup: modulus is not prime");
    }
    if (pairing_.modulus() != p || pairing_.rows() != basis_.size() ||
        pairing_.cols() != basis_.size()) {
        throw std::invalid_argument("FiniteWindowGroup: pairing table has wrong shape or modulus");
    }
    for (size_t i = 0; i < basis_.size(); ++i) {
        for (size_t j = i + 1; j < basis_.size(); ++j) {
            if (basis_[i] == basis_[j]) {
                throw std::invalid_argument("FiniteWindowGroup: duplicate basis exponent");
            }
        }
    }
}

FiniteWindowGroup FiniteWindowGroup::from_character(const CharacterSpec& chi,
                                                    const CocycleSpec& omega,
                                                    std::vector<int64_t> basis,
                                                    std::string provenance) {
    uint32_t p = chi.modulus();
    FpMatrix pairing(p, basis.size(), basis.size());
    for (size_t i = 0; i < basis.size(); ++i) {
        for (size_t j = 0; j < basis.size(); ++j) {
            LaurentPoly value = cocycle_eval(omega, LaurentPoly::monomial(p, 1, basis[i]),
                                             LaurentPoly::monomial(p, 1, basis[j]));
            pairing.set(i, j, chi.evaluate(value));
        }
    }
    return FiniteWindowGroup(p, std::move(basis), std::move(pairing), std::move(provenance));
}

FiniteWindowGroup::Elem FiniteWindowGroup::identity() const {
    return Elem{std::vector<uint32_t>(basis_.size(), 0), 0};
}

FiniteWindowGroup::Elem FiniteWindowGroup::mul(const Elem& a, const Elem& b) const {
    Elem out;
    out.x.resize(basis_.size());
    uint64_t central = add_mod(a.c, b.c, p_);
    for (size_t i = 0; i < basis_.size(); ++i) {
        out.x[i] = add_mod(a.x[i], b.x[i], p_);
    }
    for (size_t i = 0; i < basis_.size(); ++i) {
        if (a.x[i] == 0) continue;
        for (size_t j = 0; j < basis_.size(); ++j) {
            central = add_mod(static_cast<uint32_t>(central),
                              mul_mod(mul_mod(a.x[i], b.x[j], p_), pairing_.at(i, j), p_), p_);
        }
    }
    out.c = static_cast<uint32_t>(central);
    return out;
}

FiniteWindowGroup::Elem FiniteWindowGroup::inverse(const Elem& a) const {
    Elem out;
    out.x.resize(basis_.size());
    for (size_t i = 0; i < basis_.size(); ++i) out.x[i] = neg_mod(a.x[i], p_);
    // (x, c)(-x, e) = (0, c + e - sum x_i x_j pairing(i,j))
    uint32_t self = 0;
    for (size_t i = 0; i < basis_.size(); ++i) {
        for (size_t j = 0; j < basis_.size(); ++j) {
            self = add_mod(self, mul_mod(mul_mod(a.x[i], a.x[j], p_), pairing_.at(i, j), p_), p_);
        }
    }
    out.c = sub_mod(self, a.c, p_);
    return out;
}

FiniteWindowGroup::Elem FiniteWindowGroup::commutator(const Elem& a, const Elem& b) const {
    Elem out = identity();
    uint32_t central = 0;
    for (size_t i = 0; i < basis_.size(); ++i) {
        for (size_t j = 0; j < basis_.size(); ++j) {
            uint32_t k = sub_mod(pairing_.at(i, j), pairing_.at(j, i), p_);
            central = add_mod(central, mul_mod(mul_mod(a.x[i], b.x[j], p_), k, p_), p_);
        }
    }
    out.c = central;
    return out;
}

size_t FiniteWindowGroup::order() const {
    size_t n = p_;
    for (size_t i = 0; i < basis_.size(); ++i) n *= p_;
    return n;
}

FiniteWindowGroup::Elem FiniteWindowGroup::decode(size_t index) const {
    Elem e;
    e.x.resize(basis_.size());
    for (size_t i = 0; i < basis_.size(); ++i) {
        e.x[i] = static_cast<uint32_t>(index % p_);
        index /= p_;
    }
    e.c = static_cast<uint32_t>(index % p_);
    return e;
}

size_t FiniteWindowGroup::encode(const Elem& e) const {
    size_t index = e.c % p_;
    for (size_t i = basis_.size(); i-- > 0;) {
        index = index * p_ + (e.x[i] % p_);
    }
    return index;
}

SemidirectEnvelope::SemidirectEnvelope(FiniteWindowGroup q) : p_(q.modulus()), q_(std::move(q)) {}

SemidirectElement SemidirectEnvelope::identity() const {
    return SemidirectElement{std::vector<uint32_t>(q_.window_size(), 0), q_.identity()};
}

SemidirectElement SemidirectEnvelope::mul(const SemidirectElement& g,
                                          const SemidirectElement& h) const {
    if (g.phi.size() != q_.window_size() || h.phi.size() != q_.window_size()) {
        throw std::invalid_argument("SemidirectEnvelope::mul: wrong dual dimension");
    }
    SemidirectElement out;
    out.phi.resize(q_.window_size());
    for (size_t i = 0; i < q_.window_size(); ++i) {
        out.phi[i] = add_mod(g.phi[i], h.phi[i], p_);
    }
    // psi(g)^{-1} g h: the dual of the right factor twists g's central
    // coordinate before the Q-product.
    FiniteWindowGroup::Elem twisted = g.q;
    twisted.c = sub_mod(twisted.c, dot(h.phi, g.q.x, p_), p_);
    out.q = q_.mul(twisted, h.q);
    return out;
}

SemidirectElement SemidirectEnvelope::inverse(const SemidirectElement& g) const {
    // (phi, q)^{-1} = (-phi, r) with r.x = -x and the central coordinate
    // solving mul(g, g^{-1}) = identity.
    SemidirectElement out;
    out.phi.resize(q_.window_size());
    for (size_t i = 0; i < q_.window_size(); ++i) out.phi[i] = neg_mod(g.phi[i], p_);
    FiniteWindowGroup::Elem qinv = q_.inverse(g.q);
    // the (-phi)(x_g) twist applied during mul(g, out) must be cancelled
    qinv.c = add_mod(qinv.c, neg_mod(dot(g.phi, g.q.x, p_), p_), p_);
    out.q = qinv;
    return out;
}

SemidirectElement SemidirectEnvelope::commutator(const SemidirectElement& g,
                                                 const SemidirectElement& h) const {
    SemidirectElement out = identity();
    FiniteWindowGroup::Elem qc = q_.commutator(g.q, h.q);
    uint32_t c = qc.c;
    c = sub_mod(c, dot(h.phi, g.q.x, p_), p_);
    c = add_mod(c, dot(g.phi, h.q.x, p_), p_);
    out.q.c = c;
    return out;
}

SemidirectElement SemidirectEnvelope::commutator_literal(const SemidirectElement& g,
                                                         const SemidirectElement& h) const {
    return mul(mul(mul(g, h), inverse(g)), inverse(h));
}

size_t SemidirectEnvelope::order() const {
    size_t n = q_.order();
    for (size_t i = 0; i < q_.window_size(); ++i) n *= p_;
    return n;
}

SemidirectElement SemidirectEnvelope::decode(size_t index) const {
    size_t qn = q_.order();
    SemidirectElement g;
    g.q = q_.decode(index % qn);
    index /= qn;
    g.phi.resize(q_.window_size());
    for (size_t i = 0; i < q_.window_size(); ++i) {
        g.phi[i] = static_cast<uint32_t>(index % p_);
        index /= p_;
    }
    return g;
}

size_t SemidirectEnvelope::encode(const SemidirectElement& g) const {
    size_t index = 0;
    for (size_t i = q_.window_size(); i-- > 0;) {
        index = index * p_ + (g.phi[i] % p_);
    }
    return index * q_.order() + q_.encode(g.q);
}

bool SemidirectEnvelope::in_cbar(const SemidirectElement& g) const {
    for (uint32_t v : g.phi)
        if (v != 0) return false;
    for (uint32_t v : g.q.x)
        if (v != 0) return false;
    return true;
}

MulTable build_mul_table(const SemidirectEnvelope& e) {
    MulTable table;
    table.n = e.order();
    table.identity = e.encode(e.identity());
    table.prod.resize(table.n * table.n);
    for (size_t a = 0; a < table.n; ++a) {
        SemidirectElement ga = e.decode(a);
        for (size_t b = 0; b < table.n; ++b) {
            table.set(a, b, e.encode(e.mul(ga, e.decode(b))));
        }
    }
    return table;
}

namespace {

VerifyReport verify_class2_generators(const SemidirectEnvelope& e) {
    VerifyReport report;
    // generating set: dual unit vectors, Q basis monomials, central generator
    std::vector<SemidirectElement> gens;
    size_t w = e.window_size();
    for (size_t i = 0; i < w; ++i) {
        SemidirectElement g = e.identity();
        g.phi[i] = 1;
        gens.push_back(g);
    }
    for (size_t i = 0; i < w; ++i) {
        SemidirectElement g = e.identity();
        g.q.x[i] = 1;
        gens.push_back(g);
    }
    SemidirectElement central = e.identity();
    central.q.c = 1;
    gens.push_back(central);

    for (size_t i = 0; i < gens.size(); ++i) {
        for (size_t j = 0; j < gens.size(); ++j) {
            SemidirectElement c = e.commutator_literal(gens[i], gens[j]);
            ++report.checks;
            if (report.pass && !e.in_cbar(c)) {
                report.pass = false;
                report.first_failure = "generator commutator (" + std::to_string(i) + ", " +
                                       std::to_string(j) + ") escapes Cbar";
            }
        }
    }
    for (uint32_t c = 1; c < e.modulus(); ++c) {
        SemidirectElement z = e.identity();
        z.q.c = c;
        for (size_t j = 0; j < gens.size(); ++j) {
            ++report.checks;
            if (report.pass && !(e.mul(z, gens[j]) == e.mul(gens[j], z))) {
                report.pass = false;
                report.first_failure = "Cbar element fails to centralize generator " +
                                       std::to_string(j);
            }
        }
    }
    return report;
}

}  // namespace

VerifyReport verify_class2_and_center(const SemidirectEnvelope& e, size_t enumeration_limit) {
    size_t n = e.order();
    if (n > enumeration_limit) {
        return verify_class2_generators(e);
    }
    VerifyReport report;
    std::vector<SemidirectElement> elems;
    elems.reserve(n);
    for (size_t i = 0; i < n; ++i) elems.push_back(e.decode(i));
    for (size_t a = 0; a < n; ++a) {
        for (size_t b = 0; b < n; ++b) {
            SemidirectElement c = e.commutator_literal(elems[a], elems[b]);
            ++report.checks;
            if (report.pass && !e.in_cbar(c)) {
                report.pass = false;
                report.first_failure = "commutator of elements " + std::to_string(a) + ", " +
                                       std::to_string(b) + " escapes Cbar";
            }
        }
    }
    for (uint32_t cv = 0; cv < e.modulus(); ++cv) {
        SemidirectElement z = e.identity();
        z.q.c = cv;
        for (size_t b = 0; b < n; ++b) {
            ++report.checks;
            if (report.pass && !(e.mul(z, elems[b]) == e.mul(elems[b], z))) {
                report.pass = false;
                report.first_failure = "Cbar element " + std::to_string(cv) +
                                       " fails to centralize element " + std::to_string(b);
            }
        }
    }
    return report;
}

VerifyReport verify_class2_and_center_table(const MulTable& table,
                                            const std::vector<bool>& cbar_mask) {
    VerifyReport report;
    if (cbar_mask.size() != table.n) {
        throw std::invalid_argument("verify_class2_and_center_table: mask size mismatch");
    }
    // inverses recovered from the table itself
    std::vector<size_t> inv(table.n, table.n);
    for (size_t a = 0; a < table.n; ++a) {
        for (size_t b = 0; b < table.n; ++b) {
            if (table.at(a, b) == table.identity) {
                inv[a] = b;
                break;
            }
        }
        if (inv[a] == table.n) {
            report.pass = false;
            report.first_failure = "element " + std::to_string(a) + " has no right inverse";
            return report;
        }
    }
    for (size_t a = 0; a < table.n; ++a) {
        for (size_t b = 0; b < table.n; ++b) {
            size_t c = table.at(table.at(table.at(a, b), inv[a]), inv[b]);
            ++report.checks;
            if (report.pass && !cbar_mask[c]) {
                report.pass = false;
                report.first_failure = "table commutator of " + std::to_string(a) + ", " +
                                       std::to_string(b) + " escapes Cbar";
            }
        }
    }
    for (size_t z = 0; z < table.n; ++z) {
        if (!cbar_mask[z]) continue;
        for (size_t b = 0; b < table.n; ++b) {
            ++report.checks;
            if (report.pass && table.at(z, b) != table.at(b, z)) {
                report.pass = false;
                report.first_failure = "Cbar element " + std::to_string(z) +
                                       " fails to centralize element " + std::to_string(b);
            }
        }
    }
    return report;
}

SurjectivityReport omega_sigma_surjective(const SemidirectEnvelope& e, uint32_t sigma_unit,
                                          size_t enumeration_limit) {
    uint32_t p = e.modulus();
    uint32_t u = sigma_unit % p;
    if (u == 0) {
        throw std::invalid_argument("omega_sigma_surjective: sigma must be nontrivial on C");
    }
    size_t w = e.window_size();
    SurjectivityReport report;
    report.expected_size = 1;
    for (size_t i = 0; i < 2 * w; ++i) report.expected_size *= p;

    // omega_sigma(phi, g) as the functional (psi, y) -> u*(x K y - psi(x) + phi(y))
    auto functional = [&](const SemidirectElement& g) {
        std::vector<uint32_t> f(2 * w, 0);
        for (size_t i = 0; i < w; ++i) {
            f[i] = neg_mod(mul_mod(u, g.q.x[i], p), p);
        }
        for (size_t j = 0; j < w; ++j) {
            uint32_t acc = g.phi[j];
            for (size_t i = 0; i < w; ++i) {
                uint32_t k = sub_mod(e.base().pairing(i, j), e.base().pairing(j, i), p);
                acc = add_mod(acc, mul_mod(g.q.x[i], k, p), p);
            }
            f[w + j] = mul_mod(u, acc, p);
        }
        return f;
    };

    if (e.order() <= enumeration_limit) {
        std::set<std::vector<uint32_t>> image;
        for (size_t i = 0; i < e.order(); ++i) {
            image.insert(functional(e.decode(i)));
        }
        report.image_size = image.size();
    } else {
        // the map is linear in (phi, x); the image size is p^rank
        FpMatrix m(p, 2 * w, 2 * w);
        for (size_t col = 0; col < 2 * w; ++col) {
            SemidirectElement g = e.identity();
            if (col < w) {
                g.phi[col] = 1;
            } else {
                g.q.x[col - w] = 1;
            }
            std::vector<uint32_t> f = functional(g);
            for (size_t row = 0; row < 2 * w; ++row) m.set(row, col, f[row]);
        }
        size_t r = rank(m);
        report.image_size = 1;
        for (size_t i = 0; i < r; ++i) report.image_size *= p;
    }
    report.pass = report.image_size == report.expected_size;
    if (!report.pass) {
        report.detail = "image has size " + std::to_string(report.image_size) + ", dual has size " +
                        std::to_string(report.expected_size);
    }
    return report;
}

}  // namespace nilwitness
