#include "nilwitness/cocycle.hpp"

#include <stdexcept>

namespace nilwitness {

SigmaSeq::SigmaSeq(uint32_t p, std::vector<int64_t> prefix, std::vector<int64_t> period) : p_(p) {
    if (!is_prime(p)) {
        throw std::invalid_argument("SigmaSeq: modulus " + std::to_string(p) + " is not prime");
    }
    if (period.empty()) {
        throw std::invalid_argument("SigmaSeq: period must be nonempty");
    }
    prefix_.reserve(prefix.size());
    for (int64_t v : prefix) prefix_.push_back(reduce_mod(v, p));
    period_.reserve(period.size());
    for (int64_t v : period) period_.push_back(reduce_mod(v, p));
}

uint32_t SigmaSeq::at(int64_t z) const {
    if (z == 0) return 0;
    if (z < 0) return neg_mod(at(-z), p_);
    size_t L = prefix_.size();
    if (static_cast<uint64_t>(z) <= L) return prefix_[static_cast<size_t>(z - 1)];
    uint64_t offset = static_cast<uint64_t>(z) - L - 1;
    return period_[offset % period_.size()];
}

bool SigmaSeq::zero_one_valued() const {
    for (uint32_t v : prefix_)
        if (v > 1) return false;
    for (uint32_t v : period_)
        if (v > 1) return false;
    return true;
}

bool SigmaSeq::identically_zero() const {
    for (uint32_t v : prefix_)
        if (v != 0) return false;
    for (uint32_t v : period_)
        if (v != 0) return false;
    return true;
}

uint32_t sigma_at(const SigmaSeq& sigma, int64_t z) { return sigma.at(z); }

CocycleTable::CocycleTable(uint32_t p, std::vector<int64_t> basis, const FpMatrix& basis_values)
    : p_(p), basis_(std::move(basis)) {
    if (!is_prime(p)) {
        throw std::invalid_argument("CocycleTable: modulus is not prime");
    }
    if (basis_values.modulus() != p || basis_values.rows() != basis_.size() ||
        basis_values.cols() != basis_.size()) {
        throw std::invalid_argument("CocycleTable: basis value table has wrong shape or modulus");
    }
    for (size_t i = 0; i < basis_.size(); ++i) {
        for (size_t j = i + 1; j < basis_.size(); ++j) {
            if (basis_[i] == basis_[j]) {
                throw std::invalid_argument("CocycleTable: duplicate basis exponent");
            }
        }
    }
    size_ = 1;
    for (size_t i = 0; i < basis_.size(); ++i) {
        size_ *= p;
        if (size_ > (1u << 20)) {
            throw std::invalid_argument("CocycleTable: window too large to tabulate");
        }
    }
    values_.assign(size_ * size_, 0);
    for (size_t a = 0; a < size_; ++a) {
        std::vector<uint32_t> av = decode(a);
        for (size_t b = 0; b < size_; ++b) {
            std::vector<uint32_t> bv = decode(b);
            uint64_t acc = 0;
            for (size_t i = 0; i < basis_.size(); ++i) {
                if (av[i] == 0) continue;
                for (size_t j = 0; j < basis_.size(); ++j) {
                    acc += static_cast<uint64_t>(av[i]) * bv[j] % p * basis_values.at(i, j);
                }
            }
            values_[a * size_ + b] = static_cast<uint32_t>(acc % p);
        }
    }
}

uint32_t CocycleTable::value(size_t a, size_t b) const {
    if (a >= size_ || b >= size_) throw std::out_of_range("CocycleTable::value");
    return values_[a * size_ + b];
}

void CocycleTable::perturb(size_t a, size_t b, int64_t delta) {
    if (a >= size_ || b >= size_) throw std::out_of_range("CocycleTable::perturb");
    values_[a * size_ + b] = add_mod(values_[a * size_ + b], reduce_mod(delta, p_), p_);
}

std::vector<uint32_t> CocycleTable::decode(size_t index) const {
    std::vector<uint32_t> v(basis_.size(), 0);
    for (size_t i = 0; i < basis_.size(); ++i) {
        v[i] = static_cast<uint32_t>(index % p_);
        index /= p_;
    }
    return v;
}

size_t CocycleTable::encode(const std::vector<uint32_t>& v) const {
    if (v.size() != basis_.size()) throw std::invalid_argument("CocycleTable::encode");
    size_t index = 0;
    for (size_t i = basis_.size(); i-- > 0;) {
        index = index * p_ + (v[i] % p_);
    }
    return index;
}

LaurentPoly eval_eta(const SigmaSeq& s, const LaurentPoly& x, const LaurentPoly& y) {
    if (!s.zero_one_valued()) {
        throw std::invalid_argument("eval_eta: s must be {0,1}-valued");
    }
    if (s.modulus() != x.modulus() || x.modulus() != y.modulus()) {
        throw std::invalid_argument("eval_eta: modulus mismatch");
    }
    uint32_t p = x.modulus();
    LaurentPoly out(p);
    // only pairs i in supp(x), i+2k in supp(y) with k > 0 contribute
    for (const auto& [i, xi] : x.support()) {
        for (const auto& [j, yj] : y.support()) {
            int64_t diff = j - i;
            if (diff <= 0 || diff % 2 != 0) continue;
            int64_t k = diff / 2;
            uint32_t sk = s.at(k);
            if (sk == 0) continue;
            out.add_coeff(i + k, mul_mod(mul_mod(xi, yj, p), sk, p));
        }
    }
    return out;
}

LaurentPoly gamma_monomial(const SigmaSeq& sigma, const LaurentPoly& x, const LaurentPoly& y) {
    if (sigma.modulus() != x.modulus() || x.modulus() != y.modulus()) {
        throw std::invalid_argument("gamma_monomial: modulus mismatch");
    }
    uint32_t p = x.modulus();
    LaurentPoly out(p);
    for (const auto& [m, xm] : x.support()) {
        for (const auto& [n, yn] : y.support()) {
            uint32_t u = sigma.at(m - n);
            if (u == 0) continue;
            out.add_coeff(m + n, mul_mod(mul_mod(xm, yn, p), u, p));
        }
    }
    return out;
}

LaurentPoly gw_commutator_closed_form(const SigmaSeq& s, int64_t a, int64_t b) {
    if (!s.zero_one_valued()) {
        throw std::invalid_argument("gw_commutator_closed_form: s must be {0,1}-valued");
    }
    uint32_t p = s.modulus();
    LaurentPoly out(p);
    if (a == b || ((a - b) % 2) != 0) return out;
    if (a < b) {
        out.add_coeff((a + b) / 2, s.at((b - a) / 2));
    } else {
        out.add_coeff((a + b) / 2, neg_mod(s.at((a - b) / 2), p));
    }
    return out;
}

SigmaSeq g0_sigma(const SigmaSeq& s) {
    if (!s.zero_one_valued()) {
        throw std::invalid_argument("g0_sigma: s must be {0,1}-valued");
    }
    std::vector<int64_t> prefix(s.prefix().begin(), s.prefix().end());
    std::vector<int64_t> period(s.period().begin(), s.period().end());
    return SigmaSeq(s.modulus(), std::move(prefix), std::move(period));
}

LaurentPoly cocycle_eval(const CocycleSpec& omega, const LaurentPoly& x, const LaurentPoly& y) {
    if (const auto* eta = std::get_if<EtaS>(&omega)) {
        return eval_eta(eta->s, x, y);
    }
    if (const auto* mono = std::get_if<MonomialGamma>(&omega)) {
        const SigmaSeq& sigma = mono->sigma;
        if (sigma.modulus() != x.modulus() || x.modulus() != y.modulus()) {
            throw std::invalid_argument("cocycle_eval: modulus mismatch");
        }
        uint32_t p = x.modulus();
        LaurentPoly out(p);
        for (const auto& [m, xm] : x.support()) {
            for (const auto& [n, yn] : y.support()) {
                if (m <= n) continue;
                uint32_t u = sigma.at(m - n);
                if (u == 0) continue;
                out.add_coeff(m + n, mul_mod(mul_mod(xm, yn, p), u, p));
            }
        }
        return out;
    }
    throw std::invalid_argument("cocycle_eval: table cocycles have no Laurent evaluation");
}

namespace {

uint64_t splitmix64(uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

LaurentPoly random_poly(uint32_t p, Window window, uint64_t& state) {
    LaurentPoly out(p);
    uint64_t width = static_cast<uint64_t>(window.hi - window.lo + 1);
    size_t terms = 1 + splitmix64(state) % 4;
    for (size_t i = 0; i < terms; ++i) {
        int64_t m = window.lo + static_cast<int64_t>(splitmix64(state) % width);
        out.add_coeff(m, static_cast<int64_t>(splitmix64(state) % p));
    }
    return out;
}

namespace {

VerifyReport verify_identity_laurent(const CocycleSpec& omega, uint32_t p, Window window,
                                     uint64_t seed) {
    VerifyReport report;
    auto check = [&](const LaurentPoly& a, const LaurentPoly& b, const LaurentPoly& c) {
        LaurentPoly lhs = add(cocycle_eval(omega, add(a, b), c), cocycle_eval(omega, a, b));
        LaurentPoly rhs = add(cocycle_eval(omega, a, add(b, c)), cocycle_eval(omega, b, c));
        ++report.checks;
        if (report.pass && !(lhs == rhs)) {
            report.pass = false;
            report.first_failure = "cocycle identity fails at a=" + a.to_string() +
                                   ", b=" + b.to_string() + ", c=" + c.to_string();
        }
    };
    for (int64_t a = window.lo; a <= window.hi; ++a) {
        for (int64_t b = window.lo; b <= window.hi; ++b) {
            for (int64_t c = window.lo; c <= window.hi; ++c) {
                check(LaurentPoly::monomial(p, 1, a), LaurentPoly::monomial(p, 1, b),
                      LaurentPoly::monomial(p, 1, c));
            }
        }
    }
    uint64_t state = seed;
    for (int i = 0; i < 64; ++i) {
        check(random_poly(p, window, state), random_poly(p, window, state),
              random_poly(p, window, state));
    }
    return report;
}

VerifyReport verify_identity_table(const CocycleTable& table) {
    VerifyReport report;
    uint32_t p = table.modulus();
    size_t n = table.group_size();
    std::vector<std::vector<uint32_t>> vecs(n);
    for (size_t i = 0; i < n; ++i) vecs[i] = table.decode(i);
    auto plus = [&](size_t a, size_t b) {
        std::vector<uint32_t> v(vecs[a].size());
        for (size_t i = 0; i < v.size(); ++i) v[i] = add_mod(vecs[a][i], vecs[b][i], p);
        return table.encode(v);
    };
    for (size_t a = 0; a < n; ++a) {
        for (size_t b = 0; b < n; ++b) {
            size_t ab = plus(a, b);
            for (size_t c = 0; c < n; ++c) {
                uint32_t lhs = add_mod(table.value(ab, c), table.value(a, b), p);
                uint32_t rhs = add_mod(table.value(a, plus(b, c)), table.value(b, c), p);
                ++report.checks;
                if (report.pass && lhs != rhs) {
                    report.pass = false;
                    report.first_failure = "cocycle identity fails at table triple (" +
                                           std::to_string(a) + ", " + std::to_string(b) + ", " +
                                           std::to_string(c) + ")";
                }
            }
        }
    }
    return report;
}

}  // namespace

VerifyReport verify_cocycle_identity(const CocycleSpec& omega, Window window, uint64_t seed) {
    if (const auto* table = std::get_if<CocycleTable>(&omega)) {
        return verify_identity_table(*table);
    }
    uint32_t p = std::holds_alternative<EtaS>(omega) ? std::get<EtaS>(omega).s.modulus()
                                                     : std::get<MonomialGamma>(omega).sigma.modulus();
    return verify_identity_laurent(omega, p, window, seed);
}

VerifyReport verify_equivariance(const SigmaSeq& s, Window window, uint64_t seed) {
    if (!s.zero_one_valued()) {
        throw std::invalid_argument("verify_equivariance: s must be {0,1}-valued");
    }
    VerifyReport report;
    uint32_t p = s.modulus();
    auto check = [&](const LaurentPoly& x, const LaurentPoly& y) {
        LaurentPoly lhs = eval_eta(s, shift(x, 1), shift(y, 1));
        LaurentPoly rhs = shift(eval_eta(s, x, y), 1);
        ++report.checks;
        if (report.pass && !(lhs == rhs)) {
            report.pass = false;
            report.first_failure =
                "equivariance fails at x=" + x.to_string() + ", y=" + y.to_string();
        }
    };
    for (int64_t a = window.lo; a <= window.hi; ++a) {
        for (int64_t b = window.lo; b <= window.hi; ++b) {
            check(LaurentPoly::monomial(p, 1, a), LaurentPoly::monomial(p, 1, b));
        }
    }
    uint64_t state = seed;
    for (int i = 0; i < 100; ++i) {
        check(random_poly(p, window, state), random_poly(p, window, state));
    }
    return report;
}

}  // namespace nilwitness
