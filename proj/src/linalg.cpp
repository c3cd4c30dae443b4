#include "nilwitness/linalg.hpp"

#include <stdexcept>
#include <string>

namespace nilwitness {

bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

uint32_t reduce_mod(int64_t a, uint32_t p) {
    int64_t r = a % static_cast<int64_t>(p);
    if (r < 0) r += p;
    return static_cast<uint32_t>(r);
}

uint32_t add_mod(uint32_t a, uint32_t b, uint32_t p) {
    uint32_t s = a + b;
    return s >= p ? s - p : s;
}

uint32_t sub_mod(uint32_t a, uint32_t b, uint32_t p) {
    return a >= b ? a - b : a + p - b;
}

uint32_t mul_mod(uint32_t a, uint32_t b, uint32_t p) {
    return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % p);
}

uint32_t neg_mod(uint32_t a, uint32_t p) {
    return a == 0 ? 0 : p - a;
}

uint32_t inv_mod(uint32_t a, uint32_t p) {
    if (a == 0) throw std::invalid_argument("inv_mod: zero is not invertible");
    // extended Euclid
    int64_t t = 0, new_t = 1;
    int64_t r = p, new_r = a;
    while (new_r != 0) {
        int64_t q = r / new_r;
        int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += p;
    return static_cast<uint32_t>(t);
}

namespace {

void require_same_modulus(uint32_t a, uint32_t b, const char* what) {
    if (a != b) {
        throw std::invalid_argument(std::string(what) + ": modulus mismatch (" +
                                    std::to_string(a) + " vs " + std::to_string(b) + ")");
    }
}

}  // namespace

Fp::Fp(uint32_t p, int64_t value) : p_(p) {
    if (!is_prime(p)) {
        throw std::invalid_argument("Fp: modulus " + std::to_string(p) + " is not prime");
    }
    v_ = reduce_mod(value, p);
}

Fp Fp::operator+(const Fp& o) const {
    require_same_modulus(p_, o.p_, "Fp::operator+");
    return Fp(p_, add_mod(v_, o.v_, p_));
}

Fp Fp::operator-(const Fp& o) const {
    require_same_modulus(p_, o.p_, "Fp::operator-");
    return Fp(p_, sub_mod(v_, o.v_, p_));
}

Fp Fp::operator*(const Fp& o) const {
    require_same_modulus(p_, o.p_, "Fp::operator*");
    return Fp(p_, mul_mod(v_, o.v_, p_));
}

Fp Fp::operator-() const { return Fp(p_, neg_mod(v_, p_)); }

Fp Fp::inverse() const { return Fp(p_, inv_mod(v_, p_)); }

FpMatrix::FpMatrix(uint32_t p, size_t rows, size_t cols)
    : p_(p), rows_(rows), cols_(cols), entries_(rows * cols, 0) {
    if (!is_prime(p)) {
        throw std::invalid_argument("FpMatrix: modulus " + std::to_string(p) + " is not prime");
    }
}

FpMatrix FpMatrix::identity(uint32_t p, size_t n) {
    FpMatrix m(p, n, n);
    for (size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

uint32_t FpMatrix::at(size_t r, size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("FpMatrix::at");
    return entries_[r * cols_ + c];
}

void FpMatrix::set(size_t r, size_t c, int64_t value) {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("FpMatrix::set");
    entries_[r * cols_ + c] = reduce_mod(value, p_);
}

std::vector<uint32_t> mat_vec(const FpMatrix& m, const std::vector<uint32_t>& v) {
    if (v.size() != m.cols()) throw std::invalid_argument("apply: dimension mismatch");
    std::vector<uint32_t> out(m.rows(), 0);
    for (size_t r = 0; r < m.rows(); ++r) {
        uint64_t acc = 0;
        for (size_t c = 0; c < m.cols(); ++c) {
            acc += static_cast<uint64_t>(m.at(r, c)) * v[c];
        }
        out[r] = static_cast<uint32_t>(acc % m.modulus());
    }
    return out;
}

namespace {

// Row echelon form in place on a copy; returns pivot column per pivot row.
std::vector<size_t> echelonize(std::vector<std::vector<uint32_t>>& a, uint32_t p) {
    std::vector<size_t> pivot_cols;
    if (a.empty()) return pivot_cols;
    size_t rows = a.size();
    size_t cols = a[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t pivot = r;
        while (pivot < rows && a[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[r], a[pivot]);
        uint32_t inv = inv_mod(a[r][c], p);
        for (size_t j = c; j < cols; ++j) a[r][j] = mul_mod(a[r][j], inv, p);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            uint32_t f = a[i][c];
            for (size_t j = c; j < cols; ++j) {
                a[i][j] = sub_mod(a[i][j], mul_mod(f, a[r][j], p), p);
            }
        }
        pivot_cols.push_back(c);
        ++r;
    }
    return pivot_cols;
}

std::vector<std::vector<uint32_t>> to_grid(const FpMatrix& m) {
    std::vector<std::vector<uint32_t>> a(m.rows(), std::vector<uint32_t>(m.cols(), 0));
    for (size_t r = 0; r < m.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c) a[r][c] = m.at(r, c);
    return a;
}

}  // namespace

size_t rank(const FpMatrix& m) {
    auto a = to_grid(m);
    return echelonize(a, m.modulus()).size();
}

std::vector<std::vector<uint32_t>> kernel_basis(const FpMatrix& m) {
    uint32_t p = m.modulus();
    auto a = to_grid(m);
    std::vector<size_t> pivot_cols = echelonize(a, p);

    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t c : pivot_cols) is_pivot[c] = true;

    std::vector<std::vector<uint32_t>> basis;
    for (size_t free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<uint32_t> v(m.cols(), 0);
        v[free_col] = 1;
        // pivot row i has a 1 in pivot_cols[i]; solve for it
        for (size_t i = 0; i < pivot_cols.size(); ++i) {
            v[pivot_cols[i]] = neg_mod(a[i][free_col], p);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

size_t radical_rank(const FpMatrix& b) {
    if (b.rows() != b.cols()) {
        throw std::invalid_argument("radical_rank: matrix is not square");
    }
    uint32_t p = b.modulus();
    for (size_t i = 0; i < b.rows(); ++i) {
        if (b.at(i, i) != 0) {
            throw std::invalid_argument("radical_rank: nonzero diagonal entry, form is not alternating");
        }
        for (size_t j = i + 1; j < b.cols(); ++j) {
            if (b.at(i, j) != neg_mod(b.at(j, i), p)) {
                throw std::invalid_argument("radical_rank: B^T != -B, form is not alternating");
            }
        }
    }
    return rank(b);
}

}  // namespace nilwitness
