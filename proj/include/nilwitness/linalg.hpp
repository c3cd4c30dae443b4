#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace nilwitness {

bool is_prime(uint32_t n);

// Residue arithmetic modulo a prime p. Values are kept fully reduced in
// [0, p); mixing moduli throws std::invalid_argument.
class Fp {
public:
    Fp(uint32_t p, int64_t value);

    uint32_t modulus() const { return p_; }
    uint32_t value() const { return v_; }

    Fp operator+(const Fp& o) const;
    Fp operator-(const Fp& o) const;
    Fp operator*(const Fp& o) const;
    Fp operator-() const;
    Fp inverse() const;

    bool operator==(const Fp& o) const = default;

private:
    uint32_t p_;
    uint32_t v_;
};

// Raw residue helpers shared by the dense kernels below. `p` is assumed
// prime and all inputs reduced.
uint32_t add_mod(uint32_t a, uint32_t b, uint32_t p);
uint32_t sub_mod(uint32_t a, uint32_t b, uint32_t p);
uint32_t mul_mod(uint32_t a, uint32_t b, uint32_t p);
uint32_t neg_mod(uint32_t a, uint32_t p);
uint32_t inv_mod(uint32_t a, uint32_t p);
uint32_t reduce_mod(int64_t a, uint32_t p);

// Dense row-major matrix over F_p.
class FpMatrix {
public:
    FpMatrix(uint32_t p, size_t rows, size_t cols);

    static FpMatrix identity(uint32_t p, size_t n);

    uint32_t modulus() const { return p_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    uint32_t at(size_t r, size_t c) const;
    void set(size_t r, size_t c, int64_t value);

    bool operator==(const FpMatrix& o) const = default;

private:
    uint32_t p_;
    size_t rows_;
    size_t cols_;
    std::vector<uint32_t> entries_;
};

// Matrix-vector product; v has cols() entries, result has rows().
std::vector<uint32_t> mat_vec(const FpMatrix& m, const std::vector<uint32_t>& v);

// F_p-rank via Gaussian elimination with first-nonzero pivoting.
size_t rank(const FpMatrix& m);

// Basis of the right kernel {v : Mv = 0}; size is cols() - rank(M).
std::vector<std::vector<uint32_t>> kernel_basis(const FpMatrix& m);

// Rank of an alternating form B (B^T = -B with explicit zero diagonal,
// which is the extra requirement in characteristic 2). The radical of B
// has dimension cols() - rank(B). Non-alternating input throws.
size_t radical_rank(const FpMatrix& b);

}  // namespace nilwitness
