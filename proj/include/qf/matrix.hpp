#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qf/errors.hpp"

namespace qf {

using Int = mpz_class;
using Rat = mpq_class;

// Dense matrix over an exact ring (Int or Rat).  Value type, row-major.
template <typename R>
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    R& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const R& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw DomainError("matrix product shape mismatch");
        Matrix out(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const R& v = (*this)(i, k);
                if (v == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += v * o(k, j);
            }
        return out;
    }

    Matrix pow(unsigned long e) const {
        if (rows_ != cols_) throw DomainError("matrix power needs a square matrix");
        Matrix acc = identity(rows_), base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    // Write `block` into this matrix with upper-left corner at (i0, j0).
    void set_block(std::size_t i0, std::size_t j0, const Matrix& block) {
        if (i0 + block.rows() > rows_ || j0 + block.cols() > cols_)
            throw DomainError("block does not fit");
        for (std::size_t i = 0; i < block.rows(); ++i)
            for (std::size_t j = 0; j < block.cols(); ++j) (*this)(i0 + i, j0 + j) = block(i, j);
    }

    bool is_zero() const {
        for (const R& v : a_)
            if (v != 0) return false;
        return true;
    }

    // Deterministic flat serialization; used for hashing and debugging.
    std::string key() const {
        std::string s = std::to_string(rows_) + "x" + std::to_string(cols_) + ":";
        for (const R& v : a_) {
            s += to_plain_string(v);
            s += ',';
        }
        return s;
    }

  private:
    static std::string to_plain_string(const Int& v) { return v.get_str(); }
    static std::string to_plain_string(const Rat& v) { return v.get_str(); }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<R> a_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

inline RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rat(m(i, j));
    return out;
}

// Exact determinant by Bareiss fraction-free elimination.
inline Int det(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw DomainError("determinant needs a square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && a(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a(k, k);
    }
    return sign > 0 ? a(n - 1, n - 1) : Int(-a(n - 1, n - 1));
}

// Inverse over the rationals by Gauss-Jordan.  DomainError when singular.
inline RatMatrix inverse(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw DomainError("inverse needs a square matrix");
    const std::size_t n = m.rows();
    RatMatrix a = m, inv = RatMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a(piv, k) == 0) ++piv;
        if (piv == n) throw DomainError("matrix is singular");
        if (piv != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(k, j), a(piv, j));
                std::swap(inv(k, j), inv(piv, j));
            }
        Rat d = a(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            a(k, j) /= d;
            inv(k, j) /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a(i, k) == 0) continue;
            Rat f = a(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

// Integer inverse of a unimodular (det ±1) matrix; DomainError otherwise.
inline IntMatrix unimodular_inverse(const IntMatrix& m) {
    RatMatrix inv = inverse(to_rational(m));
    IntMatrix out(inv.rows(), inv.cols());
    for (std::size_t i = 0; i < inv.rows(); ++i)
        for (std::size_t j = 0; j < inv.cols(); ++j) {
            const Rat& v = inv(i, j);
            if (v.get_den() != 1) throw DomainError("matrix is not unimodular");
            out(i, j) = v.get_num();
        }
    return out;
}

// Entrywise reduction mod p into the canonical range [0, p).
inline IntMatrix reduce_mod(const IntMatrix& m, const Int& p) {
    if (p <= 0) throw DomainError("modulus must be positive");
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Int r;
            mpz_mod(r.get_mpz_t(), m(i, j).get_mpz_t(), p.get_mpz_t());
            out(i, j) = r;
        }
    return out;
}

}  // namespace qf
