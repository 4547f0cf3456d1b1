#pragma once

// Small dense/banded linear-algebra kernels used by the eigensolver.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace ptspec {

/// Row-major square or rectangular matrix.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::initializer_list<T> values)
        : rows_(rows), cols_(cols), data_(values) {
        if (data_.size() != rows * cols) throw std::invalid_argument("Matrix: wrong number of values");
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    T* row(std::size_t i) { return data_.data() + i * cols_; }
    const T* row(std::size_t i) const { return data_.data() + i * cols_; }

    void apply(std::span<const T> x, std::vector<T>& y) const {
        y.assign(rows_, T{});
        for (std::size_t i = 0; i < rows_; ++i) {
            T acc{};
            const T* r = row(i);
            for (std::size_t j = 0; j < cols_; ++j) acc += r[j] * x[j];
            y[i] = acc;
        }
    }

    /// Max column sum.
    double norm1() const {
        std::vector<double> sums(cols_, 0.0);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) sums[j] += std::abs((*this)(i, j));
        return sums.empty() ? 0.0 : *std::max_element(sums.begin(), sums.end());
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

/// LU factorization with partial pivoting of a band matrix with `kl`
/// sub- and `ku` super-diagonals.  Row interchanges widen the upper band to
/// kl + ku.  Exactly zero pivots are replaced by `zero_pivot`, which is what
/// inverse iteration wants at a converged shift.
class BandLU {
public:
    using cplx = std::complex<double>;

    BandLU(std::size_t n, std::size_t kl, std::size_t ku)
        : n_(n), kl_(kl), ku_(ku), width_(2 * kl + ku + 1), a_(n * width_), piv_(n) {}

    std::size_t order() const { return n_; }
    bool in_band(std::size_t i, std::size_t j) const {
        return j + kl_ >= i && j <= i + kl_ + ku_;
    }
    cplx& at(std::size_t i, std::size_t j) { return a_[i * width_ + (j + kl_ - i)]; }
    const cplx& at(std::size_t i, std::size_t j) const { return a_[i * width_ + (j + kl_ - i)]; }

    void factor(double zero_pivot) {
        for (std::size_t k = 0; k < n_; ++k) {
            const std::size_t last_row = std::min(k + kl_, n_ - 1);
            const std::size_t last_col = std::min(k + kl_ + ku_, n_ - 1);
            std::size_t p = k;
            double best = std::abs(at(k, k));
            for (std::size_t r = k + 1; r <= last_row; ++r) {
                const double v = std::abs(at(r, k));
                if (v > best) {
                    best = v;
                    p = r;
                }
            }
            piv_[k] = p;
            if (p != k)
                for (std::size_t j = k; j <= last_col; ++j) std::swap(at(k, j), at(p, j));
            if (at(k, k) == cplx{0.0, 0.0}) at(k, k) = zero_pivot;
            const cplx pivot = at(k, k);
            for (std::size_t r = k + 1; r <= last_row; ++r) {
                const cplx l = at(r, k) / pivot;
                at(r, k) = l;
                if (l == cplx{0.0, 0.0}) continue;
                for (std::size_t j = k + 1; j <= last_col; ++j) at(r, j) -= l * at(k, j);
            }
        }
    }

    void solve(std::vector<cplx>& b) const {
        for (std::size_t k = 0; k < n_; ++k) {
            if (piv_[k] != k) std::swap(b[k], b[piv_[k]]);
            const std::size_t last_row = std::min(k + kl_, n_ - 1);
            for (std::size_t r = k + 1; r <= last_row; ++r) b[r] -= at(r, k) * b[k];
        }
        for (std::size_t k = n_; k-- > 0;) {
            cplx s = b[k];
            const std::size_t last_col = std::min(k + kl_ + ku_, n_ - 1);
            for (std::size_t j = k + 1; j <= last_col; ++j) s -= at(k, j) * b[j];
            b[k] = s / at(k, k);
        }
    }

private:
    std::size_t n_, kl_, ku_, width_;
    std::vector<cplx> a_;
    std::vector<std::size_t> piv_;
};

}  // namespace ptspec
