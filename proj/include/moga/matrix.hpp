#pragma once

// Dense matrices and row/column vectors over a scalar backend. Row vectors
// and column vectors are distinct types on purpose: initial distributions
// multiply from the left, final vectors from the right, and conflating the
// two is a classic source of silent transposition bugs.

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "moga/scalar.hpp"

namespace moga {

namespace detail {
inline void require(bool ok, const std::string& what) {
    if (!ok) throw dimension_error(what);
}
}  // namespace detail

template <ScalarBackend S>
class RowVec {
  public:
    RowVec() = default;
    explicit RowVec(std::size_t n) : v_(n, S{0}) {}
    RowVec(std::initializer_list<S> init) : v_(init) {}
    explicit RowVec(std::vector<S> v) : v_(std::move(v)) {}

    std::size_t size() const { return v_.size(); }
    S& operator[](std::size_t i) { return v_[i]; }
    const S& operator[](std::size_t i) const { return v_[i]; }
    auto begin() const { return v_.begin(); }
    auto end() const { return v_.end(); }

    S sum() const {
        S acc{0};
        for (const S& x : v_) acc += x;
        return acc;
    }

    friend bool operator==(const RowVec& a, const RowVec& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!(a[i] == b[i])) return false;
        return true;
    }

  private:
    std::vector<S> v_;
};

template <ScalarBackend S>
class ColVec {
  public:
    ColVec() = default;
    explicit ColVec(std::size_t n) : v_(n, S{0}) {}
    ColVec(std::initializer_list<S> init) : v_(init) {}
    explicit ColVec(std::vector<S> v) : v_(std::move(v)) {}

    std::size_t size() const { return v_.size(); }
    S& operator[](std::size_t i) { return v_[i]; }
    const S& operator[](std::size_t i) const { return v_[i]; }
    auto begin() const { return v_.begin(); }
    auto end() const { return v_.end(); }

    S sum() const {
        S acc{0};
        for (const S& x : v_) acc += x;
        return acc;
    }

    friend bool operator==(const ColVec& a, const ColVec& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!(a[i] == b[i])) return false;
        return true;
    }

  private:
    std::vector<S> v_;
};

template <ScalarBackend S>
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, S{0}) {}
    Matrix(std::initializer_list<std::initializer_list<S>> init) {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            detail::require(row.size() == cols_, "ragged matrix initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = S{1};
        return m;
    }

    // The all-r square matrix B_r from the non-negativity stage.
    static Matrix constant(std::size_t n, const S& r) {
        Matrix m(n, n);
        for (S& x : m.data_) x = r;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            if (!(a.data_[i] == b.data_[i])) return false;
        return true;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        detail::require(a.rows_ == b.rows_ && a.cols_ == b.cols_,
                        "matrix addition shape mismatch: " + a.shape_str() + " vs " + b.shape_str());
        Matrix out(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.data_[i] + b.data_[i];
        return out;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        detail::require(a.cols_ == b.rows_,
                        "matrix product shape mismatch: " + a.shape_str() + " vs " + b.shape_str());
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const S& aik = a(i, k);
                if (aik == S{0}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    friend Matrix operator*(const S& c, const Matrix& m) {
        Matrix out(m.rows_, m.cols_);
        for (std::size_t i = 0; i < m.data_.size(); ++i) out.data_[i] = c * m.data_[i];
        return out;
    }

    std::string shape_str() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<S> data_;
};

template <ScalarBackend S>
RowVec<S> operator*(const RowVec<S>& v, const Matrix<S>& m) {
    detail::require(v.size() == m.rows(), "row-vector/matrix shape mismatch");
    RowVec<S> out(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const S& vi = v[i];
        if (vi == S{0}) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += vi * m(i, j);
    }
    return out;
}

template <ScalarBackend S>
ColVec<S> operator*(const Matrix<S>& m, const ColVec<S>& v) {
    detail::require(m.cols() == v.size(), "matrix/column-vector shape mismatch");
    ColVec<S> out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        S acc{0};
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

template <ScalarBackend S>
S operator*(const RowVec<S>& a, const ColVec<S>& b) {
    detail::require(a.size() == b.size(), "row/column vector length mismatch");
    S acc{0};
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

template <ScalarBackend S>
Matrix<S> transpose(const Matrix<S>& m) {
    Matrix<S> out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
    return out;
}

template <ScalarBackend S>
ColVec<S> transpose(const RowVec<S>& v) {
    ColVec<S> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
    return out;
}

template <ScalarBackend S>
RowVec<S> transpose(const ColVec<S>& v) {
    RowVec<S> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
    return out;
}

template <ScalarBackend S>
Matrix<S> kronecker(const Matrix<S>& a, const Matrix<S>& b) {
    Matrix<S> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const S& aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

template <ScalarBackend S>
RowVec<S> kronecker(const RowVec<S>& a, const RowVec<S>& b) {
    RowVec<S> out(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
    return out;
}

template <ScalarBackend S>
ColVec<S> kronecker(const ColVec<S>& a, const ColVec<S>& b) {
    ColVec<S> out(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
    return out;
}

template <ScalarBackend S>
ColVec<S> row_sums(const Matrix<S>& m) {
    ColVec<S> out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        S acc{0};
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j);
        out[i] = acc;
    }
    return out;
}

template <ScalarBackend S>
RowVec<S> col_sums(const Matrix<S>& m) {
    RowVec<S> out(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        S acc{0};
        for (std::size_t i = 0; i < m.rows(); ++i) acc += m(i, j);
        out[j] = acc;
    }
    return out;
}

template <ScalarBackend S>
S total_sum(const Matrix<S>& m) {
    S acc{0};
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j);
    return acc;
}

template <ScalarBackend S>
bool is_row_stochastic(const Matrix<S>& m) {
    detail::require(m.square(), "row-stochastic test on non-square matrix " + m.shape_str());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        S acc{0};
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j) < S{0}) return false;
            acc += m(i, j);
        }
        if (!(acc == S{1})) return false;
    }
    return true;
}

template <ScalarBackend S>
Matrix<S> power(const Matrix<S>& m, unsigned e) {
    detail::require(m.square(), "matrix power on non-square matrix " + m.shape_str());
    Matrix<S> acc = Matrix<S>::identity(m.rows());
    for (unsigned i = 0; i < e; ++i) acc = acc * m;
    return acc;
}

}  // namespace moga
