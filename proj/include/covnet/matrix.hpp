#ifndef COVNET_MATRIX_HPP
#define COVNET_MATRIX_HPP

#include <cassert>
#include <cstddef>
#include <vector>

namespace covnet {

// Minimal row-major dense matrix. Everything the network needs is a plain
// loop over this; no external linear algebra behind the training path.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, T{0}) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    size_t size() const { return data_.size(); }

    T& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }

    T* row(int i) { return data_.data() + static_cast<size_t>(i) * cols_; }
    const T* row(int i) const { return data_.data() + static_cast<size_t>(i) * cols_; }

    void fill(T v) { data_.assign(data_.size(), v); }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;
};

// C = A * B
template <typename T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b) {
    assert(a.cols() == b.rows());
    Matrix<T> c(a.rows(), b.cols());
    matmul_into(c, a, b);
    return c;
}

// C = A * B, C preallocated and zeroed by caller or overwritten here.
// ikj order so the inner loop runs down contiguous rows of B and C.
template <typename T>
void matmul_into(Matrix<T>& c, const Matrix<T>& a, const Matrix<T>& b) {
    assert(a.cols() == b.rows() && c.rows() == a.rows() && c.cols() == b.cols());
    c.fill(T{0});
    const int m = a.rows(), k = a.cols(), n = b.cols();
    for (int i = 0; i < m; ++i) {
        T* ci = c.row(i);
        const T* ai = a.row(i);
        for (int p = 0; p < k; ++p) {
            const T aip = ai[p];
            if (aip == T{0}) continue;
            const T* bp = b.row(p);
            for (int j = 0; j < n; ++j) ci[j] += aip * bp[j];
        }
    }
}

// C += A * B
template <typename T>
void matmul_add(Matrix<T>& c, const Matrix<T>& a, const Matrix<T>& b) {
    assert(a.cols() == b.rows() && c.rows() == a.rows() && c.cols() == b.cols());
    const int m = a.rows(), k = a.cols(), n = b.cols();
    for (int i = 0; i < m; ++i) {
        T* ci = c.row(i);
        const T* ai = a.row(i);
        for (int p = 0; p < k; ++p) {
            const T aip = ai[p];
            if (aip == T{0}) continue;
            const T* bp = b.row(p);
            for (int j = 0; j < n; ++j) ci[j] += aip * bp[j];
        }
    }
}

// C += A^T * B   (A is m x r, B is m x n, C is r x n)
template <typename T>
void matmul_transA_add(Matrix<T>& c, const Matrix<T>& a, const Matrix<T>& b) {
    assert(a.rows() == b.rows() && c.rows() == a.cols() && c.cols() == b.cols());
    const int m = a.rows(), r = a.cols(), n = b.cols();
    for (int i = 0; i < m; ++i) {
        const T* ai = a.row(i);
        const T* bi = b.row(i);
        for (int p = 0; p < r; ++p) {
            const T aip = ai[p];
            if (aip == T{0}) continue;
            T* cp = c.row(p);
            for (int j = 0; j < n; ++j) cp[j] += aip * bi[j];
        }
    }
}

// C += A * B^T   (A is m x r, B is n x r, C is m x n)
template <typename T>
void matmul_transB_add(Matrix<T>& c, const Matrix<T>& a, const Matrix<T>& b) {
    assert(a.cols() == b.cols() && c.rows() == a.rows() && c.cols() == b.rows());
    const int m = a.rows(), r = a.cols(), n = b.rows();
    for (int i = 0; i < m; ++i) {
        const T* ai = a.row(i);
        T* ci = c.row(i);
        for (int j = 0; j < n; ++j) {
            const T* bj = b.row(j);
            T acc{0};
            for (int p = 0; p < r; ++p) acc += ai[p] * bj[p];
            ci[j] += acc;
        }
    }
}

} // namespace covnet

#endif // COVNET_MATRIX_HPP
