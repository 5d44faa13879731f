#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace splitsolve {

using Vec = std::vector<double>;

inline Vec operator+(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec operator-(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec operator*(double c, const Vec& a) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline Vec& axpy(Vec& y, double a, const Vec& x) {
    for (size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
    return y;
}

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline bool all_finite(const Vec& a) {
    for (double v : a)
        if (!std::isfinite(v)) return false;
    return true;
}

// Dense row-major matrix, sized for small operators (projections, Jacobians).
struct Matrix {
    size_t rows = 0;
    size_t cols = 0;
    std::vector<double> data;  // rows * cols

    Matrix() = default;
    Matrix(size_t r, size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(size_t i, size_t j) { return data[i * cols + j]; }
    double operator()(size_t i, size_t j) const { return data[i * cols + j]; }

    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    Vec apply(const Vec& x) const {
        if (x.size() != cols)
            throw std::invalid_argument("matrix-vector size mismatch: " + std::to_string(cols) +
                                        " columns vs vector of length " + std::to_string(x.size()));
        Vec y(rows, 0.0);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) y[i] += data[i * cols + j] * x[j];
        return y;
    }

    Vec apply_transposed(const Vec& x) const {
        if (x.size() != rows)
            throw std::invalid_argument("matrix^T-vector size mismatch: " + std::to_string(rows) +
                                        " rows vs vector of length " + std::to_string(x.size()));
        Vec y(cols, 0.0);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) y[j] += data[i * cols + j] * x[i];
        return y;
    }

    Matrix transposed() const {
        Matrix t(cols, rows);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix multiply(const Matrix& other) const {
        if (cols != other.rows) throw std::invalid_argument("matrix-matrix size mismatch");
        Matrix p(rows, other.cols);
        for (size_t i = 0; i < rows; ++i)
            for (size_t k = 0; k < cols; ++k) {
                const double a = (*this)(i, k);
                if (a == 0.0) continue;
                for (size_t j = 0; j < other.cols; ++j) p(i, j) += a * other(k, j);
            }
        return p;
    }
};

}  // namespace splitsolve
