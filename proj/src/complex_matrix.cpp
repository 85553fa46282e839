#include "factorcert/complex_matrix.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "factorcert/kernels.hpp"

namespace factorcert {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw ShapeError("matrix data length " + std::to_string(data_.size()) +
                         " does not match " + std::to_string(rows_) + "x" + std::to_string(cols_));
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex(1.0, 0.0);
    return m;
}

ComplexMatrix ComplexMatrix::unit(std::size_t n, std::size_t i, std::size_t j) {
    ComplexMatrix m(n, n);
    m(i, j) = Complex(1.0, 0.0);
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.begin()->size();
    ComplexMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw ShapeError("ragged initializer rows");
        std::size_t j = 0;
        for (const auto& v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

void ComplexMatrix::require_square(const char* what) const {
    if (!is_square()) {
        throw ShapeError(std::string(what) + ": matrix is " + std::to_string(rows_) + "x" +
                         std::to_string(cols_) + ", expected square");
    }
}

namespace {
void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError(std::string(what) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
    }
}
} // namespace

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    require_same_shape(*this, o, "matrix addition");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    require_same_shape(*this, o, "matrix subtraction");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (auto& v : data_) v *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("matrix product: inner dimensions " + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()));
    }
    ComplexMatrix c(a.rows(), b.cols());
    kernels::matmul(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
    return c;
}

ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    kernels::adjoint(a.data(), a.rows(), a.cols(), out.data());
    return out;
}

ComplexMatrix conjugate(const ComplexMatrix& a) {
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = std::conj(a(i, j));
    return out;
}

ComplexMatrix transpose(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
    return out;
}

Complex trace(const ComplexMatrix& a) {
    a.require_square("trace");
    Complex t(0.0, 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    const Complex* p = a.data();
    const std::size_t nn = a.rows() * a.cols();
    for (std::size_t i = 0; i < nn; ++i) s += std::norm(p[i]);
    return std::sqrt(s);
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "frobenius_distance");
    double s = 0.0;
    const Complex* pa = a.data();
    const Complex* pb = b.data();
    const std::size_t nn = a.rows() * a.cols();
    for (std::size_t i = 0; i < nn; ++i) s += std::norm(pa[i] - pb[i]);
    return std::sqrt(s);
}

double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    const Complex* p = a.data();
    const std::size_t nn = a.rows() * a.cols();
    for (std::size_t i = 0; i < nn; ++i) m = std::max(m, std::abs(p[i]));
    return m;
}

} // namespace factorcert
