#ifndef FACTORCERT_COMPLEX_MATRIX_HPP
#define FACTORCERT_COMPLEX_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "factorcert/errors.hpp"

namespace factorcert {

using Complex = std::complex<double>;

// Dense row-major complex matrix; the universal carrier for unitaries,
// Kraus operators and Choi matrices. Immutable in practice: operations
// return fresh values.
class ComplexMatrix {
public:
    ComplexMatrix() : rows_(0), cols_(0) {}
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);

    static ComplexMatrix identity(std::size_t n);
    // Standard matrix unit E_ij (1-based callers beware: indices here are 0-based).
    static ComplexMatrix unit(std::size_t n, std::size_t i, std::size_t j);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool empty() const { return data_.empty(); }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Complex* data() { return data_.data(); }
    const Complex* data() const { return data_.data(); }

    void require_square(const char* what) const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(Complex s);

    friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);

ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix conjugate(const ComplexMatrix& a);
ComplexMatrix transpose(const ComplexMatrix& a);

Complex trace(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs(const ComplexMatrix& a);

} // namespace factorcert

#endif
