#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "graphcorr/errors.hpp"

namespace graphcorr {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline constexpr double kDefaultTolVal = 1e-9;
inline constexpr double kDefaultTolRank = 1e-8;

// Validation and rank tolerances threaded through the higher-level operations.
// `val` bounds axiom residuals, `rank` is the eigenvalue cutoff for dimension
// counts. Both are overridable from the CLI.
struct Tolerances {
    double val = kDefaultTolVal;
    double rank = kDefaultTolRank;
};

// Dense row-major complex matrix. Value-semantic and unapologetically O(n^3);
// nothing in this library goes past a couple hundred rows.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
    // Columns must share a common length, which becomes the row count.
    static ComplexMatrix from_columns(const std::vector<ComplexVector>& columns, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const Complex* data() const { return data_.data(); }
    Complex* data() { return data_.data(); }

    ComplexMatrix adjoint() const;
    ComplexVector column(std::size_t c) const;
    ComplexVector apply(const ComplexVector& x) const; // matrix * x

    double max_abs() const;
    bool all_finite() const;
    bool same_shape(const ComplexMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scalar, const ComplexMatrix& m);

// Largest entrywise |a - b|; shapes must match.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// A Hermitian positive-semidefinite inner-product form. The constructor
// rejects matrices that are not Hermitian within tol (relative to the largest
// entry) or whose smallest eigenvalue drops below -tol times the largest
// eigenvalue magnitude (below -tol for the zero matrix).
class HermitianForm {
public:
    explicit HermitianForm(ComplexMatrix matrix, double tol = kDefaultTolVal);

    const ComplexMatrix& matrix() const { return mat_; }
    std::size_t dim() const { return mat_.rows(); }

    // x^H G y, conjugate-linear in the first argument.
    Complex inner(const ComplexVector& x, const ComplexVector& y) const;

private:
    ComplexMatrix mat_;
};

// Ascending eigenvalues of the Hermitian part (m + m^H)/2.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

// Number of eigenvalues above tol * max(1, largest eigenvalue).
std::size_t hermitian_rank(const HermitianForm& form, double tol);
std::size_t hermitian_rank(const ComplexMatrix& m, double tol);

// Orthonormalizes `vectors` against `form` by modified Gram-Schmidt, pivoting
// on the largest residual norm (ties resolved toward the lowest input index).
// Returns exactly rank-many vectors, where the rank is that of the input Gram
// matrix under the form at threshold tol; the output Gram is the identity
// within 10*tol and the inputs lie in the output span modulo the form's null
// space.
std::vector<ComplexVector> form_orthonormalize(const std::vector<ComplexVector>& vectors,
                                               const HermitianForm& form, double tol);

// Extends an already-orthonormal `onset` (returned unmodified, as a prefix) to
// an orthonormal basis of span(onset + spanning) modulo the form's null space.
// Throws PresentationError if the onset fails its orthonormality check at tol.
std::vector<ComplexVector> orthonormal_extension(const std::vector<ComplexVector>& onset,
                                                 const std::vector<ComplexVector>& spanning,
                                                 const HermitianForm& form, double tol);

// Inverse with a residual check: ||m * inverse - I||_max must come out below
// 10*tol and the condition estimate below 1/tol, otherwise SingularError.
ComplexMatrix invert(const ComplexMatrix& m, double tol);

// True when `invert` would succeed (square, condition-bounded at tol).
bool is_invertible(const ComplexMatrix& m, double tol);

} // namespace graphcorr
