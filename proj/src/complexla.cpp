#include "graphcorr/complexla.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

namespace graphcorr {

namespace {

using EigenRowMajor =
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
    return Eigen::Map<const EigenRowMajor>(m.data(), static_cast<Eigen::Index>(m.rows()),
                                           static_cast<Eigen::Index>(m.cols()));
}

ComplexMatrix from_eigen(const Eigen::MatrixXcd& m) {
    ComplexMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t j = 0; j < out.cols(); ++j)
            out(i, j) = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return out;
}

void require_finite(const ComplexMatrix& m, const char* what) {
    if (!m.all_finite()) throw ShapeError(std::string(what) + ": non-finite entries");
}

void require_vector_dim(const ComplexVector& v, std::size_t n, const char* what) {
    if (v.size() != n)
        throw ShapeError(std::string(what) + ": vector length " + std::to_string(v.size()) +
                         ", expected " + std::to_string(n));
    for (const auto& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw ShapeError(std::string(what) + ": non-finite entries");
}

double inf_norm(const ComplexMatrix& m) {
    double worst = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) row += std::abs(m(i, j));
        worst = std::max(worst, row);
    }
    return worst;
}

} // namespace

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    ComplexMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw ShapeError("from_rows: ragged rows");
        std::size_t j = 0;
        for (const auto& z : row) m(i, j++) = z;
        ++i;
    }
    return m;
}

ComplexMatrix ComplexMatrix::from_columns(const std::vector<ComplexVector>& columns,
                                          std::size_t rows) {
    ComplexMatrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != rows) throw ShapeError("from_columns: ragged columns");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

ComplexVector ComplexMatrix::column(std::size_t c) const {
    ComplexVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
    return v;
}

ComplexVector ComplexMatrix::apply(const ComplexVector& x) const {
    if (x.size() != cols_) throw ShapeError("apply: vector length mismatch");
    ComplexVector y(rows_, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < rows_; ++i) {
        Complex acc{0.0, 0.0};
        for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

double ComplexMatrix::max_abs() const {
    double worst = 0.0;
    for (const auto& z : data_) worst = std::max(worst, std::abs(z));
    return worst;
}

bool ComplexMatrix::all_finite() const {
    for (const auto& z : data_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.same_shape(b)) throw ShapeError("matrix addition: shape mismatch");
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
    return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.same_shape(b)) throw ShapeError("matrix subtraction: shape mismatch");
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
    return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw ShapeError("matrix product: shape mismatch");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Complex acc{0.0, 0.0};
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            out(i, j) = acc;
        }
    return out;
}

ComplexMatrix operator*(Complex scalar, const ComplexMatrix& m) {
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = scalar * m(i, j);
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.same_shape(b)) throw ShapeError("max_abs_diff: shape mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    return worst;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw ShapeError("hermitian_eigenvalues: matrix not square");
    if (m.rows() == 0) return {};
    require_finite(m, "hermitian_eigenvalues");
    Eigen::MatrixXcd a = to_eigen(m);
    Eigen::MatrixXcd h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    std::vector<double> out(static_cast<std::size_t>(solver.eigenvalues().size()));
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    return out;
}

HermitianForm::HermitianForm(ComplexMatrix matrix, double tol) : mat_(std::move(matrix)) {
    if (mat_.rows() != mat_.cols()) throw ShapeError("HermitianForm: matrix not square");
    require_finite(mat_, "HermitianForm");
    const double asym = max_abs_diff(mat_, mat_.adjoint());
    if (asym > tol * std::max(1.0, mat_.max_abs()))
        throw PresentationError("HermitianForm: matrix not Hermitian (residual " +
                                std::to_string(asym) + ")");
    const auto eig = hermitian_eigenvalues(mat_);
    if (!eig.empty()) {
        const double lo = eig.front();
        const double hi_mag = std::max(std::abs(eig.front()), std::abs(eig.back()));
        const double scale = hi_mag == 0.0 ? 1.0 : hi_mag;
        if (lo < -tol * scale)
            throw PresentationError("HermitianForm: matrix not positive semidefinite (lambda_min " +
                                    std::to_string(lo) + ")");
    }
}

Complex HermitianForm::inner(const ComplexVector& x, const ComplexVector& y) const {
    require_vector_dim(x, dim(), "HermitianForm::inner");
    require_vector_dim(y, dim(), "HermitianForm::inner");
    const ComplexVector gy = mat_.apply(y);
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < x.size(); ++k) acc += std::conj(x[k]) * gy[k];
    return acc;
}

std::size_t hermitian_rank(const ComplexMatrix& m, double tol) {
    if (tol <= 0.0) throw ShapeError("hermitian_rank: tol must be positive");
    const auto eig = hermitian_eigenvalues(m);
    if (eig.empty()) return 0;
    const double cutoff = tol * std::max(1.0, eig.back());
    std::size_t count = 0;
    for (double v : eig)
        if (v > cutoff) ++count;
    return count;
}

std::size_t hermitian_rank(const HermitianForm& form, double tol) {
    return hermitian_rank(form.matrix(), tol);
}

namespace {

// Gram matrix of the vectors under the form, entry (i, j) = <v_i, v_j>.
ComplexMatrix gram_of(const std::vector<ComplexVector>& vectors, const HermitianForm& form) {
    ComplexMatrix g(vectors.size(), vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = 0; j < vectors.size(); ++j) g(i, j) = form.inner(vectors[i], vectors[j]);
    return g;
}

void subtract_scaled(ComplexVector& y, Complex a, const ComplexVector& x) {
    for (std::size_t k = 0; k < y.size(); ++k) y[k] -= a * x[k];
}

// Pivoted modified Gram-Schmidt against the form. Appends exactly `want`
// vectors to `basis`, consuming residual mass from `pool`. The pool entries
// are assumed already orthogonal to the existing basis.
void mgs_pick(std::vector<ComplexVector>& basis, std::vector<ComplexVector>& pool,
              const HermitianForm& form, std::size_t want) {
    std::vector<bool> used(pool.size(), false);
    std::vector<double> norm2(pool.size(), 0.0);
    for (std::size_t j = 0; j < pool.size(); ++j)
        norm2[j] = std::max(0.0, form.inner(pool[j], pool[j]).real());

    for (std::size_t step = 0; step < want; ++step) {
        std::size_t pivot = pool.size();
        double best = -1.0;
        for (std::size_t j = 0; j < pool.size(); ++j) {
            if (!used[j] && norm2[j] > best) {
                best = norm2[j];
                pivot = j;
            }
        }
        if (pivot == pool.size() || best <= 0.0)
            throw SingularError("orthonormalization: residual mass exhausted after " +
                                std::to_string(basis.size()) + " vectors, " +
                                std::to_string(want - step) + " more required");
        used[pivot] = true;

        // One re-orthogonalization pass before normalizing sharpens the
        // output Gram to machine precision.
        ComplexVector b = pool[pivot];
        for (const auto& prev : basis) subtract_scaled(b, form.inner(prev, b), prev);
        const double n2 = form.inner(b, b).real();
        if (!(n2 > 0.0))
            throw SingularError("orthonormalization: pivot norm vanished");
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& z : b) z *= inv;
        basis.push_back(b);

        for (std::size_t j = 0; j < pool.size(); ++j) {
            if (used[j]) continue;
            subtract_scaled(pool[j], form.inner(b, pool[j]), b);
            norm2[j] = std::max(0.0, form.inner(pool[j], pool[j]).real());
        }
    }
}

} // namespace

std::vector<ComplexVector> form_orthonormalize(const std::vector<ComplexVector>& vectors,
                                               const HermitianForm& form, double tol) {
    if (tol <= 0.0) throw ShapeError("form_orthonormalize: tol must be positive");
    for (const auto& v : vectors) require_vector_dim(v, form.dim(), "form_orthonormalize");

    const std::size_t rank = hermitian_rank(gram_of(vectors, form), tol);
    std::vector<ComplexVector> basis;
    basis.reserve(rank);
    std::vector<ComplexVector> pool = vectors;
    mgs_pick(basis, pool, form, rank);
    return basis;
}

std::vector<ComplexVector> orthonormal_extension(const std::vector<ComplexVector>& onset,
                                                 const std::vector<ComplexVector>& spanning,
                                                 const HermitianForm& form, double tol) {
    if (tol <= 0.0) throw ShapeError("orthonormal_extension: tol must be positive");
    for (const auto& v : onset) require_vector_dim(v, form.dim(), "orthonormal_extension");
    for (const auto& v : spanning) require_vector_dim(v, form.dim(), "orthonormal_extension");

    for (std::size_t i = 0; i < onset.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const Complex g = form.inner(onset[i], onset[j]);
            const double dev = std::abs(g - (i == j ? Complex{1.0, 0.0} : Complex{0.0, 0.0}));
            if (dev > tol)
                throw PresentationError("orthonormal_extension: onset fails orthonormality at (" +
                                        std::to_string(i) + "," + std::to_string(j) +
                                        "), residual " + std::to_string(dev));
        }

    std::vector<ComplexVector> combined = onset;
    combined.insert(combined.end(), spanning.begin(), spanning.end());
    const std::size_t total = hermitian_rank(gram_of(combined, form), tol);
    if (total < onset.size()) return onset;

    std::vector<ComplexVector> basis = onset;
    std::vector<ComplexVector> pool = spanning;
    for (auto& p : pool)
        for (const auto& b : onset) subtract_scaled(p, form.inner(b, p), b);
    mgs_pick(basis, pool, form, total - onset.size());
    return basis;
}

ComplexMatrix invert(const ComplexMatrix& m, double tol) {
    if (tol <= 0.0) throw ShapeError("invert: tol must be positive");
    if (m.rows() != m.cols()) throw ShapeError("invert: matrix not square");
    if (m.rows() == 0) throw ShapeError("invert: empty matrix");
    require_finite(m, "invert");

    Eigen::FullPivLU<Eigen::MatrixXcd> lu(to_eigen(m));
    if (!lu.isInvertible()) throw SingularError("invert: matrix singular at tolerance");
    const ComplexMatrix inv = from_eigen(lu.inverse());
    if (!inv.all_finite()) throw SingularError("invert: inverse not finite");

    const double cond_est = inf_norm(m) * inf_norm(inv);
    if (cond_est >= 1.0 / tol)
        throw SingularError("invert: condition estimate " + std::to_string(cond_est) +
                            " exceeds 1/tol");
    const double residual = max_abs_diff(m * inv, ComplexMatrix::identity(m.rows()));
    if (residual > 10.0 * tol)
        throw SingularError("invert: residual " + std::to_string(residual) + " exceeds 10*tol");
    return inv;
}

bool is_invertible(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols() || m.rows() == 0 || !m.all_finite()) return false;
    try {
        invert(m, tol);
        return true;
    } catch (const SingularError&) {
        return false;
    }
}

} // namespace graphcorr
