#include "wron/matrix.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace wron {

Matrix::Matrix(int rows, int cols)
    : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
    a_.reserve(static_cast<size_t>(rows_) * cols_);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != cols_)
            throw DimensionError("ragged initializer for Matrix");
        a_.insert(a_.end(), row.begin(), row.end());
    }
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transposed() const {
    Matrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix shape mismatch in +");
    Matrix m = *this;
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] += o.a_[k];
    return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix shape mismatch in -");
    Matrix m = *this;
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] -= o.a_[k];
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw DimensionError("matrix shape mismatch in *");
    Matrix m(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const double aik = (*this)(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < o.cols_; ++j) m(i, j) += aik * o(k, j);
        }
    return m;
}

Matrix operator*(double s, const Matrix& m) {
    Matrix r = m;
    for (double& x : r.a_) x *= s;
    return r;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double x : a_) m = std::max(m, std::fabs(x));
    return m;
}

double Matrix::norm_one() const {
    double m = 0.0;
    for (int j = 0; j < cols_; ++j) {
        double s = 0.0;
        for (int i = 0; i < rows_; ++i) s += std::fabs((*this)(i, j));
        m = std::max(m, s);
    }
    return m;
}

double Matrix::row_norm2(int i) const {
    double s = 0.0;
    for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * (*this)(i, j);
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// LU with partial pivoting
// ---------------------------------------------------------------------------

LuFactorization lu_factor(const Matrix& a) {
    if (!a.square()) throw DimensionError("lu_factor requires a square matrix");
    const int n = a.rows();
    LuFactorization f;
    f.lu = a;
    f.piv.resize(static_cast<size_t>(n));
    const double threshold = LuFactorization::kSingularThreshold * a.max_abs();

    for (int k = 0; k < n; ++k) {
        int pivot = k;
        double best = std::fabs(f.lu(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::fabs(f.lu(i, k));
            if (v > best) {
                best = v;
                pivot = i;
            }
        }
        f.piv[static_cast<size_t>(k)] = pivot;
        if (pivot != k) {
            for (int j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(pivot, j));
            f.parity = -f.parity;
        }
        if (best <= threshold) {
            f.singular = true;
            continue;
        }
        const double inv = 1.0 / f.lu(k, k);
        for (int i = k + 1; i < n; ++i) {
            const double m = f.lu(i, k) * inv;
            f.lu(i, k) = m;
            for (int j = k + 1; j < n; ++j) f.lu(i, j) -= m * f.lu(k, j);
        }
    }
    return f;
}

double LuFactorization::determinant() const {
    if (singular) return 0.0;
    double d = parity;
    for (int i = 0; i < lu.rows(); ++i) d *= lu(i, i);
    return d;
}

Matrix LuFactorization::solve(const Matrix& rhs) const {
    if (singular) throw SingularMatrixError("solve: singular matrix");
    const int n = lu.rows();
    if (rhs.rows() != n) throw DimensionError("solve: rhs row count mismatch");
    Matrix x = rhs;
    // apply the recorded row swaps
    for (int k = 0; k < n; ++k) {
        const int p = piv[static_cast<size_t>(k)];
        if (p != k)
            for (int j = 0; j < x.cols(); ++j) std::swap(x(k, j), x(p, j));
    }
    for (int j = 0; j < x.cols(); ++j) {
        for (int i = 1; i < n; ++i) { // L y = Pb, unit lower
            double s = x(i, j);
            for (int k = 0; k < i; ++k) s -= lu(i, k) * x(k, j);
            x(i, j) = s;
        }
        for (int i = n - 1; i >= 0; --i) { // U x = y
            double s = x(i, j);
            for (int k = i + 1; k < n; ++k) s -= lu(i, k) * x(k, j);
            x(i, j) = s / lu(i, i);
        }
    }
    return x;
}

Matrix LuFactorization::solve_transposed(const Matrix& rhs) const {
    if (singular) throw SingularMatrixError("solve_transposed: singular matrix");
    const int n = lu.rows();
    if (rhs.rows() != n) throw DimensionError("solve_transposed: rhs row count mismatch");
    // A^T = U^T L^T P, so solve U^T y = b, L^T z = y, then undo the swaps.
    Matrix x = rhs;
    for (int j = 0; j < x.cols(); ++j) {
        for (int i = 0; i < n; ++i) { // U^T y = b, lower triangular
            double s = x(i, j);
            for (int k = 0; k < i; ++k) s -= lu(k, i) * x(k, j);
            x(i, j) = s / lu(i, i);
        }
        for (int i = n - 1; i >= 0; --i) { // L^T z = y, unit upper triangular
            double s = x(i, j);
            for (int k = i + 1; k < n; ++k) s -= lu(k, i) * x(k, j);
            x(i, j) = s;
        }
    }
    for (int k = n - 1; k >= 0; --k) {
        const int p = piv[static_cast<size_t>(k)];
        if (p != k)
            for (int j = 0; j < x.cols(); ++j) std::swap(x(k, j), x(p, j));
    }
    return x;
}

double det(const Matrix& a) { return lu_factor(a).determinant(); }

Matrix solve(const Matrix& a, const Matrix& b) { return lu_factor(a).solve(b); }

double trace(const Matrix& a) {
    if (!a.square()) throw DimensionError("trace requires a square matrix");
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i) s += a(i, i);
    return s;
}

double condition_estimate(const Matrix& a) {
    if (!a.square()) throw DimensionError("condition_estimate requires a square matrix");
    LuFactorization f = lu_factor(a);
    if (f.singular) return std::numeric_limits<double>::infinity();
    const Matrix inv = f.solve(Matrix::identity(a.rows()));
    return a.norm_one() * inv.norm_one();
}

FaddeevResult faddeev_leverrier(const Matrix& a) {
    if (!a.square()) throw DimensionError("faddeev_leverrier requires a square matrix");
    const int n = a.rows();
    if (n > 8) throw DimensionError("faddeev_leverrier supports n <= 8");
    FaddeevResult r;
    r.poly.n = n;
    r.poly.c.resize(static_cast<size_t>(n));
    Matrix m = a;
    double c = -trace(m);
    r.poly.c[0] = c;
    for (int k = 2; k <= n; ++k) {
        Matrix shifted = m;
        for (int i = 0; i < n; ++i) shifted(i, i) += c;
        m = a * shifted;
        c = -trace(m) / k;
        r.poly.c[static_cast<size_t>(k - 1)] = c;
    }
    r.poly.q_desc.resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) r.poly.q_desc[static_cast<size_t>(j)] = -r.poly.c[static_cast<size_t>(j)];
    r.cayley_residual = m;
    for (int i = 0; i < n; ++i) r.cayley_residual(i, i) += r.poly.c[static_cast<size_t>(n - 1)];
    return r;
}

// ---------------------------------------------------------------------------
// Jet determinant
// ---------------------------------------------------------------------------

namespace {

// Expansion along column `col` over the rows still in `rows`.
Jet det_jet_rec(const std::vector<std::vector<Jet>>& a, std::vector<int>& rows, int col) {
    if (rows.size() == 1) return a[static_cast<size_t>(rows[0])][static_cast<size_t>(col)];
    const Jet& probe = a[static_cast<size_t>(rows[0])][static_cast<size_t>(col)];
    Jet acc = Jet::constant(0.0, probe.basepoint(), probe.order());
    for (size_t idx = 0; idx < rows.size(); ++idx) {
        const int r = rows[idx];
        std::vector<int> rest;
        rest.reserve(rows.size() - 1);
        for (size_t i = 0; i < rows.size(); ++i)
            if (i != idx) rest.push_back(rows[i]);
        Jet term = a[static_cast<size_t>(r)][static_cast<size_t>(col)] * det_jet_rec(a, rest, col + 1);
        acc = (idx % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

} // namespace

Jet det_jet(const std::vector<std::vector<Jet>>& a) {
    const int n = static_cast<int>(a.size());
    if (n == 0) throw DimensionError("det_jet: empty matrix");
    if (n > 8) throw DimensionError("det_jet supports n <= 8");
    for (const auto& row : a)
        if (static_cast<int>(row.size()) != n) throw DimensionError("det_jet: non-square matrix");
    std::vector<int> rows(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) rows[static_cast<size_t>(i)] = i;
    return det_jet_rec(a, rows, 0);
}

} // namespace wron
