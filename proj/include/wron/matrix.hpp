#pragma once

// Small dense real matrices (n <= 8 for the square kernels): LU with partial
// pivoting, determinant, multi-RHS solve, trace, Faddeev-LeVerrier
// characteristic polynomial, a one-norm condition estimate, and a
// division-free determinant over jet-valued matrices.

#include "wron/errors.hpp"
#include "wron/jet.hpp"

#include <initializer_list>
#include <vector>

namespace wron {

class SingularMatrixError : public Error {
public:
    explicit SingularMatrixError(const std::string& what) : Error(what) {}
};

class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(what) {}
};

class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols); // zero-filled
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    Matrix transposed() const;

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;
    friend Matrix operator*(double s, const Matrix& m);

    bool operator==(const Matrix& o) const = default;

    double max_abs() const;      // max |a_ij|
    double norm_one() const;     // max column abs sum
    double row_norm2(int i) const;

private:
    int rows_, cols_;
    std::vector<double> a_;
};

struct LuFactorization {
    // Pivot magnitudes below kSingularThreshold * max|A| flag singularity;
    // singularity is a state, not an exception.
    static constexpr double kSingularThreshold = 1e-12;

    Matrix lu;             // L below the diagonal (unit), U on and above
    std::vector<int> piv;  // row chosen as pivot at each step
    double parity = 1.0;   // sign of the row permutation
    bool singular = false;

    double determinant() const;
    Matrix solve(const Matrix& rhs) const;            // A X = rhs
    Matrix solve_transposed(const Matrix& rhs) const; // A^T X = rhs
};

LuFactorization lu_factor(const Matrix& a);

double det(const Matrix& a);
Matrix solve(const Matrix& a, const Matrix& b);
double trace(const Matrix& a);
double condition_estimate(const Matrix& a); // one-norm kappa; +inf if singular

/// chi(lambda) = lambda^n + c_1 lambda^(n-1) + ... + c_n, monic.
/// q_desc_j = -c_j, so Cayley-Hamilton reads
/// A^n = q_desc_1 A^(n-1) + ... + q_desc_n I.
struct CharPoly {
    int n = 0;
    std::vector<double> c;
    std::vector<double> q_desc;
};

struct FaddeevResult {
    CharPoly poly;
    Matrix cayley_residual; // M_n + c_n I; zero in exact arithmetic
};

FaddeevResult faddeev_leverrier(const Matrix& a);

/// Determinant of a jet-valued matrix by Laplace expansion along the first
/// column, division-free: jets have zero divisors, so pivoted elimination
/// over the jet ring is unreliable. n <= 8.
Jet det_jet(const std::vector<std::vector<Jet>>& a);

} // namespace wron
