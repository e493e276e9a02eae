#pragma once

// The Maurer-Cartan matrix of a Wronskian, R = W' W^-1, and its left
// counterpart L = W^-1 W'. R is invariant under constant basis changes and,
// up to rounding, is the companion matrix of the recovered ODE: superdiagonal
// ones plus a last row that lists p in reverse. Both matrices are formed by
// linear solves against one LU of W, never by explicit inversion.

#include "wron/matrix.hpp"
#include "wron/wronskian.hpp"

#include <vector>

namespace wron {

Matrix compute_R(const WronskianData& d); // solves R W = W'
Matrix compute_L(const WronskianData& d); // solves W L = W'

struct CompanionSplit {
    Matrix shift;     // constant superdiagonal-ones matrix (nilpotent)
    Matrix last_row;  // R - shift
    // Largest |entry| of last_row outside its final row; zero exactly when R
    // is a true companion matrix.
    double off_companion_residual = 0.0;
};

CompanionSplit companion_split(const Matrix& r);

/// Reads p off the last row of R: p_hat_i = R(n, n+1-i), 1-indexed.
std::vector<double> extract_p_hat(const Matrix& r);

/// Juxtaposes the six quantities of the determinant chain around Abel's
/// identity. det(W') differs from (det W)' in general, while
/// trace R = p_1 = w'/w and det R = (-1)^(n+1) p_n hold; the record lets a
/// report show both facts side by side. Coefficients come from the Cramer
/// route.
struct AbelProbe {
    double det_Wprime = 0.0;
    double ddet_W = 0.0; // w', exact via det_jet
    double trace_R = 0.0;
    double det_R = 0.0;
    double p1 = 0.0;
    double pn = 0.0;
};

AbelProbe abel_probe(const WronskianData& d, const Matrix& r);

struct CartanData {
    Matrix R, L;
    std::vector<double> q_desc;   // from faddeev_leverrier(R)
    std::vector<double> q_desc_L; // from faddeev_leverrier(L)
    CompanionSplit split;
    std::vector<double> p_hat;
    Matrix cayley_residual; // M_n + c_n I for R
};

CartanData build_cartan(const WronskianData& d);

} // namespace wron
