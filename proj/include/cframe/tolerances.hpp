#pragma once

#include <algorithm>

#include "cframe/matrix.hpp"

namespace cframe::tol {

// Scale-free constants. Functions below fold in the operand scale where a
// tolerance is relative to it.
inline constexpr double eig_tol      = 1e-9;
inline constexpr double power_tol    = 1e-8;
inline constexpr double quad_tol     = 1e-12;
inline constexpr double tight_tol    = 1e-8;
inline constexpr double recon_tol    = 1e-8;
inline constexpr double decomp_tol   = 1e-7;
inline constexpr double normal_tol   = 1e-8;
inline constexpr double proj_tol     = 1e-8;
inline constexpr double gram_tol     = 1e-8;
inline constexpr double transfer_tol = 1e-8;
inline constexpr double trace_tol    = 1e-8;
inline constexpr double equiv_tol    = 1e-8;

template <ScalarType T>
double hermitian_tol(const Matrix<T>& m) {
    return 1e-10 * std::max(1.0, m.max_norm());
}

template <ScalarType T>
double psd_tol(const Matrix<T>& m) {
    return 1e-10 * std::max(1.0, m.max_norm());
}

template <ScalarType T>
double singular_tol(const Matrix<T>& m) {
    return 1e-12 * m.max_norm();
}

// Relative rank test on the upper frame bound.
inline double frame_tol(double upper_bound) { return 1e-10 * upper_bound; }

// Commutation test scaled by the product of the operand norms.
template <ScalarType T>
double commute_tol(const Matrix<T>& a, const Matrix<T>& b) {
    return 1e-9 * std::max(1.0, a.max_norm() * b.max_norm());
}

} // namespace cframe::tol
