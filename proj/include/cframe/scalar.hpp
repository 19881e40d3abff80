#pragma once

#include <cmath>
#include <complex>
#include <type_traits>

namespace cframe {

using Complex = std::complex<double>;

enum class Field { real, complex };

template <class T>
inline constexpr bool is_complex_v = std::is_same_v<T, Complex>;

template <class T>
concept ScalarType = std::is_same_v<T, double> || std::is_same_v<T, Complex>;

template <ScalarType T>
constexpr Field field_of() {
    return is_complex_v<T> ? Field::complex : Field::real;
}

inline double conj_s(double x) { return x; }
inline Complex conj_s(const Complex& z) { return std::conj(z); }

inline double real_s(double x) { return x; }
inline double real_s(const Complex& z) { return z.real(); }

inline double imag_s(double) { return 0.0; }
inline double imag_s(const Complex& z) { return z.imag(); }

// |x|^2 without the square root
inline double abs2(double x) { return x * x; }
inline double abs2(const Complex& z) { return std::norm(z); }

} // namespace cframe
