#ifndef VIBENC_CORE_HPP
#define VIBENC_CORE_HPP

// Shared error types, numeric constants, and small helpers used across the
// library.  Everything is header-only; all functions are inline or templates.

#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>

namespace vibenc {

// Raised when a request is malformed (bad sizes, inconsistent options,
// out-of-range indices).  Maps to CLI exit code 1.
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Raised when a numerical postcondition fails (loss of Hermiticity,
// eigensolver non-convergence, normalization drift).  Maps to CLI exit
// code 2.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using complex_t = std::complex<double>;

namespace constants {
// Energy scale attached to the dimensionless oscillator: one quantum of the
// reference harmonic mode expressed in wavenumbers.
inline constexpr double default_omega_cm = 2000.0;
// CODATA hartree-to-wavenumber conversion, for callers that define the mode
// quantum in atomic units instead of round wavenumber figures.
inline constexpr double hartree_in_cm = 219474.6313632;
// Coefficients smaller than this (dimensionless) are dropped when collecting
// ladder polynomials.
inline constexpr double ladder_collect_tol = 1e-12;
// Coefficients smaller than this (dimensionless) are dropped when collecting
// Pauli sums; applied after every product.
inline constexpr double pauli_collect_tol = 1e-10;
}  // namespace constants

namespace detail {

template <class... Args>
std::string cat(Args&&... args) {
    std::ostringstream os;
    (os << ... << args);
    return os.str();
}

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw config_error(msg);
}

inline void check_numeric(bool ok, const std::string& msg) {
    if (!ok) throw numeric_error(msg);
}

// i^e for integer e (e taken mod 4, negative exponents allowed).
inline complex_t ipow(long long e) {
    switch (((e % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

}  // namespace detail
}  // namespace vibenc

#endif  // VIBENC_CORE_HPP
