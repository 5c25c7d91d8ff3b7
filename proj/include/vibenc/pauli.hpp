#ifndef VIBENC_PAULI_HPP
#define VIBENC_PAULI_HPP

// K-qubit Pauli-string algebra.  Each string is held as a symplectic bit
// pair (x, z): bit j-1 of x / z records an X / Z factor on qubit j, and the
// stored basis element is the HERMITIAN string
//
//     P(x, z) = i^{popcount(x & z)} X^x Z^z,
//
// whose letters read off directly as I/X/Y/Z per qubit (Y where both bits
// are set).  Products then reduce to XORs plus an exact integer phase
// counter, so no floating-point phase drift can accumulate.
//
// Qubit 1 is the LEAST significant tensor factor in to_matrix (state index
// bits are counted from the right), while printed labels write qubit 1
// leftmost; labels are presentation, matrices are ground truth.

#include <cmath>
#include <complex>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vibenc/core.hpp"
#include "vibenc/dense.hpp"

namespace vibenc {

class PauliString {
  public:
    PauliString() : x_(0), z_(0), k_(0) {}
    PauliString(std::uint32_t x, std::uint32_t z, int k) : x_(x), z_(z), k_(k) {
        detail::require(k >= 1 && k <= 31, "PauliString: qubit count out of range");
        std::uint32_t mask = (k == 31) ? 0x7fffffffu : ((1u << k) - 1u);
        detail::require((x & ~mask) == 0 && (z & ~mask) == 0,
                        "PauliString: bits beyond qubit count");
    }

    static PauliString identity(int k) { return PauliString(0, 0, k); }

    // Parse letters with qubit 1 written leftmost.
    static PauliString from_letters(const std::string& letters) {
        int k = static_cast<int>(letters.size());
        std::uint32_t x = 0, z = 0;
        for (int j = 0; j < k; ++j) {
            switch (letters[j]) {
                case 'I': break;
                case 'X': x |= (1u << j); break;
                case 'Y': x |= (1u << j); z |= (1u << j); break;
                case 'Z': z |= (1u << j); break;
                default:
                    throw config_error(detail::cat("PauliString: bad letter '", letters[j], "'"));
            }
        }
        return PauliString(x, z, k);
    }

    std::uint32_t x_bits() const { return x_; }
    std::uint32_t z_bits() const { return z_; }
    int qubits() const { return k_; }

    // Qubit 1 leftmost.
    std::string letters() const {
        std::string s(k_, 'I');
        for (int j = 0; j < k_; ++j) {
            bool bx = (x_ >> j) & 1u, bz = (z_ >> j) & 1u;
            s[j] = bx ? (bz ? 'Y' : 'X') : (bz ? 'Z' : 'I');
        }
        return s;
    }

    std::uint64_t key() const { return (std::uint64_t(x_) << 32) | z_; }

  private:
    std::uint32_t x_, z_;
    int k_;
};

class PauliSum {
  public:
    PauliSum() : k_(0) {}
    explicit PauliSum(int k) : k_(k) {
        detail::require(k >= 1 && k <= 31, "PauliSum: qubit count out of range");
    }

    static PauliSum identity(int k, complex_t coeff = {1.0, 0.0}) {
        PauliSum s(k);
        s.add_term(PauliString::identity(k), coeff);
        return s;
    }

    // Single-qubit ladder/projector building blocks embedded on K qubits.
    // sigma_minus = |1><0| = (X - iY)/2,  sigma_plus = |0><1| = (X + iY)/2,
    // proj_zero  = |0><0| = (I + Z)/2,   proj_one   = |1><1| = (I - Z)/2.
    static PauliSum sigma_minus(int qubit, int k) { return half_pair(qubit, k, true, {0.0, -0.5}); }
    static PauliSum sigma_plus(int qubit, int k) { return half_pair(qubit, k, true, {0.0, 0.5}); }
    static PauliSum proj_zero(int qubit, int k) { return half_pair(qubit, k, false, {0.5, 0.0}); }
    static PauliSum proj_one(int qubit, int k) { return half_pair(qubit, k, false, {-0.5, 0.0}); }

    int qubits() const { return k_; }
    std::size_t size() const { return terms_.size(); }
    const std::map<std::uint64_t, complex_t>& raw_terms() const { return terms_; }

    void add_term(const PauliString& s, complex_t coeff) {
        detail::require(s.qubits() == k_, "PauliSum: string length mismatch");
        terms_[s.key()] += coeff;
    }

    PauliSum& operator+=(const PauliSum& o) {
        detail::require(k_ == o.k_, "PauliSum: length mismatch in +=");
        for (const auto& [key, c] : o.terms_) terms_[key] += c;
        return *this;
    }

    PauliSum& operator*=(complex_t s) {
        for (auto& [key, c] : terms_) c *= s;
        return *this;
    }

    // Drop terms below the collection tolerance.
    void collect(double tol = constants::pauli_collect_tol) {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (std::abs(it->second) < tol)
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    complex_t coefficient(const PauliString& s) const {
        auto it = terms_.find(s.key());
        return it == terms_.end() ? complex_t{} : it->second;
    }

    // Coefficients conjugated; the Hermitian string basis makes this the full
    // operator adjoint.
    PauliSum adjoint() const {
        PauliSum out(k_);
        for (const auto& [key, c] : terms_) out.terms_[key] = std::conj(c);
        return out;
    }

    double one_norm() const {
        double s = 0.0;
        for (const auto& [key, c] : terms_) s += std::abs(c);
        return s;
    }

    double max_abs_imag() const {
        double m = 0.0;
        for (const auto& [key, c] : terms_) m = std::max(m, std::abs(c.imag()));
        return m;
    }

    double max_abs_diff(const PauliSum& o) const {
        detail::require(k_ == o.k_, "PauliSum: length mismatch in max_abs_diff");
        double m = 0.0;
        for (const auto& [key, c] : terms_) {
            auto it = o.terms_.find(key);
            complex_t oc = it == o.terms_.end() ? complex_t{} : it->second;
            m = std::max(m, std::abs(c - oc));
        }
        for (const auto& [key, c] : o.terms_)
            if (terms_.find(key) == terms_.end()) m = std::max(m, std::abs(c));
        return m;
    }

    std::vector<std::pair<PauliString, complex_t>> terms() const {
        std::vector<std::pair<PauliString, complex_t>> out;
        out.reserve(terms_.size());
        for (const auto& [key, c] : terms_)
            out.emplace_back(PauliString(std::uint32_t(key >> 32), std::uint32_t(key & 0xffffffffu), k_), c);
        return out;
    }

  private:
    int k_;
    // Keyed by (x, z) bits; std::map keeps iteration deterministic.
    std::map<std::uint64_t, complex_t> terms_;

    static PauliSum half_pair(int qubit, int k, bool flip, complex_t second_coeff) {
        detail::require(qubit >= 1 && qubit <= k, "PauliSum: qubit index out of range");
        PauliSum s(k);
        std::uint32_t bit = 1u << (qubit - 1);
        if (flip) {
            // (X -+ iY)/2: the Y basis string already carries the i, so the
            // second coefficient is passed as -+i/2.
            s.add_term(PauliString(bit, 0, k), {0.5, 0.0});
            s.add_term(PauliString(bit, bit, k), second_coeff);
        } else {
            // (I +- Z)/2.
            s.add_term(PauliString(0, 0, k), {0.5, 0.0});
            s.add_term(PauliString(0, bit, k), second_coeff);
        }
        return s;
    }
};

// Distributive product with exact per-term phase bookkeeping:
//   P(xa,za) P(xb,zb) = i^e P(xa^xb, za^zb),
//   e = y(a) + y(b) - y(ab) + 2 popcount(za & xb)   (mod 4),
// where y(s) = popcount(x_s & z_s).  Collected with the standard tolerance
// after accumulation.
inline PauliSum multiply(const PauliSum& a, const PauliSum& b) {
    detail::require(a.qubits() == b.qubits(), "multiply: qubit count mismatch");
    PauliSum out(a.qubits());
    const int k = a.qubits();
    for (const auto& [ka, ca] : a.raw_terms()) {
        std::uint32_t xa = std::uint32_t(ka >> 32), za = std::uint32_t(ka & 0xffffffffu);
        int ya = std::popcount(xa & za);
        for (const auto& [kb, cb] : b.raw_terms()) {
            std::uint32_t xb = std::uint32_t(kb >> 32), zb = std::uint32_t(kb & 0xffffffffu);
            int yb = std::popcount(xb & zb);
            std::uint32_t xc = xa ^ xb, zc = za ^ zb;
            int yc = std::popcount(xc & zc);
            long long e = ya + yb - yc + 2 * std::popcount(za & xb);
            out.add_term(PauliString(xc, zc, k), ca * cb * detail::ipow(e));
        }
    }
    out.collect();
    return out;
}

inline double one_norm(const PauliSum& s) { return s.one_norm(); }

// Dense matrix of the sum; dimension 2^K with qubit 1 as the least
// significant bit of the state index.  Each string contributes exactly one
// entry per column: row = col XOR x, value = i^y (-1)^{popcount(z & col)}.
inline DenseOperator to_matrix(const PauliSum& s) {
    detail::require(s.qubits() <= 12, "to_matrix: more than 12 qubits would be a 4096+ dense matrix");
    const int k = s.qubits();
    const int dim = 1 << k;
    DenseOperator m(dim);
    for (const auto& [key, c] : s.raw_terms()) {
        std::uint32_t x = std::uint32_t(key >> 32), z = std::uint32_t(key & 0xffffffffu);
        complex_t base = detail::ipow(std::popcount(x & z)) * c;
        for (int col = 0; col < dim; ++col) {
            int row = col ^ int(x);
            double sign = (std::popcount(std::uint32_t(col) & z) & 1) ? -1.0 : 1.0;
            m(row, col) += base * sign;
        }
    }
    return m;
}

}  // namespace vibenc

#endif  // VIBENC_PAULI_HPP
