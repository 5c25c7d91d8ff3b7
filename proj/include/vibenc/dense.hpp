#ifndef VIBENC_DENSE_HPP
#define VIBENC_DENSE_HPP

// Finite M-dimensional matrix representations of ladder words and whole
// polynomials over the truncated number basis |0..M-1>, with two assembly
// modes:
//
//   TruncatedFactors — each symbol becomes its MxM restriction and the word
//     is the plain product of those restrictions.  Faithful to what a finite
//     register actually implements, including its boundary artifacts.
//   ExactProjection — the word is evaluated in a basis enlarged by the word
//     degree and then cut back to the top-left MxM block.  Since every factor
//     moves the occupation by at most one, the enlargement is provably big
//     enough, which makes this the exact P_M (word) P_M oracle.
//
// The difference between the two modes for non-normal-ordered words is the
// boundary defect measured by commutator_defect below.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "vibenc/core.hpp"
#include "vibenc/ladder.hpp"

namespace vibenc {

class DenseOperator {
  public:
    DenseOperator() : dim_(0) {}
    explicit DenseOperator(int dim) : dim_(dim), a_(std::size_t(dim) * dim) {
        detail::require(dim >= 1, "DenseOperator: dimension must be at least 1");
    }

    static DenseOperator identity(int dim) {
        DenseOperator m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const { return dim_; }
    complex_t& operator()(int r, int c) { return a_[std::size_t(r) * dim_ + c]; }
    const complex_t& operator()(int r, int c) const { return a_[std::size_t(r) * dim_ + c]; }

    DenseOperator& operator+=(const DenseOperator& o) {
        detail::require(dim_ == o.dim_, "DenseOperator: size mismatch in +=");
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    DenseOperator& operator-=(const DenseOperator& o) {
        detail::require(dim_ == o.dim_, "DenseOperator: size mismatch in -=");
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    DenseOperator& operator*=(complex_t s) {
        for (auto& v : a_) v *= s;
        return *this;
    }

    friend DenseOperator operator+(DenseOperator a, const DenseOperator& b) { return a += b; }
    friend DenseOperator operator-(DenseOperator a, const DenseOperator& b) { return a -= b; }
    friend DenseOperator operator*(complex_t s, DenseOperator a) { return a *= s; }

    friend DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
        detail::require(a.dim_ == b.dim_, "DenseOperator: size mismatch in *");
        const int n = a.dim_;
        DenseOperator out(n);
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) {
                complex_t aik = a(i, k);
                if (aik == complex_t{}) continue;
                for (int j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
            }
        }
        return out;
    }

    DenseOperator adjoint() const {
        DenseOperator out(dim_);
        for (int r = 0; r < dim_; ++r)
            for (int c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
        return out;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    double max_abs_imag() const {
        double m = 0.0;
        for (const auto& v : a_) m = std::max(m, std::abs(v.imag()));
        return m;
    }

    // Largest elementwise deviation from the conjugate transpose.
    double hermiticity_defect() const {
        double m = 0.0;
        for (int r = 0; r < dim_; ++r)
            for (int c = r; c < dim_; ++c)
                m = std::max(m, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        return m;
    }

    bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }

    // Largest elementwise deviation from another operator.
    double max_abs_diff(const DenseOperator& o) const {
        detail::require(dim_ == o.dim_, "DenseOperator: size mismatch in max_abs_diff");
        double m = 0.0;
        for (std::size_t i = 0; i < a_.size(); ++i) m = std::max(m, std::abs(a_[i] - o.a_[i]));
        return m;
    }

    // Top-left block of the given size.
    DenseOperator top_left_block(int size) const {
        detail::require(size >= 1 && size <= dim_, "DenseOperator: bad block size");
        DenseOperator out(size);
        for (int r = 0; r < size; ++r)
            for (int c = 0; c < size; ++c) out(r, c) = (*this)(r, c);
        return out;
    }

  private:
    int dim_;
    std::vector<complex_t> a_;
};

enum class AssemblyMode { TruncatedFactors, ExactProjection };

// Restricted creation operator b†_M: sqrt(r) at entry (r, r-1), zero
// elsewhere.  The annihilator is its transpose.
inline DenseOperator ladder_matrix(int M) {
    detail::require(M >= 1, "ladder_matrix: basis size must be at least 1");
    DenseOperator m(M);
    for (int r = 1; r < M; ++r) m(r, r - 1) = std::sqrt(double(r));
    return m;
}

namespace detail {

// Left-multiply a dense accumulator by the restricted creator/annihilator in
// O(M^2), exploiting their single-subdiagonal structure.
inline void apply_creation_left(DenseOperator& a) {
    const int n = a.dim();
    for (int r = n - 1; r >= 1; --r) {
        double w = std::sqrt(double(r));
        for (int c = 0; c < n; ++c) a(r, c) = w * a(r - 1, c);
    }
    for (int c = 0; c < n; ++c) a(0, c) = 0.0;
}

inline void apply_annihilation_left(DenseOperator& a) {
    const int n = a.dim();
    for (int r = 0; r + 1 < n; ++r) {
        double w = std::sqrt(double(r + 1));
        for (int c = 0; c < n; ++c) a(r, c) = w * a(r + 1, c);
    }
    for (int c = 0; c < n; ++c) a(n - 1, c) = 0.0;
}

inline DenseOperator word_product(const LadderWord& word, int size) {
    DenseOperator acc = DenseOperator::identity(size);
    // Apply factors right to left so the accumulator is multiplied from the
    // left by each symbol in turn.
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        if (*it == LadderOp::Create)
            apply_creation_left(acc);
        else
            apply_annihilation_left(acc);
    }
    return acc;
}

}  // namespace detail

// Matrix of a single ladder word over the truncated basis, in either mode.
inline DenseOperator word_matrix(const LadderWord& word, int M, AssemblyMode mode) {
    detail::require(M >= 1, "word_matrix: basis size must be at least 1");
    if (mode == AssemblyMode::TruncatedFactors) return detail::word_product(word, M);
    // Exact projection: evaluate in a basis enlarged by the word degree, then
    // cut the top-left block.  Each factor shifts occupation by at most one,
    // so degree(word) extra levels are always sufficient.
    const int big = M + degree(word);
    DenseOperator full = detail::word_product(word, big);
    return full.top_left_block(M);
}

// Coefficient-weighted sum of word matrices.  The result is checked for
// Hermiticity whenever the input polynomial is Hermitian, which covers both
// the exact-projection path and the truncated path (restricted factors of
// mutually conjugate words are still exact adjoints of each other).
inline DenseOperator assemble(const LadderPoly& poly, int M, AssemblyMode mode) {
    detail::require(M >= 1, "assemble: basis size must be at least 1");
    DenseOperator h(M);
    for (const auto& t : poly.terms()) {
        DenseOperator w = word_matrix(t.word, M, mode);
        w *= t.coeff;
        h += w;
    }
    if (is_hermitian(poly)) {
        double defect = h.hermiticity_defect();
        detail::check_numeric(defect <= 1e-12 * std::max(1.0, h.max_abs()),
                              detail::cat("assemble: Hermitian input produced defect ", defect));
    }
    return h;
}

// [b_M, b†_M] - P_M computed from the restricted matrices: equals -M at the
// last diagonal entry and zero elsewhere.
inline DenseOperator commutator_defect(int M) {
    detail::require(M >= 1, "commutator_defect: basis size must be at least 1");
    DenseOperator bdag = ladder_matrix(M);
    DenseOperator b = bdag.adjoint();
    DenseOperator defect = b * bdag - bdag * b - DenseOperator::identity(M);
    return defect;
}

// The same defect written purely with ladder operators:
//   -M (b†_M)^(M-1) (b_M)^(M-1) / (M-1)!
// The power products pile everything onto the |M-1><M-1| dyad, which the
// factorial then normalizes away.
inline DenseOperator commutator_defect_ladder_form(int M) {
    detail::require(M >= 1, "commutator_defect_ladder_form: basis size must be at least 1");
    LadderWord w;
    w.insert(w.end(), std::size_t(M) - 1, LadderOp::Create);
    w.insert(w.end(), std::size_t(M) - 1, LadderOp::Annihilate);
    DenseOperator prod = word_matrix(w, M, AssemblyMode::TruncatedFactors);
    double factorial = 1.0;
    for (int k = 2; k <= M - 1; ++k) factorial *= double(k);
    prod *= complex_t{-double(M) / factorial, 0.0};
    return prod;
}

// Exact-projection matrix of x^n or p^n, used as an independent oracle for
// assembled polynomials.  Computed from the enlarged-basis ladder matrices
// directly, not through the symbolic expansion path it is meant to check.
inline DenseOperator xp_power_oracle(char symbol, int n, int M) {
    detail::require(symbol == 'x' || symbol == 'p', "xp_power_oracle: symbol must be 'x' or 'p'");
    detail::require(n >= 0, "xp_power_oracle: power must be nonnegative");
    detail::require(M >= 1, "xp_power_oracle: basis size must be at least 1");
    const int big = M + n;
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    DenseOperator bdag = ladder_matrix(big);
    DenseOperator b = bdag.adjoint();
    DenseOperator sym(big);
    if (symbol == 'x') {
        sym = b + bdag;
        sym *= complex_t{inv_sqrt2, 0.0};
    } else {
        sym = bdag - b;
        sym *= complex_t{0.0, inv_sqrt2};
    }
    DenseOperator acc = DenseOperator::identity(big);
    for (int k = 0; k < n; ++k) acc = sym * acc;
    return acc.top_left_block(M);
}

}  // namespace vibenc

#endif  // VIBENC_DENSE_HPP
