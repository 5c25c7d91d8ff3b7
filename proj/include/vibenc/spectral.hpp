#ifndef VIBENC_SPECTRAL_HPP
#define VIBENC_SPECTRAL_HPP

// Dense Hermitian eigensolver plus the analysis layer: spectra, convergence
// sweeps over the basis size, eigenvector weights, tunneling splittings, and
// the 1-norm scaling fit of the encoded Hamiltonians.
//
// The eigensolver is a cyclic Jacobi iteration.  For the matrix sizes in
// play (M <= a few hundred) it is simple, dependency-free, and — importantly
// for the parity checks downstream — it never touches an exactly-zero
// off-diagonal entry, so block structure present in the input survives in
// the eigenvectors bit-for-bit.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "vibenc/core.hpp"
#include "vibenc/dense.hpp"
#include "vibenc/encoding.hpp"
#include "vibenc/ladder.hpp"
#include "vibenc/pauli.hpp"

namespace vibenc {

struct EigResult {
    std::vector<double> values;  // ascending
    DenseOperator vectors;       // columns, orthonormal, sign-fixed
};

namespace detail {

// Off-diagonal Frobenius mass; the convergence measure driven to (relative)
// zero by the sweeps.
inline double off_diagonal_frobenius(const DenseOperator& a) {
    double s = 0.0;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c)
            if (r != c) s += std::norm(a(r, c));
    return std::sqrt(s);
}

// Cyclic Jacobi on a Hermitian matrix held in complex storage.  Each target
// entry is first made real by a phase absorbed into column/row q, then
// annihilated by a real plane rotation; both transforms are accumulated into
// the eigenvector matrix v.  Entries that are exactly zero are skipped, so
// rotations never run between decoupled symmetry blocks.
inline void jacobi_hermitian(DenseOperator& a, DenseOperator& v, double rel_tol, int max_sweeps) {
    const int n = a.dim();
    const double fro = a.frobenius_norm();
    if (fro == 0.0) return;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_frobenius(a) <= rel_tol * fro) return;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                complex_t apq = a(p, q);
                double r = std::abs(apq);
                if (r == 0.0) continue;
                // Phase step: multiply column q by phase (and row q by its
                // conjugate) so that a(p,q) becomes real positive.
                complex_t phase = apq / r;  // a(p,q) / |a(p,q)|
                if (phase != complex_t{1.0, 0.0}) {
                    for (int i = 0; i < n; ++i) a(i, q) *= std::conj(phase);
                    for (int j = 0; j < n; ++j) a(q, j) *= phase;
                    for (int i = 0; i < n; ++i) v(i, q) *= std::conj(phase);
                }
                // Real rotation annihilating the (now real) target entry.
                double app = a(p, p).real(), aqq = a(q, q).real();
                double theta = (aqq - app) / (2.0 * r);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int i = 0; i < n; ++i) {
                    complex_t aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (int j = 0; j < n; ++j) {
                    complex_t apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj - s * aqj;
                    a(q, j) = s * apj + c * aqj;
                }
                a(p, q) = 0.0;  // annihilated by construction
                a(q, p) = 0.0;
                for (int i = 0; i < n; ++i) {
                    complex_t vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        }
    }
    check_numeric(off_diagonal_frobenius(a) <= rel_tol * fro,
                  "eig: Jacobi sweeps did not converge");
}

// Real-symmetric fast path, same scheme on double storage.
inline void jacobi_symmetric(std::vector<double>& a, std::vector<double>& v, int n,
                             double rel_tol, int max_sweeps) {
    auto at = [&](std::vector<double>& m, int r, int c) -> double& {
        return m[std::size_t(r) * n + c];
    };
    double fro = 0.0;
    for (double x : a) fro += x * x;
    fro = std::sqrt(fro);
    if (fro == 0.0) return;
    auto off = [&]() {
        double s = 0.0;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (r != c) s += at(a, r, c) * at(a, r, c);
        return std::sqrt(s);
    };
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off() <= rel_tol * fro) return;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = at(a, p, q);
                if (apq == 0.0) continue;
                double theta = (at(a, q, q) - at(a, p, p)) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int i = 0; i < n; ++i) {
                    double aip = at(a, i, p), aiq = at(a, i, q);
                    at(a, i, p) = c * aip - s * aiq;
                    at(a, i, q) = s * aip + c * aiq;
                }
                for (int j = 0; j < n; ++j) {
                    double apj = at(a, p, j), aqj = at(a, q, j);
                    at(a, p, j) = c * apj - s * aqj;
                    at(a, q, j) = s * apj + c * aqj;
                }
                at(a, p, q) = 0.0;
                at(a, q, p) = 0.0;
                for (int i = 0; i < n; ++i) {
                    double vip = at(v, i, p), viq = at(v, i, q);
                    at(v, i, p) = c * vip - s * viq;
                    at(v, i, q) = s * vip + c * viq;
                }
            }
        }
    }
    double residual = off();
    check_numeric(residual <= rel_tol * fro, "eig: Jacobi sweeps did not converge");
}

}  // namespace detail

// Full eigendecomposition of a Hermitian operator.  Eigenvalues ascend;
// eigenvectors are orthonormal columns with each column's
// largest-magnitude component rotated to the positive real axis.  Residual
// and orthonormality are verified before returning.
inline EigResult eig(const DenseOperator& h) {
    const int n = h.dim();
    const double scale = std::max(1.0, h.max_abs());
    detail::require(h.hermiticity_defect() <= 1e-10 * scale,
                    "eig: input is not Hermitian within tolerance");
    constexpr double rel_tol = 1e-13;  // off-diagonal Frobenius, relative
    constexpr int max_sweeps = 64;

    EigResult res;
    res.vectors = DenseOperator::identity(n);
    std::vector<double> diag(n);

    if (h.max_abs_imag() <= 1e-14 * scale) {
        // Real-symmetric fast path.
        std::vector<double> a(std::size_t(n) * n), v(std::size_t(n) * n, 0.0);
        for (int r = 0; r < n; ++r) {
            v[std::size_t(r) * n + r] = 1.0;
            for (int c = 0; c < n; ++c)
                a[std::size_t(r) * n + c] = 0.5 * (h(r, c).real() + h(c, r).real());
        }
        detail::jacobi_symmetric(a, v, n, rel_tol, max_sweeps);
        for (int i = 0; i < n; ++i) diag[i] = a[std::size_t(i) * n + i];
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) res.vectors(r, c) = v[std::size_t(r) * n + c];
    } else {
        DenseOperator a = h;
        // Symmetrize away the sub-tolerance Hermiticity defect.
        DenseOperator ah = h.adjoint();
        a += ah;
        a *= complex_t{0.5, 0.0};
        detail::jacobi_hermitian(a, res.vectors, rel_tol, max_sweeps);
        for (int i = 0; i < n; ++i) diag[i] = a(i, i).real();
    }

    // Sort ascending, permuting eigenvector columns alongside.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return diag[i] < diag[j]; });
    DenseOperator sorted(n);
    res.values.resize(n);
    for (int c = 0; c < n; ++c) {
        res.values[c] = diag[order[c]];
        for (int r = 0; r < n; ++r) sorted(r, c) = res.vectors(r, order[c]);
    }
    res.vectors = sorted;

    // Sign/phase fix: rotate each column so its largest-magnitude component
    // sits on the positive real axis.
    for (int c = 0; c < n; ++c) {
        int imax = 0;
        double best = -1.0;
        for (int r = 0; r < n; ++r) {
            double m = std::abs(res.vectors(r, c));
            if (m > best + 1e-300 && m > best) { best = m; imax = r; }
        }
        complex_t top = res.vectors(imax, c);
        if (std::abs(top) > 0.0) {
            complex_t phase = top / std::abs(top);
            if (phase != complex_t{1.0, 0.0})
                for (int r = 0; r < n; ++r) res.vectors(r, c) /= phase;
        }
    }

    // Verify the decomposition: residual per pair and orthonormality.
    const double op_scale = std::max(1.0, h.max_abs() * n);
    for (int c = 0; c < n; ++c) {
        double resid = 0.0;
        for (int r = 0; r < n; ++r) {
            complex_t hv{0.0, 0.0};
            for (int k = 0; k < n; ++k) hv += h(r, k) * res.vectors(k, c);
            hv -= res.values[c] * res.vectors(r, c);
            resid += std::norm(hv);
        }
        detail::check_numeric(std::sqrt(resid) <= 1e-10 * op_scale,
                              detail::cat("eig: residual too large for eigenpair ", c));
    }
    for (int c1 = 0; c1 < n; ++c1) {
        for (int c2 = c1; c2 < n; ++c2) {
            complex_t dot{0.0, 0.0};
            for (int r = 0; r < n; ++r)
                dot += std::conj(res.vectors(r, c1)) * res.vectors(r, c2);
            double want = (c1 == c2) ? 1.0 : 0.0;
            detail::check_numeric(std::abs(dot - complex_t{want, 0.0}) <= 1e-10,
                                  "eig: eigenvectors lost orthonormality");
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Model spectra

enum class Ordering { Normal, Unordered };

inline std::string to_string(Ordering o) {
    return o == Ordering::Normal ? "normal" : "unordered";
}

// The Hamiltonian matrix a model produces at basis size M under the given
// ordering policy: Normal applies Wick ordering before assembly (for which
// truncated factors are exact); Unordered assembles the verbatim expansion
// with truncated factors, boundary artifacts included.
inline DenseOperator model_matrix(const ModelSpec& model, int M, Ordering ordering) {
    model.validate();
    LadderPoly expansion = ladder_from_xp(model.xp_poly);
    if (ordering == Ordering::Normal) expansion = normal_order(expansion);
    return assemble(expansion, M, AssemblyMode::TruncatedFactors);
}

struct SpectrumReport {
    int M = 0;
    Ordering ordering = Ordering::Normal;
    OriginLabel origin = OriginLabel::Custom;
    std::vector<double> energies_cm;                     // ascending
    double splitting01_cm = 0.0;                         // E1 - E0
    std::optional<std::vector<std::vector<double>>> weights;  // [n][i]
    std::optional<double> one_norm_cm;
};

// Squared eigenvector components per eigenstate: row n lists
// w_i = |<i|psi_n>|^2.  Each row must sum to one.
inline std::vector<std::vector<double>> weights(const EigResult& e) {
    const int n = e.vectors.dim();
    const std::size_t dim = std::size_t(n);
    std::vector<std::vector<double>> w(dim, std::vector<double>(dim, 0.0));
    for (int state = 0; state < n; ++state) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            w[state][i] = std::norm(e.vectors(i, state));
            sum += w[state][i];
        }
        detail::check_numeric(std::abs(sum - 1.0) <= 1e-10,
                              detail::cat("weights: state ", state, " normalization drifted to ", sum));
    }
    return w;
}

inline SpectrumReport spectrum(const ModelSpec& model, int M, Ordering ordering,
                               bool with_weights = false) {
    DenseOperator h = model_matrix(model, M, ordering);
    EigResult e = eig(h);
    SpectrumReport rep;
    rep.M = M;
    rep.ordering = ordering;
    rep.origin = model.origin;
    rep.energies_cm.resize(e.values.size());
    for (std::size_t i = 0; i < e.values.size(); ++i)
        rep.energies_cm[i] = e.values[i] * model.energy_scale_cm;
    rep.splitting01_cm = M >= 2 ? rep.energies_cm[1] - rep.energies_cm[0] : 0.0;
    if (with_weights) rep.weights = weights(e);
    return rep;
}

// ---------------------------------------------------------------------------
// Convergence sweeps

struct SweepRow {
    int M = 0;
    std::vector<double> energies_cm;  // up to the first five
    double splitting01_cm = 0.0;
};

struct SweepTable {
    Ordering ordering = Ordering::Normal;
    OriginLabel origin = OriginLabel::Custom;
    std::vector<SweepRow> rows;       // ascending M
    int reference_M = 0;              // last row
    std::vector<int> violations;      // unordered mode: M where E0 rose
};

namespace detail {

// Run f(index) over a worker pool; results land in caller-owned slots, so
// the merge is deterministic regardless of scheduling.
template <class F>
void parallel_indexed(std::size_t count, F&& f) {
    unsigned hw = std::thread::hardware_concurrency();
    unsigned workers = std::max(1u, std::min({hw == 0 ? 1u : hw, 8u, unsigned(count)}));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (std::size_t i; (i = next.fetch_add(1)) < count;) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail

// Spectra across basis sizes.  Normal ordering must give a variationally
// monotone ground state (asserted within 1e-9 cm^-1); unordered assembly is
// expected to violate monotonicity, and the offending M values are recorded
// rather than rejected.
inline SweepTable convergence_sweep(const ModelSpec& model, Ordering ordering,
                                    const std::vector<int>& M_list) {
    detail::require(!M_list.empty(), "convergence_sweep: empty M list");
    detail::require(std::is_sorted(M_list.begin(), M_list.end()) &&
                        std::adjacent_find(M_list.begin(), M_list.end()) == M_list.end(),
                    "convergence_sweep: M values must be strictly increasing");
    SweepTable table;
    table.ordering = ordering;
    table.origin = model.origin;
    table.rows.resize(M_list.size());
    detail::parallel_indexed(M_list.size(), [&](std::size_t i) {
        SpectrumReport rep = spectrum(model, M_list[i], ordering);
        SweepRow row;
        row.M = rep.M;
        std::size_t keep = std::min<std::size_t>(5, rep.energies_cm.size());
        row.energies_cm.assign(rep.energies_cm.begin(), rep.energies_cm.begin() + keep);
        row.splitting01_cm = rep.splitting01_cm;
        table.rows[i] = std::move(row);
    });
    table.reference_M = table.rows.back().M;
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        double prev = table.rows[i - 1].energies_cm[0];
        double cur = table.rows[i].energies_cm[0];
        if (cur > prev + 1e-9) {
            if (ordering == Ordering::Normal)
                throw numeric_error(detail::cat(
                    "convergence_sweep: ground state rose from ", prev, " to ", cur,
                    " between M=", table.rows[i - 1].M, " and M=", table.rows[i].M));
            table.violations.push_back(table.rows[i].M);
        }
    }
    return table;
}

// ---------------------------------------------------------------------------
// 1-norm scaling

struct NormScalingReport {
    std::vector<std::pair<int, double>> points;  // (M, dimensionless 1-norm)
    double alpha = 0.0;                          // fitted power-law exponent
};

// Least-squares slope of log(one-norm) against log(M) for the Wick-ordered
// Hamiltonian encoded on log2(M) qubits.  M values must be powers of two;
// at least three points are required for a meaningful fit.  The slope is
// scale-invariant, so dimensionless coefficients are used throughout.
inline NormScalingReport norm_scaling_report(const ModelSpec& model, Encoding::Kind kind,
                                             const std::vector<int>& M_list) {
    detail::require(kind == Encoding::Kind::Binary,
                    "norm_scaling_fit: the scaling fit is defined for the binary encoding");
    detail::require(M_list.size() >= 3, "norm_scaling_fit: need at least 3 points");
    model.validate();
    LadderPoly ordered = normal_order(ladder_from_xp(model.xp_poly));
    std::vector<double> lambdas(M_list.size());
    detail::parallel_indexed(M_list.size(), [&](std::size_t i) {
        int M = M_list[i];
        detail::require(M >= 2 && (M & (M - 1)) == 0,
                        detail::cat("norm_scaling_fit: M=", M, " is not a power of two"));
        int K = std::countr_zero(std::uint32_t(M));
        PauliSum enc = encode_hamiltonian(ordered, Encoding::binary(K));
        double lambda = enc.one_norm();
        detail::check_numeric(lambda > 0.0, "norm_scaling_fit: vanishing 1-norm");
        lambdas[i] = lambda;
    });
    NormScalingReport rep;
    double n = double(M_list.size()), sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < M_list.size(); ++i) {
        rep.points.emplace_back(M_list[i], lambdas[i]);
        double x = std::log(double(M_list[i])), y = std::log(lambdas[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = n * sxx - sx * sx;
    detail::require(denom > 0.0, "norm_scaling_fit: degenerate fit (repeated M values?)");
    rep.alpha = (n * sxy - sx * sy) / denom;
    return rep;
}

inline double norm_scaling_fit(const ModelSpec& model, Encoding::Kind kind,
                               const std::vector<int>& M_list) {
    return norm_scaling_report(model, kind, M_list).alpha;
}

// One-norm of the encoded ordered Hamiltonian at a single size, in units of
// the model's energy scale.
inline double encoded_one_norm_cm(const ModelSpec& model, int K) {
    model.validate();
    LadderPoly ordered = normal_order(ladder_from_xp(model.xp_poly));
    PauliSum enc = encode_hamiltonian(ordered, Encoding::binary(K));
    return enc.one_norm() * model.energy_scale_cm;
}

}  // namespace vibenc

#endif  // VIBENC_SPECTRAL_HPP
