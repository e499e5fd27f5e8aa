#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include "heraldkit/fock.hpp"
#include "heraldkit/interferometer.hpp"

// Brute-force reference implementations, deliberately algorithmically
// disjoint from the fast paths they validate: permutation-sum and Glynn
// permanents against Ryser, and a multinomial-expansion Fock operator
// against the permanent-based scattering amplitudes.

namespace heraldkit::oracle {

/// Permanent as an explicit sum over permutations. O(n! n), dim <= 9.
inline cdouble naive_permanent(const Matrix& m) {
    const int n = static_cast<int>(m.rows());
    if (m.rows() != m.cols())
        throw DimensionMismatch("naive_permanent: not square");
    if (n > 9) throw ResourceLimitError("naive_permanent: dim > 9");
    if (n == 0) return {1.0, 0.0};
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    cdouble total{0, 0};
    do {
        cdouble prod{1, 0};
        for (int i = 0; i < n; ++i) prod *= m(i, perm[i]);
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

/// Glynn's formula with a +/-1 outer loop; same asymptotics as Ryser but a
/// different recursion, kept for cross-checks.
inline cdouble glynn_permanent(const Matrix& m, int max_dim = 24) {
    const int n = static_cast<int>(m.rows());
    if (m.rows() != m.cols())
        throw DimensionMismatch("glynn_permanent: not square");
    if (n > max_dim) throw ResourceLimitError("glynn_permanent: dim too large");
    if (n == 0) return {1.0, 0.0};
    // sum over delta in {+1,-1}^n with delta_1 = +1 fixed
    std::vector<cdouble> row(n);
    for (int j = 0; j < n; ++j) {
        row[j] = cdouble{0, 0};
        for (int i = 0; i < n; ++i) row[j] += m(i, j);
    }
    cdouble total{0, 0};
    const std::uint64_t half = std::uint64_t{1} << (n - 1);
    std::uint64_t old_gray = 0;
    double sign = 1.0;
    for (std::uint64_t k = 0; k < half; ++k) {
        if (k > 0) {
            const std::uint64_t gray = k ^ (k >> 1);
            const std::uint64_t diff = gray ^ old_gray;
            int bit = 0;
            while (!((diff >> bit) & 1)) ++bit;
            const int i = bit + 1;  // delta index that flipped
            const double delta = (gray >> bit) & 1 ? -2.0 : 2.0;
            for (int j = 0; j < n; ++j) row[j] += delta * m(i, j);
            old_gray = gray;
            sign = -sign;
        }
        cdouble prod{1, 0};
        for (int j = 0; j < n; ++j) prod *= row[j];
        total += sign * prod;
    }
    const double scale = std::pow(2.0, n - 1);
    return total / scale;
}

/// Full Fock-space matrix of a mode unitary over the graded basis, built by
/// multinomial expansion of the transformed creation operators -- no
/// permanents anywhere in this path.
struct DenseFockOperator {
    std::vector<FockState> basis;
    std::map<FockState, int, GradedLexLess> index;
    Matrix matrix;  // matrix(i, j) = <basis[j]| U |basis[i]>

    cdouble amplitude(const FockState& in, const FockState& out) const {
        return matrix(index.at(in), index.at(out));
    }
};

inline DenseFockOperator dense_evolve(const ModeUnitary& u,
                                      const CutoffPolicy& cutoff,
                                      std::uint64_t basis_limit = 200000) {
    DenseFockOperator op;
    op.basis = enumerate_basis(u.dim(), cutoff.max_total_photons, basis_limit);
    const int dim = static_cast<int>(op.basis.size());
    for (int i = 0; i < dim; ++i) op.index[op.basis[i]] = i;
    op.matrix = Matrix::Zero(dim, dim);

    const int m = u.dim();
    using Poly = std::map<FockState, cdouble, GradedLexLess>;
    for (int i = 0; i < dim; ++i) {
        const FockState& in = op.basis[i];
        // expand prod_k (sum_j U(k,j) adag_j)^{n_k} |0>
        Poly poly;
        poly[FockState(std::vector<int>(m, 0))] = cdouble{1, 0};
        for (int k = 0; k < m; ++k) {
            for (int rep = 0; rep < in.occ[k]; ++rep) {
                Poly next;
                for (const auto& [mono, coef] : poly) {
                    for (int j = 0; j < m; ++j) {
                        if (u(k, j) == cdouble{0, 0}) continue;
                        FockState grown = mono;
                        grown.occ[j] += 1;
                        next[grown] += coef * u(k, j);
                    }
                }
                poly = std::move(next);
            }
        }
        // adag-monomial prod adag_j^{m_j}|0> = sqrt(prod m_j!) |m>
        const double in_norm = std::sqrt(detail::occupation_norm(in));
        for (const auto& [mono, coef] : poly) {
            if (mono.total() > cutoff.max_total_photons) continue;
            const double out_norm = std::sqrt(detail::occupation_norm(mono));
            op.matrix(i, op.index.at(mono)) = coef * out_norm / in_norm;
        }
    }
    return op;
}

// ---------------------------------------------------------------------------
// Double-double arithmetic for re-checking amplitudes near the zero
// threshold. Knuth two-sum / Dekker split; ~31 significant digits.

struct DD {
    double hi = 0.0, lo = 0.0;

    DD() = default;
    DD(double h) : hi(h), lo(0.0) {}
    DD(double h, double l) : hi(h), lo(l) {}

    double value() const { return hi + lo; }
};

namespace ddops {

inline DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline DD quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    const double p = a * b;
    const double err = std::fma(a, b, -p);
    return {p, err};
}

inline DD add(const DD& a, const DD& b) {
    DD s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD sub(const DD& a, const DD& b) { return add(a, {-b.hi, -b.lo}); }

inline DD mul(const DD& a, const DD& b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

}  // namespace ddops

struct ComplexDD {
    DD re, im;

    ComplexDD() = default;
    ComplexDD(cdouble z) : re(z.real()), im(z.imag()) {}
    ComplexDD(DD r, DD i) : re(r), im(i) {}

    cdouble value() const { return {re.value(), im.value()}; }
};

inline ComplexDD operator+(const ComplexDD& a, const ComplexDD& b) {
    return {ddops::add(a.re, b.re), ddops::add(a.im, b.im)};
}
inline ComplexDD operator-(const ComplexDD& a, const ComplexDD& b) {
    return {ddops::sub(a.re, b.re), ddops::sub(a.im, b.im)};
}
inline ComplexDD operator*(const ComplexDD& a, const ComplexDD& b) {
    using namespace ddops;
    return {sub(mul(a.re, b.re), mul(a.im, b.im)),
            add(mul(a.re, b.im), mul(a.im, b.re))};
}

/// Ryser permanent in double-double precision.
inline ComplexDD permanent_dd(const Matrix& m, int max_dim = 20) {
    const int n = static_cast<int>(m.rows());
    if (m.rows() != m.cols()) throw DimensionMismatch("permanent_dd: not square");
    if (n > max_dim) throw ResourceLimitError("permanent_dd: dim too large");
    if (n == 0) return {cdouble{1.0, 0.0}};
    std::vector<ComplexDD> row_sum(n);
    ComplexDD total;
    std::uint64_t old_gray = 0;
    int sign = 1;
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < count; ++k) {
        const std::uint64_t gray = k ^ (k >> 1);
        const std::uint64_t diff = gray ^ old_gray;
        int j = 0;
        while (!((diff >> j) & 1)) ++j;
        for (int i = 0; i < n; ++i) {
            const ComplexDD entry{m(i, j)};
            row_sum[i] = (gray & diff) ? row_sum[i] + entry : row_sum[i] - entry;
        }
        old_gray = gray;
        sign = -sign;
        ComplexDD prod{cdouble{1.0, 0.0}};
        for (int i = 0; i < n; ++i) prod = prod * row_sum[i];
        if (sign > 0)
            total = total + prod;
        else
            total = total - prod;
    }
    if (n % 2 != 0) total = ComplexDD{} - total;
    return total;
}

/// scattering_amplitude recomputed in extended precision.
inline cdouble scattering_amplitude_dd(const FockState& in, const FockState& out,
                                       const ModeUnitary& u) {
    if (in.total() != out.total()) return {0.0, 0.0};
    const int n = in.total();
    if (n == 0) return {1.0, 0.0};
    std::vector<int> rows, cols;
    for (int i = 0; i < in.modes(); ++i)
        for (int c = 0; c < in.occ[i]; ++c) rows.push_back(i);
    for (int j = 0; j < out.modes(); ++j)
        for (int c = 0; c < out.occ[j]; ++c) cols.push_back(j);
    Matrix sub(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) sub(r, c) = u(rows[r], cols[c]);
    const double norm =
        std::sqrt(detail::occupation_norm(in) * detail::occupation_norm(out));
    return permanent_dd(sub).value() / norm;
}

}  // namespace heraldkit::oracle
