#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "heraldkit/fock.hpp"

namespace heraldkit {

using Matrix = Eigen::MatrixXcd;

inline double unitarity_deviation(const Matrix& u) {
    return (u * u.adjoint() - Matrix::Identity(u.rows(), u.cols()))
        .cwiseAbs()
        .maxCoeff();
}

/// A unitary acting on optical modes. Amplitude convention is the row
/// picture: a single photon entering mode i leaves in mode j with amplitude
/// U(i, j), i.e. out^T = in^T * U.
class ModeUnitary {
  public:
    explicit ModeUnitary(Matrix m, double tol = 1e-10) : m_(std::move(m)) {
        if (m_.rows() != m_.cols())
            throw DimensionMismatch("ModeUnitary: matrix not square");
        const double dev = unitarity_deviation(m_);
        if (dev > tol)
            throw ValidationError("ModeUnitary: not unitary, deviation " +
                                  std::to_string(dev));
    }

    static ModeUnitary identity(int dim) {
        return ModeUnitary(Matrix::Identity(dim, dim));
    }

    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix& matrix() const { return m_; }
    cdouble operator()(int i, int j) const { return m_(i, j); }

    ModeUnitary adjoint() const { return ModeUnitary(m_.adjoint()); }

    /// Embeds this k-mode unitary into `dim` modes at the given lines,
    /// identity elsewhere.
    ModeUnitary embedded(const std::vector<int>& lines, int dim) const {
        if (static_cast<int>(lines.size()) != this->dim())
            throw DimensionMismatch("embedded: line count != dim");
        Matrix full = Matrix::Identity(dim, dim);
        for (std::size_t r = 0; r < lines.size(); ++r)
            for (std::size_t c = 0; c < lines.size(); ++c)
                full(lines[r], lines[c]) = m_(r, c);
        return ModeUnitary(std::move(full));
    }

  private:
    Matrix m_;
};

/// The paper's two-parameter beamsplitter family by intensity parameter a:
/// [[sqrt(a), sqrt(1-a)], [sqrt(1-a), -sqrt(a)]].
inline ModeUnitary beamsplitter_r(double a) {
    if (a < 0.0 || a > 1.0) throw DomainError("beamsplitter_r: a not in [0,1]");
    Matrix m(2, 2);
    const double sa = std::sqrt(a), sb = std::sqrt(1.0 - a);
    m << sa, sb, sb, -sa;
    return ModeUnitary(std::move(m));
}

/// Angle parameterization, a = cos^2(theta).
inline ModeUnitary beamsplitter_theta(double theta) {
    const double c = std::cos(theta);
    return beamsplitter_r(c * c);
}

/// Symmetric (i-convention) 50:50: [[1, i], [i, 1]]/sqrt(2).
inline ModeUnitary balanced_symmetric() {
    Matrix m(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    m << cdouble(s, 0), cdouble(0, s), cdouble(0, s), cdouble(s, 0);
    return ModeUnitary(std::move(m));
}

inline ModeUnitary phase_shift(double phi) {
    Matrix m(1, 1);
    m(0, 0) = std::exp(cdouble(0, phi));
    return ModeUnitary(std::move(m));
}

struct CircuitElement {
    enum class Kind { Beamsplitter, Phase, General };

    Kind kind = Kind::Beamsplitter;
    std::vector<int> modes;
    double a = 0.5;     // Beamsplitter intensity parameter
    double phi = 0.0;   // Phase
    Matrix matrix;      // General

    static CircuitElement beamsplitter(int i, int j, double a) {
        CircuitElement e;
        e.kind = Kind::Beamsplitter;
        e.modes = {i, j};
        e.a = a;
        return e;
    }
    static CircuitElement phase(int m, double phi) {
        CircuitElement e;
        e.kind = Kind::Phase;
        e.modes = {m};
        e.phi = phi;
        return e;
    }
    static CircuitElement general(std::vector<int> modes, Matrix m) {
        CircuitElement e;
        e.kind = Kind::General;
        e.modes = std::move(modes);
        e.matrix = std::move(m);
        return e;
    }

    ModeUnitary unitary() const {
        switch (kind) {
            case Kind::Beamsplitter: return beamsplitter_r(a);
            case Kind::Phase: return phase_shift(phi);
            case Kind::General: return ModeUnitary(matrix);
        }
        throw DomainError("CircuitElement: bad kind");
    }
};

struct Circuit {
    int modes = 0;
    std::vector<CircuitElement> elements;

    void check() const {
        for (const auto& e : elements) {
            std::vector<int> seen;
            for (int m : e.modes) {
                if (m < 0 || m >= modes)
                    throw DomainError("Circuit: element mode out of range");
                for (int s : seen)
                    if (s == m) throw DomainError("Circuit: repeated mode");
                seen.push_back(m);
            }
        }
    }
};

/// Ordered product of the embedded elements. With the row-picture amplitude
/// convention, applying e1 then e2 composes as U = E1 * E2.
inline ModeUnitary compose(const Circuit& c) {
    c.check();
    Matrix u = Matrix::Identity(c.modes, c.modes);
    for (const auto& e : c.elements)
        u = u * e.unitary().embedded(e.modes, c.modes).matrix();
    return ModeUnitary(std::move(u));
}

inline constexpr int kDefaultPermanentLimit = 20;

/// Matrix permanent by Ryser's formula with Gray-code subset traversal,
/// O(2^n n).
inline cdouble permanent(const Matrix& m, int max_dim = kDefaultPermanentLimit) {
    const int n = static_cast<int>(m.rows());
    if (m.rows() != m.cols()) throw DimensionMismatch("permanent: not square");
    if (n > max_dim)
        throw ResourceLimitError("permanent: dimension " + std::to_string(n) +
                                 " exceeds limit " + std::to_string(max_dim));
    if (n == 0) return {1.0, 0.0};
    std::vector<cdouble> row_sum(n, cdouble{0, 0});
    cdouble total{0, 0};
    std::uint64_t old_gray = 0;
    int sign = 1;
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < count; ++k) {
        const std::uint64_t gray = k ^ (k >> 1);
        const std::uint64_t diff = gray ^ old_gray;
        int j = 0;
        while (!((diff >> j) & 1)) ++j;
        if (gray & diff)
            for (int i = 0; i < n; ++i) row_sum[i] += m(i, j);
        else
            for (int i = 0; i < n; ++i) row_sum[i] -= m(i, j);
        old_gray = gray;
        sign = -sign;
        cdouble prod{1, 0};
        for (int i = 0; i < n; ++i) prod *= row_sum[i];
        total += static_cast<double>(sign) * prod;
    }
    return (n % 2 == 0) ? total : -total;
}

namespace detail {

inline double factorial(int n) {
    double f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

inline double occupation_norm(const FockState& s) {
    double f = 1;
    for (int c : s.occ) f *= factorial(c);
    return f;
}

}  // namespace detail

/// <out| U |in> for Fock states: Per(U_{S,T}) / sqrt(prod in_i! prod out_j!)
/// where U_{S,T} repeats row i of U in_i times and column j out_j times.
/// Exactly zero when photon numbers differ.
inline cdouble scattering_amplitude(const FockState& in, const FockState& out,
                                    const ModeUnitary& u,
                                    int max_dim = kDefaultPermanentLimit) {
    if (in.modes() != u.dim() || out.modes() != u.dim())
        throw DimensionMismatch("scattering_amplitude: mode count mismatch");
    const int n = in.total();
    if (n != out.total()) return {0.0, 0.0};
    if (n == 0) return {1.0, 0.0};
    std::vector<int> rows, cols;
    rows.reserve(n);
    cols.reserve(n);
    for (int i = 0; i < in.modes(); ++i)
        for (int c = 0; c < in.occ[i]; ++c) rows.push_back(i);
    for (int j = 0; j < out.modes(); ++j)
        for (int c = 0; c < out.occ[j]; ++c) cols.push_back(j);
    Matrix sub(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) sub(r, c) = u(rows[r], cols[c]);
    const double norm =
        std::sqrt(detail::occupation_norm(in) * detail::occupation_norm(out));
    return permanent(sub, max_dim) / norm;
}

/// Linear extension of scattering_amplitude over all terms of a state.
/// Iterates photon-number sectors per input term instead of materializing the
/// full Fock-space matrix; summation order is the canonical basis order.
inline StateVector apply(const ModeUnitary& u, const StateVector& s,
                         int max_dim = kDefaultPermanentLimit) {
    if (u.dim() != s.modes())
        throw DimensionMismatch("apply: unitary/state mode count mismatch");
    StateVector out(s.modes(), s.cutoff());
    out.set_truncation_deficit(s.truncation_deficit());
    for (const auto& [in, amp] : s.terms()) {
        const int n = in.total();
        for_each_pattern(n, s.modes(), [&](const std::vector<int>& pat) {
            FockState outstate(pat);
            const cdouble a = scattering_amplitude(in, outstate, u, max_dim);
            if (a != cdouble{0, 0}) out.add_term(outstate, amp * a);
        });
    }
    out.prune();
    return out;
}

}  // namespace heraldkit
