#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "heraldkit/errors.hpp"

namespace heraldkit {

using cdouble = std::complex<double>;

/// Occupation-number label of one Fock basis state.
struct FockState {
    std::vector<int> occ;

    FockState() = default;
    explicit FockState(std::vector<int> o) : occ(std::move(o)) {}
    FockState(std::initializer_list<int> o) : occ(o) {}

    int modes() const { return static_cast<int>(occ.size()); }
    int total() const { return std::accumulate(occ.begin(), occ.end(), 0); }

    bool operator==(const FockState& other) const = default;

    std::string str() const {
        std::string s = "|";
        for (std::size_t i = 0; i < occ.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(occ[i]);
        }
        return s + ">";
    }
};

/// Graded lexicographic order: by total photon number, then lexicographic.
/// This is the canonical order used everywhere a deterministic ordering of
/// Fock states is needed (map iteration, report output, summation order).
struct GradedLexLess {
    bool operator()(const FockState& a, const FockState& b) const {
        const int ta = a.total(), tb = b.total();
        if (ta != tb) return ta < tb;
        return std::lexicographical_compare(a.occ.begin(), a.occ.end(),
                                            b.occ.begin(), b.occ.end());
    }
};

struct CutoffPolicy {
    int max_total_photons = 8;
    double zero_threshold = 1e-12;
};

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

/// Number of occupation vectors over `modes` modes with total <= max_total.
inline std::uint64_t basis_size(int modes, int max_total) {
    std::uint64_t n = 0;
    for (int k = 0; k <= max_total; ++k)
        n += binomial(static_cast<std::uint64_t>(k + modes - 1), modes - 1);
    return n;
}

namespace detail {

template <typename F>
void for_each_composition(int total, int parts, std::vector<int>& buf,
                          int pos, F&& fn) {
    if (parts == 1) {
        buf[pos] = total;
        fn(buf);
        return;
    }
    for (int first = 0; first <= total; ++first) {
        buf[pos] = first;
        for_each_composition(total - first, parts - 1, buf, pos + 1, fn);
    }
}

}  // namespace detail

/// All occupation vectors with sum == total, lexicographic order.
template <typename F>
void for_each_pattern(int total, int modes, F&& fn) {
    std::vector<int> buf(modes);
    detail::for_each_composition(total, modes, buf, 0, std::forward<F>(fn));
}

inline constexpr std::uint64_t kDefaultBasisLimit = 4'000'000;

/// All Fock states with total <= max_total in graded lexicographic order.
inline std::vector<FockState> enumerate_basis(
    int modes, int max_total, std::uint64_t limit = kDefaultBasisLimit) {
    if (modes < 1) throw DomainError("enumerate_basis: modes must be >= 1");
    if (max_total < 0) throw DomainError("enumerate_basis: max_total < 0");
    const std::uint64_t n = basis_size(modes, max_total);
    if (n > limit)
        throw ResourceLimitError("enumerate_basis: basis size " +
                                 std::to_string(n) + " exceeds limit " +
                                 std::to_string(limit));
    std::vector<FockState> out;
    out.reserve(n);
    for (int k = 0; k <= max_total; ++k)
        for_each_pattern(k, modes, [&](const std::vector<int>& v) {
            out.emplace_back(v);
        });
    return out;
}

/// Sparse Fock-space vector. Sub-normalized states represent heralded
/// branches; `truncation_deficit` carries the weight lost to the cutoff so
/// downstream probabilities keep an explicit error bound.
class StateVector {
  public:
    using TermMap = std::map<FockState, cdouble, GradedLexLess>;

    explicit StateVector(int modes, CutoffPolicy cutoff = {})
        : modes_(modes), cutoff_(cutoff) {
        if (modes < 1) throw DomainError("StateVector: modes must be >= 1");
    }

    int modes() const { return modes_; }
    const CutoffPolicy& cutoff() const { return cutoff_; }
    const TermMap& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    double truncation_deficit() const { return truncation_deficit_; }
    void set_truncation_deficit(double d) { truncation_deficit_ = d; }

    /// Accumulates an amplitude. Terms beyond the photon cutoff are folded
    /// into the truncation deficit instead of being stored.
    void add_term(const FockState& state, cdouble amp) {
        if (state.modes() != modes_)
            throw DimensionMismatch("add_term: wrong mode count");
        if (state.total() > cutoff_.max_total_photons) {
            truncation_deficit_ += std::norm(amp);
            return;
        }
        terms_[state] += amp;
    }

    /// Removes amplitudes at or below the zero threshold.
    void prune() {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (std::abs(it->second) <= cutoff_.zero_threshold)
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    double norm2() const {
        double n = 0;
        for (const auto& [k, v] : terms_) n += std::norm(v);
        return n;
    }

    StateVector normalized() const {
        const double n2 = norm2();
        if (n2 <= 0) throw DomainError("normalized: zero state");
        StateVector out(modes_, cutoff_);
        const double s = 1.0 / std::sqrt(n2);
        for (const auto& [k, v] : terms_) out.terms_[k] = v * s;
        out.truncation_deficit_ = truncation_deficit_;
        return out;
    }

    cdouble amplitude(const FockState& state) const {
        auto it = terms_.find(state);
        return it == terms_.end() ? cdouble{0, 0} : it->second;
    }

    /// Total photon numbers present above the zero threshold.
    std::set<int> photon_number_support() const {
        std::set<int> s;
        for (const auto& [k, v] : terms_)
            if (std::abs(v) > cutoff_.zero_threshold) s.insert(k.total());
        return s;
    }

  private:
    int modes_;
    CutoffPolicy cutoff_;
    TermMap terms_;
    double truncation_deficit_ = 0.0;
};

/// <a|b>, conjugate-linear in the first argument.
inline cdouble inner_product(const StateVector& a, const StateVector& b) {
    if (a.modes() != b.modes())
        throw DimensionMismatch("inner_product: mode count mismatch");
    // iterate the smaller map
    const auto& small = a.terms().size() <= b.terms().size() ? a : b;
    const auto& large = a.terms().size() <= b.terms().size() ? b : a;
    const bool small_is_a = &small == &a;
    cdouble acc{0, 0};
    for (const auto& [k, v] : small.terms()) {
        auto it = large.terms().find(k);
        if (it == large.terms().end()) continue;
        acc += small_is_a ? std::conj(v) * it->second : std::conj(it->second) * v;
    }
    return acc;
}

inline StateVector tensor_product(const StateVector& a, const StateVector& b) {
    CutoffPolicy pol{a.cutoff().max_total_photons + b.cutoff().max_total_photons,
                     std::min(a.cutoff().zero_threshold, b.cutoff().zero_threshold)};
    StateVector out(a.modes() + b.modes(), pol);
    for (const auto& [ka, va] : a.terms()) {
        for (const auto& [kb, vb] : b.terms()) {
            std::vector<int> occ = ka.occ;
            occ.insert(occ.end(), kb.occ.begin(), kb.occ.end());
            out.add_term(FockState(std::move(occ)), va * vb);
        }
    }
    // deficits combine multiplicatively on the kept norm
    const double da = a.truncation_deficit(), db = b.truncation_deficit();
    out.set_truncation_deficit(1.0 - (1.0 - da) * (1.0 - db));
    out.prune();
    return out;
}

}  // namespace heraldkit
