#pragma once

#include <cmath>
#include <map>

#include "heraldkit/fock.hpp"

namespace heraldkit {

/// The closed-form herald amplitudes and success probability of the
/// four-output-mode circuit, evaluated at circuit parameters (a, b) and TMSS
/// coefficients (s0, s2). `p_succ` is the closed-form probability, exact on
/// the cancellation curve a^2 = 1/b - 1; `table_total` is the sum of squared
/// table amplitudes, which equals the simulated herald probability for all
/// parameters.
struct ClosedFormReport {
    double a = 0, b = 0, lambda = 0;
    double s0 = 0, s1 = 0, s2 = 0;
    double beta_plus = 0, beta_minus = 0;
    double x_0000 = 0, x_1111 = 0;
    std::map<FockState, double, GradedLexLess> error_amplitudes;
    double p_succ = 0;
    double epsilon = 0;
    double table_total = 0;

    /// Every nonzero herald amplitude keyed by output pattern.
    std::map<FockState, double, GradedLexLess> full_table() const {
        auto t = error_amplitudes;
        t[FockState{0, 0, 0, 0}] = x_0000;
        t[FockState{1, 1, 1, 1}] = x_1111;
        return t;
    }
};

/// Closed forms with explicit TMSS coefficients (for algebraic-identity
/// checks decoupled from the geometric family).
inline ClosedFormReport closed_forms_raw(double a, double b, double s0,
                                         double s2) {
    if (a < 0.0 || a > 1.0) throw DomainError("closed_forms: a not in [0,1]");
    if (b < 0.0 || b > 1.0) throw DomainError("closed_forms: b not in [0,1]");
    ClosedFormReport r;
    r.a = a;
    r.b = b;
    r.s0 = s0;
    r.s2 = s2;
    const double sb = std::sqrt(b), s1b = std::sqrt(1.0 - b);
    r.beta_plus = -s2 * (s1b + a * sb) / 4.0;
    r.beta_minus = -s2 * (s1b - a * sb) / 4.0;
    r.x_0000 = -(s0 / std::sqrt(2.0)) * (1.0 - a) * sb;
    r.x_1111 = std::sqrt(2.0) * r.beta_plus;
    auto& e = r.error_amplitudes;
    e[FockState{1, 1, 0, 2}] = -r.beta_minus;
    e[FockState{1, 1, 2, 0}] = -r.beta_minus;
    e[FockState{0, 2, 0, 2}] = r.beta_minus;
    e[FockState{0, 2, 2, 0}] = r.beta_minus;
    e[FockState{2, 0, 0, 2}] = r.beta_minus;
    e[FockState{2, 0, 2, 0}] = r.beta_minus;
    e[FockState{0, 2, 1, 1}] = -r.beta_plus;
    e[FockState{2, 0, 1, 1}] = -r.beta_plus;
    r.p_succ = s0 * s0 * (0.5 - std::sqrt(b * (1.0 - b))) +
               s2 * s2 * (1.0 - b);
    r.table_total = r.x_0000 * r.x_0000 + r.x_1111 * r.x_1111;
    for (const auto& [k, v] : e) r.table_total += v * v;
    r.epsilon = r.p_succ > 0 ? r.x_1111 * r.x_1111 / r.p_succ : 0.0;
    return r;
}

inline ClosedFormReport closed_forms(double a, double b, double lambda) {
    if (lambda < 0.0 || lambda >= 1.0)
        throw DomainError("closed_forms: lambda not in [0,1)");
    const double s0 = std::sqrt(1.0 - lambda * lambda);
    auto r = closed_forms_raw(a, b, s0, s0 * lambda * lambda);
    r.lambda = lambda;
    r.s1 = s0 * lambda;
    return r;
}

/// The a that cancels beta_minus: a = sqrt(1/b - 1), valid for b in [1/2,1].
inline double solve_cancellation(double b) {
    if (b < 0.5 || b > 1.0)
        throw DomainError("solve_cancellation: b must be in [1/2,1]");
    return std::sqrt(1.0 / b - 1.0);
}

}  // namespace heraldkit
