#pragma once

#include <cmath>

#include "heraldkit/fock.hpp"
#include "heraldkit/interferometer.hpp"

namespace heraldkit {

/// Squeezing strength, kept as both r and lambda = tanh(r).
struct SqueezeParams {
    double r = 0.0;
    double lambda = 0.0;

    static SqueezeParams from_r(double r) {
        return {r, std::tanh(r)};
    }
    static SqueezeParams from_lambda(double lambda) {
        if (lambda < 0.0 || lambda >= 1.0)
            throw DomainError("SqueezeParams: lambda must be in [0,1)");
        return {std::atanh(lambda), lambda};
    }
};

/// Two-mode squeezed state sum_n s_n |nn>, s_n = sqrt(1-lambda^2) lambda^n,
/// real positive. The norm lost to truncation is attached as metadata.
inline StateVector tmss(const SqueezeParams& p, CutoffPolicy cutoff = {}) {
    StateVector out(2, cutoff);
    const double lam = p.lambda;
    const double s0 = std::sqrt(1.0 - lam * lam);
    double kept = 0.0;
    for (int n = 0; 2 * n <= cutoff.max_total_photons; ++n) {
        const double sn = s0 * std::pow(lam, n);
        if (sn <= cutoff.zero_threshold && n > 0) break;
        out.add_term(FockState{n, n}, sn);
        kept += sn * sn;
    }
    out.set_truncation_deficit(1.0 - kept);
    out.prune();
    return out;
}

/// Single-mode squeezed vacuum: even occupations only,
/// c_{2n} = sech(r)^{1/2} tanh(r)^n sqrt((2n)!)/(2^n n!), real positive.
/// The phase convention is pinned by the smsv_combiner identity below.
inline StateVector smsv(const SqueezeParams& p, CutoffPolicy cutoff = {}) {
    StateVector out(1, cutoff);
    const double th = std::tanh(p.r);
    const double sech_half = std::sqrt(1.0 / std::cosh(p.r));
    double kept = 0.0;
    for (int n = 0; 2 * n <= cutoff.max_total_photons; ++n) {
        const double c = sech_half * std::pow(th, n) *
                         std::sqrt(detail::factorial(2 * n)) /
                         (std::pow(2.0, n) * detail::factorial(n));
        out.add_term(FockState{2 * n}, c);
        kept += c * c;
    }
    out.set_truncation_deficit(1.0 - kept);
    out.prune();
    return out;
}

/// The 2-mode circuit that merges two identical SMSVs into a TMSS: the
/// symmetric 50:50 followed by a -pi/2 phase on the first mode. With this
/// convention smsv(r) (x) smsv(r) maps onto tmss(tanh r) with all-real
/// coefficients, which fixes the SMSV sign ambiguity.
inline Circuit smsv_combiner(int mode_a = 0, int mode_b = 1, int modes = 2) {
    Circuit c;
    c.modes = modes;
    c.elements.push_back(CircuitElement::general(
        {mode_a, mode_b}, balanced_symmetric().matrix()));
    c.elements.push_back(CircuitElement::phase(mode_a, -M_PI / 2.0));
    return c;
}

/// |chi> = sqrt(b)|20> - sqrt(1-b)|02>.
inline StateVector chi(double b, CutoffPolicy cutoff = {}) {
    if (b < 0.0 || b > 1.0) throw DomainError("chi: b must be in [0,1]");
    StateVector out(2, cutoff);
    out.add_term(FockState{2, 0}, std::sqrt(b));
    out.add_term(FockState{0, 2}, -std::sqrt(1.0 - b));
    out.prune();
    return out;
}

/// Single-term unit-norm Fock state.
inline StateVector fock(const FockState& occ, CutoffPolicy cutoff = {}) {
    StateVector out(occ.modes(), cutoff);
    out.add_term(occ, 1.0);
    return out;
}

inline StateVector vacuum(int modes, CutoffPolicy cutoff = {}) {
    return fock(FockState(std::vector<int>(modes, 0)), cutoff);
}

}  // namespace heraldkit
