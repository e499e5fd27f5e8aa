#pragma once

#include <cmath>
#include <vector>

#include "heraldkit/fock.hpp"

namespace heraldkit {

/// Photon counts required on a set of detected modes.
struct HeraldPattern {
    std::vector<int> detected_modes;
    std::vector<int> counts;

    int total() const {
        int t = 0;
        for (int c : counts) t += c;
        return t;
    }

    void check(int modes) const {
        if (detected_modes.size() != counts.size())
            throw DimensionMismatch("HeraldPattern: modes/counts size mismatch");
        std::vector<bool> seen(modes, false);
        for (std::size_t i = 0; i < detected_modes.size(); ++i) {
            const int m = detected_modes[i];
            if (m < 0 || m >= modes)
                throw DomainError("HeraldPattern: mode out of range");
            if (seen[m]) throw DomainError("HeraldPattern: repeated mode");
            seen[m] = true;
            if (counts[i] < 0) throw DomainError("HeraldPattern: negative count");
        }
    }
};

/// Outcome of conditioning on a detection pattern. `amplitude_table` holds
/// the unnormalized branch amplitudes keyed by the undetected modes in their
/// original order (detected modes deleted); `conditional_state` is the
/// normalized version. A zero-probability herald gives an empty result.
struct HeraldResult {
    StateVector conditional_state;
    double success_probability = 0.0;
    StateVector::TermMap amplitude_table;
    double truncation_bound = 0.0;

    HeraldResult() : conditional_state(1) {}
};

inline HeraldResult herald(const StateVector& s, const HeraldPattern& p) {
    p.check(s.modes());
    const int out_modes = s.modes() - static_cast<int>(p.detected_modes.size());
    if (out_modes < 1) throw DomainError("herald: no output modes remain");

    std::vector<int> required(s.modes(), -1);
    for (std::size_t i = 0; i < p.detected_modes.size(); ++i)
        required[p.detected_modes[i]] = p.counts[i];

    HeraldResult res;
    res.truncation_bound = s.truncation_deficit();
    StateVector branch(out_modes, s.cutoff());
    for (const auto& [k, v] : s.terms()) {
        bool match = true;
        for (int m = 0; m < s.modes(); ++m)
            if (required[m] >= 0 && k.occ[m] != required[m]) {
                match = false;
                break;
            }
        if (!match) continue;
        std::vector<int> rest;
        rest.reserve(out_modes);
        for (int m = 0; m < s.modes(); ++m)
            if (required[m] < 0) rest.push_back(k.occ[m]);
        branch.add_term(FockState(std::move(rest)), v);
    }
    branch.prune();
    res.amplitude_table = branch.terms();
    res.success_probability = branch.norm2();
    if (res.success_probability > s.cutoff().zero_threshold) {
        res.conditional_state = branch.normalized();
    } else {
        res.success_probability = res.success_probability;  // keep tiny value
        res.conditional_state = StateVector(out_modes, s.cutoff());
    }
    return res;
}

/// |<target|s>|^2 for normalized states.
inline double fidelity(const StateVector& s, const StateVector& target) {
    if (s.modes() != target.modes())
        throw DimensionMismatch("fidelity: mode count mismatch");
    return std::norm(inner_product(target, s));
}

/// Squared magnitude of one branch amplitude over the branch probability;
/// the paper's epsilon when the key is the |1111>-type target.
inline double epsilon_ratio(const HeraldResult& r, const FockState& target_key) {
    if (r.success_probability <= 0)
        throw DomainError("epsilon_ratio: zero-probability herald");
    auto it = r.amplitude_table.find(target_key);
    const double num =
        it == r.amplitude_table.end() ? 0.0 : std::norm(it->second);
    return num / r.success_probability;
}

}  // namespace heraldkit
