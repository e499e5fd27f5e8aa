#pragma once

#include <string>
#include <vector>

#include "heraldkit/fock.hpp"
#include "heraldkit/herald.hpp"
#include "heraldkit/interferometer.hpp"

namespace heraldkit {

/// Declarative source entry, kept alongside the assembled input state so a
/// recipe can be exported to the circuit-spec JSON and re-run.
struct SourceSpec {
    std::string kind;  // tmss | smsv | chi | fock | vacuum
    std::vector<int> modes;
    double lambda = 0.0;       // tmss / smsv
    double b = 0.0;            // chi
    std::vector<int> occupations;  // fock
};

/// A complete runnable construction: inputs, circuit, and herald pattern.
struct CircuitRecipe {
    Circuit circuit;
    std::vector<SourceSpec> sources;
    StateVector input;
    HeraldPattern herald_pattern;
    std::vector<std::string> output_labels;

    CircuitRecipe() : input(1) {}
};

/// compose + apply + herald.
inline HeraldResult run_recipe(const CircuitRecipe& r) {
    auto u = compose(r.circuit);
    return herald(apply(u, r.input), r.herald_pattern);
}

}  // namespace heraldkit
