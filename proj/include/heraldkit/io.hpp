#pragma once

#include <cstdint>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "heraldkit/closed_forms.hpp"
#include "heraldkit/herald.hpp"
#include "heraldkit/interferometer.hpp"
#include "heraldkit/sources.hpp"
#include "heraldkit/version.hpp"

namespace heraldkit::io {

using nlohmann::json;
using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// unitary files: row-major 2-D array of [re, im] pairs

inline Matrix parse_unitary_json(const json& j, double tol = 1e-8) {
    if (!j.is_array() || j.empty())
        throw SchemaError("unitary: expected a non-empty 2-D array");
    const int n = static_cast<int>(j.size());
    Matrix m(n, n);
    for (int r = 0; r < n; ++r) {
        const auto& row = j.at(r);
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw SchemaError("unitary: row " + std::to_string(r) +
                              " has wrong length");
        for (int c = 0; c < n; ++c) {
            const auto& e = row.at(c);
            if (!e.is_array() || e.size() != 2)
                throw SchemaError("unitary: entry must be [re, im]");
            m(r, c) = cdouble{e.at(0).get<double>(), e.at(1).get<double>()};
        }
    }
    const double dev = unitarity_deviation(m);
    if (dev > tol)
        throw ValidationError("unitary: deviation from unitarity " +
                              std::to_string(dev) + " exceeds " +
                              std::to_string(tol));
    return m;
}

inline json unitary_to_json(const Matrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c)
            row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix load_unitary(const std::string& path, double tol = 1e-8) {
    std::ifstream f(path);
    if (!f) throw SchemaError("cannot open unitary file: " + path);
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        throw SchemaError("unitary JSON parse error in " + path + ": " +
                          e.what());
    }
    return parse_unitary_json(j, tol);
}

// ---------------------------------------------------------------------------
// circuit spec
//
// {
//   "modes": 6,
//   "cutoff": {"max_total_photons": 8, "zero_threshold": 1e-12},
//   "sources": [
//     {"kind": "tmss",   "modes": [0,1], "lambda": 0.7071},
//     {"kind": "smsv",   "modes": [2],   "r": 0.9350},
//     {"kind": "chi",    "modes": [3,4], "b": 0.6667},
//     {"kind": "fock",   "modes": [5],   "occupations": [1]},
//     {"kind": "vacuum", "modes": [5]}
//   ],
//   "elements": [
//     {"kind": "beamsplitter", "modes": [1,2], "a": 0.5},
//     {"kind": "phase",        "modes": [0],   "phi": -1.5707963},
//     {"kind": "general",      "modes": [1,2], "matrix": [[[re,im],...],...]}
//   ],
//   "herald": {"modes": [1,2], "counts": [1,1]},
//   "output_labels": ["o1","o2","o3","o4"]
// }
//
// Modes are 0-based. Every mode must be covered by exactly one source;
// vacuum is assumed only via an explicit "vacuum" entry.

struct CircuitSpec {
    int modes = 0;
    CutoffPolicy cutoff;
    StateVector input;
    Circuit circuit;
    HeraldPattern herald_pattern;
    std::vector<std::string> output_labels;

    CircuitSpec() : input(1) {}
};

inline CircuitSpec parse_circuit_spec(const json& j) {
    CircuitSpec spec;
    try {
        spec.modes = j.at("modes").get<int>();
        if (spec.modes < 1) throw SchemaError("spec: modes must be >= 1");
        if (j.contains("cutoff")) {
            const auto& c = j.at("cutoff");
            spec.cutoff.max_total_photons =
                c.value("max_total_photons", spec.cutoff.max_total_photons);
            spec.cutoff.zero_threshold =
                c.value("zero_threshold", spec.cutoff.zero_threshold);
        }

        std::vector<int> covered(spec.modes, 0);
        std::vector<std::pair<std::vector<int>, StateVector>> pieces;
        for (const auto& s : j.at("sources")) {
            const std::string kind = s.at("kind").get<std::string>();
            std::vector<int> modes = s.at("modes").get<std::vector<int>>();
            for (int m : modes) {
                if (m < 0 || m >= spec.modes)
                    throw SchemaError("source mode out of range");
                if (covered[m]++)
                    throw SchemaError("mode " + std::to_string(m) +
                                      " covered twice");
            }
            StateVector sv(1);
            if (kind == "tmss") {
                if (modes.size() != 2) throw SchemaError("tmss needs 2 modes");
                sv = tmss(s.contains("lambda")
                              ? SqueezeParams::from_lambda(
                                    s.at("lambda").get<double>())
                              : SqueezeParams::from_r(s.at("r").get<double>()),
                          spec.cutoff);
            } else if (kind == "smsv") {
                if (modes.size() != 1) throw SchemaError("smsv needs 1 mode");
                sv = smsv(s.contains("r")
                              ? SqueezeParams::from_r(s.at("r").get<double>())
                              : SqueezeParams::from_lambda(
                                    s.at("lambda").get<double>()),
                          spec.cutoff);
            } else if (kind == "chi") {
                if (modes.size() != 2) throw SchemaError("chi needs 2 modes");
                sv = chi(s.at("b").get<double>(), spec.cutoff);
            } else if (kind == "fock") {
                auto occ = s.at("occupations").get<std::vector<int>>();
                if (occ.size() != modes.size())
                    throw SchemaError("fock: occupations/modes length mismatch");
                sv = fock(FockState(occ), spec.cutoff);
            } else if (kind == "vacuum") {
                sv = vacuum(static_cast<int>(modes.size()), spec.cutoff);
            } else {
                throw SchemaError("unknown source kind: " + kind);
            }
            pieces.emplace_back(modes, std::move(sv));
        }
        for (int m = 0; m < spec.modes; ++m)
            if (!covered[m])
                throw SchemaError("mode " + std::to_string(m) +
                                  " has no source");

        // assemble: tensor in declared order, then permute to target modes
        std::vector<int> order;
        StateVector joint(1);
        bool first = true;
        for (auto& [modes, sv] : pieces) {
            order.insert(order.end(), modes.begin(), modes.end());
            joint = first ? std::move(sv) : tensor_product(joint, sv);
            first = false;
        }
        StateVector arranged(spec.modes, spec.cutoff);
        arranged.set_truncation_deficit(joint.truncation_deficit());
        for (const auto& [k, v] : joint.terms()) {
            std::vector<int> occ(spec.modes, 0);
            for (std::size_t i = 0; i < order.size(); ++i)
                occ[order[i]] = k.occ[i];
            arranged.add_term(FockState(std::move(occ)), v);
        }
        arranged.prune();
        spec.input = std::move(arranged);

        spec.circuit.modes = spec.modes;
        if (j.contains("elements")) {
            for (const auto& e : j.at("elements")) {
                const std::string kind = e.at("kind").get<std::string>();
                auto modes = e.at("modes").get<std::vector<int>>();
                if (kind == "beamsplitter") {
                    if (modes.size() != 2)
                        throw SchemaError("beamsplitter needs 2 modes");
                    spec.circuit.elements.push_back(CircuitElement::beamsplitter(
                        modes[0], modes[1], e.at("a").get<double>()));
                } else if (kind == "phase") {
                    if (modes.size() != 1)
                        throw SchemaError("phase needs 1 mode");
                    spec.circuit.elements.push_back(CircuitElement::phase(
                        modes[0], e.at("phi").get<double>()));
                } else if (kind == "general") {
                    Matrix m = parse_unitary_json(e.at("matrix"), 1e-8);
                    if (m.rows() != static_cast<int>(modes.size()))
                        throw SchemaError("general: matrix/modes size mismatch");
                    spec.circuit.elements.push_back(
                        CircuitElement::general(modes, std::move(m)));
                } else {
                    throw SchemaError("unknown element kind: " + kind);
                }
            }
        }
        spec.circuit.check();

        if (j.contains("herald")) {
            spec.herald_pattern.detected_modes =
                j.at("herald").at("modes").get<std::vector<int>>();
            spec.herald_pattern.counts =
                j.at("herald").at("counts").get<std::vector<int>>();
            spec.herald_pattern.check(spec.modes);
        }
        if (j.contains("output_labels"))
            spec.output_labels =
                j.at("output_labels").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
        throw SchemaError(std::string("spec parse error: ") + e.what());
    }
    return spec;
}

inline CircuitSpec load_circuit_spec(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw SchemaError("cannot open spec file: " + path);
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        throw SchemaError("spec JSON parse error in " + path + ": " + e.what());
    }
    return parse_circuit_spec(j);
}

// ---------------------------------------------------------------------------
// reports

/// FNV-1a over the exact input bytes; reports embed it so published numbers
/// stay traceable to their inputs.
inline std::string digest_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

inline ordered_json fock_key_json(const FockState& k) {
    return ordered_json(k.occ);
}

inline ordered_json amplitude_table_json(const StateVector::TermMap& table) {
    ordered_json rows = ordered_json::array();
    for (const auto& [k, v] : table) {
        ordered_json row;
        row["occupations"] = k.occ;
        auto sorted = k.occ;
        std::sort(sorted.begin(), sorted.end(), std::greater<int>());
        row["multiset"] = sorted;  // raw vs sorted views, see herald docs
        row["re"] = v.real();
        row["im"] = v.imag();
        row["magnitude"] = std::abs(v);
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ordered_json herald_report_json(const HeraldResult& r,
                                       const std::string& input_digest) {
    ordered_json j;
    j["tool_version"] = kVersion;
    j["input_digest"] = input_digest;
    j["success_probability"] = r.success_probability;
    j["truncation_bound"] = r.truncation_bound;
    j["amplitude_table"] = amplitude_table_json(r.amplitude_table);
    return j;
}

inline ordered_json closed_form_json(const ClosedFormReport& r) {
    ordered_json j;
    j["a"] = r.a;
    j["b"] = r.b;
    j["lambda"] = r.lambda;
    j["s0"] = r.s0;
    j["s1"] = r.s1;
    j["s2"] = r.s2;
    j["beta_plus"] = r.beta_plus;
    j["beta_minus"] = r.beta_minus;
    j["x_0000"] = r.x_0000;
    j["x_1111"] = r.x_1111;
    ordered_json errs = ordered_json::array();
    for (const auto& [k, v] : r.error_amplitudes) {
        ordered_json e;
        e["occupations"] = k.occ;
        e["amplitude"] = v;
        errs.push_back(std::move(e));
    }
    j["error_amplitudes"] = errs;
    j["p_succ"] = r.p_succ;
    j["epsilon"] = r.epsilon;
    j["table_total"] = r.table_total;
    return j;
}

inline std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw SchemaError("cannot open file: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw SchemaError("cannot write file: " + path);
    f << content;
}

}  // namespace heraldkit::io
