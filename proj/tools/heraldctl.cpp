// heraldctl: simulate heralded photonic state generation, scan circuit
// parameters, and verify externally supplied interferometers.

#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "heraldkit/io.hpp"
#include "heraldkit/paper_circuits.hpp"

namespace hk = heraldkit;
using hk::io::json;
using hk::io::ordered_json;

namespace {

// exit codes: 0 ok, 1 unexpected, 2 schema, 3 resource, 4 validation gate,
// 5 unachievable target
constexpr int kExitSchema = 2;
constexpr int kExitResource = 3;
constexpr int kExitValidation = 4;
constexpr int kExitUnachievable = 5;

void emit(const ordered_json& report, const std::string& out_path) {
    const std::string text = report.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        hk::io::write_file(out_path, text);
}

std::vector<double> parse_csv_doubles(const std::string& s) {
    std::vector<double> out;
    std::string cur;
    for (char c : s + ",") {
        if (c == ',') {
            if (!cur.empty()) out.push_back(std::stod(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

// "3:1,4:1,5:0" -> pattern
hk::HeraldPattern parse_herald_arg(const std::string& s) {
    hk::HeraldPattern p;
    std::string cur;
    for (char c : s + ",") {
        if (c == ',') {
            if (cur.empty()) continue;
            auto pos = cur.find(':');
            if (pos == std::string::npos)
                throw hk::SchemaError("--herald expects mode:count pairs");
            p.detected_modes.push_back(std::stoi(cur.substr(0, pos)));
            p.counts.push_back(std::stoi(cur.substr(pos + 1)));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return p;
}

int run_simulate(const std::string& spec_path, const std::string& out_path) {
    const std::string bytes = hk::io::read_file(spec_path);
    auto spec = hk::io::parse_circuit_spec(json::parse(bytes));
    auto u = hk::compose(spec.circuit);
    auto evolved = hk::apply(u, spec.input);
    ordered_json report;
    if (spec.herald_pattern.detected_modes.empty()) {
        report["tool_version"] = hk::kVersion;
        report["input_digest"] = hk::io::digest_hex(bytes);
        report["state"] = hk::io::amplitude_table_json(evolved.terms());
        report["truncation_bound"] = evolved.truncation_deficit();
    } else {
        auto res = hk::herald(evolved, spec.herald_pattern);
        report = hk::io::herald_report_json(res, hk::io::digest_hex(bytes));
        if (!spec.output_labels.empty())
            report["output_labels"] = spec.output_labels;
    }
    emit(report, out_path);
    return 0;
}

int run_scan(double b_lo, double b_hi, double b_step, double lambda,
             double target_eps, bool have_target, const std::string& out_path,
             const std::string& plot_path) {
    ordered_json report;
    report["tool_version"] = hk::kVersion;
    ordered_json curve = ordered_json::array();
    std::string plot = "# b epsilon p_succ\n";
    if (b_step > 0) {
        for (double b = b_lo; b <= b_hi + 1e-12; b += b_step) {
            const double bc = std::min(b, 1.0);
            auto pt = hk::scan_point(bc, lambda);
            ordered_json row;
            row["b"] = bc;
            row["a"] = pt.a;
            row["epsilon"] = pt.epsilon;
            row["p_succ"] = pt.p_succ;
            curve.push_back(std::move(row));
            plot += std::to_string(bc) + " " + std::to_string(pt.epsilon) +
                    " " + std::to_string(pt.p_succ) + "\n";
        }
    }
    report["curve"] = curve;
    if (have_target) {
        auto sol = hk::scan_epsilon(target_eps, lambda);
        report["target_epsilon"] = target_eps;
        report["b_star"] = sol.b_star;
        report["report"] = hk::io::closed_form_json(sol.report);
    }
    emit(report, out_path);
    if (!plot_path.empty()) hk::io::write_file(plot_path, plot);
    return 0;
}

int run_verify(const std::string& unitary_path, const std::string& squeezing,
               const std::string& herald_arg, int cutoff, double zero_threshold,
               const std::string& precision, const std::string& out_path) {
    const std::string bytes = hk::io::read_file(unitary_path);
    hk::Matrix m = hk::io::parse_unitary_json(json::parse(bytes), 1e-8);
    hk::ModeUnitary u(std::move(m), 1e-8);
    std::vector<hk::SqueezeParams> rs;
    for (double r : parse_csv_doubles(squeezing))
        rs.push_back(hk::SqueezeParams::from_r(r));
    auto pattern = parse_herald_arg(herald_arg);
    const int vac = u.dim() - static_cast<int>(rs.size());
    if (vac < 0)
        throw hk::DimensionMismatch(
            "verify: more squeezers than the unitary has modes");
    hk::CutoffPolicy pol{cutoff, zero_threshold};
    auto res = hk::verify_external(u, rs, vac, pattern, pol);
    ordered_json report =
        hk::io::herald_report_json(res, hk::io::digest_hex(bytes));
    report["gray_zone"] = hk::io::gray_zone_json(hk::gray_zone_verdicts(
        res, u, rs, vac, pol, precision == "extended"));
    emit(report, out_path);
    return 0;
}

int run_export(const std::string& which, double a, double b, double lambda,
               const std::string& unitary_path, const std::string& out_path) {
    hk::CircuitRecipe recipe;
    if (which == "fig3") {
        recipe = hk::build_fig3(a, b, lambda).recipe;
    } else if (which == "fig2") {
        hk::Matrix m = unitary_path.empty()
                           ? hk::Matrix(hk::ModeUnitary::identity(2).matrix())
                           : hk::io::load_unitary(unitary_path, 1e-8);
        recipe = hk::build_fig2(hk::ModeUnitary(m, 1e-8), lambda).recipe;
    } else if (which == "chi-damping") {
        recipe = hk::chi_prep_damping(b, lambda).recipe;
    } else if (which == "chi-interference") {
        recipe = hk::chi_prep_herald_interference(b, lambda).recipe;
    } else {
        throw hk::SchemaError("unknown recipe: " + which);
    }
    emit(hk::recipe_to_spec_json(recipe), out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"heraldkit: heralded photonic state generation toolkit"};
    app.require_subcommand(1);

    std::string spec_path, out_path, plot_path, unitary_path;
    std::string squeezing, herald_arg, precision = "double";
    std::string which;
    double b_lo = 0.5, b_hi = 1.0, b_step = 0.0;
    double lambda = std::sqrt(0.5);
    double target_eps = 0.0, a_param = 0.5, b_param = 2.0 / 3.0;
    int cutoff = 8;
    double zero_threshold = 1e-12;

    auto* sim = app.add_subcommand("simulate", "run a circuit spec");
    sim->add_option("--spec", spec_path, "circuit spec JSON")->required();
    sim->add_option("--out", out_path, "output report path (default stdout)");

    auto* scan =
        app.add_subcommand("scan", "scan b along the cancellation curve");
    scan->add_option("--b-lo", b_lo, "scan start");
    scan->add_option("--b-hi", b_hi, "scan end");
    scan->add_option("--b-step", b_step, "scan step (0 = no grid)");
    scan->add_option("--lambda", lambda, "TMSS lambda");
    auto* topt = scan->add_option("--target-epsilon", target_eps,
                                  "solve for epsilon = target");
    scan->add_option("--out", out_path, "output report path");
    scan->add_option("--plot-out", plot_path, "plot data file (b eps p_succ)");

    auto* ver = app.add_subcommand("verify", "verify an external unitary");
    ver->add_option("--unitary", unitary_path, "unitary JSON")->required();
    ver->add_option("--squeezing", squeezing, "comma list of r values")
        ->required();
    ver->add_option("--herald", herald_arg, "mode:count list")->required();
    ver->add_option("--cutoff", cutoff, "max total photons");
    ver->add_option("--zero-threshold", zero_threshold, "amplitude floor");
    ver->add_option("--precision", precision, "double | extended")
        ->check(CLI::IsMember({"double", "extended"}));
    ver->add_option("--out", out_path, "output report path");

    auto* exp = app.add_subcommand("export-recipe", "export a built-in recipe");
    exp->add_option("recipe", which,
                    "fig2 | fig3 | chi-damping | chi-interference")
        ->required();
    exp->add_option("--a", a_param, "R parameter a");
    exp->add_option("--b", b_param, "chi parameter b");
    exp->add_option("--lambda", lambda, "TMSS lambda");
    exp->add_option("--unitary", unitary_path, "2x2 unitary JSON for fig2");
    exp->add_option("--out", out_path, "output spec path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return run_simulate(spec_path, out_path);
        if (scan->parsed())
            return run_scan(b_lo, b_hi, b_step, lambda, target_eps,
                            topt->count() > 0, out_path, plot_path);
        if (ver->parsed())
            return run_verify(unitary_path, squeezing, herald_arg, cutoff,
                              zero_threshold, precision, out_path);
        if (exp->parsed())
            return run_export(which, a_param, b_param, lambda, unitary_path,
                              out_path);
    } catch (const heraldkit::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const heraldkit::ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const heraldkit::UnachievableTargetError& e) {
        std::cerr << "unachievable target: " << e.what() << " (attainable ["
                  << e.attainable_lo << ", " << e.attainable_hi << "])\n";
        return kExitUnachievable;
    } catch (const heraldkit::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const heraldkit::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
