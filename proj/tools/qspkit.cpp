#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qspkit/bench.hpp"
#include "qspkit/gqsp.hpp"
#include "qspkit/json_io.hpp"

using namespace qspkit;

namespace {

struct GlobalOptions {
    double eps = 1e-14;
    std::uint64_t seed = 17;
    std::string format = "json";
    std::string out;
    std::string in;
};

json read_input(const GlobalOptions& g) {
    if (!g.in.empty()) {
        std::ifstream f(g.in);
        if (!f) throw ValidationError("cannot open input file: " + g.in);
        return parse_json(f);
    }
    return parse_json(std::cin);
}

void write_output(const GlobalOptions& g, const std::string& text) {
    if (!g.out.empty()) {
        std::ofstream f(g.out);
        if (!f) throw ValidationError("cannot open output file: " + g.out);
        f << text;
        return;
    }
    std::cout << text;
}

void write_json(const GlobalOptions& g, const json& doc) {
    if (g.format == "csv")
        throw ValidationError("csv output is only available for the bench command");
    write_output(g, doc.dump(2) + "\n");
}

enum class InputKind { poly, sequence, phases, completion };

InputKind classify(const json& j) {
    if (!j.is_object())
        throw ValidationError("input must be a JSON object");
    if (j.contains("c_hat") && j.contains("a") && j.contains("b"))
        return InputKind::completion;
    if (j.contains("values")) return InputKind::sequence;
    if (j.contains("phi") && j.contains("theta")) return InputKind::phases;
    if (j.contains("coeffs")) return InputKind::poly;
    throw ValidationError(
        "unrecognized input: expected a polynomial (coeffs), sequence (values), "
        "phases (phi/theta), or completion (a/b/c_hat) document");
}

struct Pipeline {
    std::optional<LaurentPolynomial> b;
    std::optional<CompletionResult> completion;
    NlftSequence f;
};

NlftSequence invert(const CompletionResult& r, const LaurentPolynomial& b,
                    BenchMethod method) {
    switch (method) {
        case BenchMethod::direct: return inverse_nlft_direct(r.c_hat);
        case BenchMethod::layer_strip: return layer_strip(NlftPair{r.a, b});
        case BenchMethod::half_cholesky: break;
    }
    return inverse_nlft_fast(r.c_hat);
}

// inverse-nlft output nests its sequence under "f"; accept that shape too.
const json& unwrap(const json& doc) {
    if (doc.is_object() && doc.contains("f") && doc.at("f").is_object())
        return doc.at("f");
    return doc;
}

// Accepts a target polynomial (runs the completion pipeline), a stored
// completion document, or a bare coefficient sequence.
Pipeline sequence_from_input(const json& wrapped, double eps, BenchMethod method) {
    const json& doc = unwrap(wrapped);
    Pipeline p;
    switch (classify(doc)) {
        case InputKind::poly: {
            p.b = poly_from_json(doc);
            p.completion = complete(*p.b, eps);
            p.f = invert(*p.completion, *p.b, method);
            break;
        }
        case InputKind::completion: {
            p.b = poly_from_json(doc.at("b"));
            CompletionResult r;
            r.a = poly_from_json(doc.at("a"));
            r.c_hat = complex_list_from_json(doc.at("c_hat"), "c_hat");
            r.grid_size = doc.value("grid_size", std::size_t{0});
            r.eta_used = doc.value("eta_used", 0.0);
            r.residual = doc.value("residual", 0.0);
            p.completion = std::move(r);
            p.f = invert(*p.completion, *p.b, method);
            break;
        }
        case InputKind::sequence:
            p.f = sequence_from_json(doc);
            break;
        case InputKind::phases:
            p.f = sequence_from_phases(phases_from_json(doc));
            break;
    }
    return p;
}

Su2Sample analytic_target(const NlftPair& pair, cd z, int n) {
    Su2Sample m = pair_sample(pair, z);
    const cd zn = zpow(z, n);
    m.a11 *= zn;
    m.a21 *= zn;
    return m;
}

Su2Sample laurent_target(const NlftPair& pair, cd z, int n) {
    Su2Sample m = pair_sample(pair, z * z);
    const cd zn = zpow(z, n);
    m.a11 *= zn;
    m.a21 *= zn;
    m.a12 /= zn;
    m.a22 /= zn;
    return m;
}

json matrix_to_json(const Su2Sample& m) {
    return json{{"a11", complex_to_json(m.a11)},
                {"a12", complex_to_json(m.a12)},
                {"a21", complex_to_json(m.a21)},
                {"a22", complex_to_json(m.a22)}};
}

cd parse_point(const std::string& text) {
    std::istringstream in(text);
    double re = 0.0, im = 0.0;
    char sep = 0;
    if (!(in >> re))
        throw ValidationError("cannot parse evaluation point: " + text);
    if (in >> sep) {
        if (sep != ',' || !(in >> im))
            throw ValidationError("cannot parse evaluation point: " + text);
    }
    std::string rest;
    if (in >> rest)
        throw ValidationError("cannot parse evaluation point: " + text);
    return cd(re, im);
}

int run_complete(const GlobalOptions& g, const std::optional<double>& eta) {
    const LaurentPolynomial b = poly_from_json(read_input(g));
    const CompletionResult r = complete(b, g.eps, eta);
    write_json(g, completion_to_json(b, r));
    return 0;
}

int run_inverse(const GlobalOptions& g, const std::string& method_name_arg) {
    const BenchMethod method = method_from_name(method_name_arg);
    const Pipeline p = sequence_from_input(read_input(g), g.eps, method);
    json doc{{"f", sequence_to_json(p.f)}, {"method", ::qspkit::method_name(method)}};
    if (p.completion) {
        doc["a"] = poly_to_json(p.completion->a);
        doc["residual"] = p.completion->residual;
    }
    if (p.b) doc["b"] = poly_to_json(*p.b);
    write_json(g, doc);
    return 0;
}

int run_phases(const GlobalOptions& g, const std::string& method_name_arg,
               bool switched) {
    const BenchMethod method = method_from_name(method_name_arg);
    const json doc = read_input(g);
    GqspPhaseFactors ph;
    if (classify(unwrap(doc)) == InputKind::phases)
        ph = phases_from_json(doc);
    else
        ph = phases_from_sequence(sequence_from_input(doc, g.eps, method).f);
    if (switched) ph = switch_polynomials(ph);
    write_json(g, phases_to_json(ph));
    return 0;
}

int run_eval(const GlobalOptions& g, const std::vector<std::string>& z_args,
             int grid, const std::string& picture_name) {
    const Picture picture = picture_name == "laurent" ? Picture::Laurent
                                                      : Picture::Analytic;
    const GqspPhaseFactors ph = phases_from_json(read_input(g));
    std::vector<cd> points;
    for (const std::string& s : z_args) points.push_back(parse_point(s));
    if (points.empty()) {
        if (grid < 1) throw ValidationError("grid must be at least 1");
        for (int j = 0; j < grid; ++j) {
            const double t = 2.0 * 3.14159265358979323846 *
                             static_cast<double>(j) / static_cast<double>(grid);
            points.push_back(std::polar(1.0, t));
        }
    }
    json out;
    out["picture"] = picture == Picture::Laurent ? "laurent" : "analytic";
    out["points"] = json::array();
    for (const cd& z : points) {
        const Su2Sample m = evaluate_protocol(ph, z, picture);
        out["points"].push_back(json{{"z", complex_to_json(z)},
                                     {"matrix", matrix_to_json(m)},
                                     {"unitarity_defect", m.unitarity_error()}});
    }
    write_json(g, out);
    return 0;
}

int run_verify(const GlobalOptions& g, const std::string& method_name_arg) {
    const BenchMethod method = method_from_name(method_name_arg);
    const Pipeline p = sequence_from_input(read_input(g), g.eps, method);
    const NlftSequence& f = p.f;
    if (f.values.empty()) throw ValidationError("nothing to verify: empty sequence");

    json checks = json::array();
    bool ok = true;
    const auto push = [&](const std::string& name, double value, double tol) {
        const bool pass = std::isfinite(value) && value <= tol;
        ok = ok && pass;
        checks.push_back(json{
            {"name", name}, {"value", value}, {"tolerance", tol}, {"pass", pass}});
    };

    const NlftPair pair = forward_nlft(f);
    const int n = static_cast<int>(f.values.size()) - 1;
    const std::size_t grid = std::max<std::size_t>(
        8, next_power_of_two(4 * f.values.size()));

    if (p.completion && p.b) {
        push("completion_residual", p.completion->residual, 100.0 * g.eps);
        push("completion_error",
             completion_error(p.completion->a, *p.b, grid), 1e-12);
        push("forward_error",
             forward_error(p.completion->a, *p.b, f, grid), 1e-10);
    }

    push("nlft_properties", check_properties(f, g.seed).max(), 1e-12);

    const GqspPhaseFactors ph = phases_from_sequence(f);
    double sum = ph.lambda;
    for (const double t : ph.theta) sum += t;
    push("canonical_sum", std::abs(sum), 1e-12);

    const NlftSequence back = sequence_from_phases(ph);
    double round_trip = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        round_trip = std::max(round_trip, std::abs(back.values[i] - f.values[i]));
    push("phase_round_trip", round_trip, 1e-12);

    std::mt19937_64 gen(g.seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
    double analytic_dev = 0.0;
    double laurent_dev = 0.0;
    for (int j = 0; j < 16; ++j) {
        const cd z = std::polar(1.0, angle(gen));
        analytic_dev = std::max(
            analytic_dev,
            max_abs_diff(evaluate_protocol(ph, z, Picture::Analytic),
                         analytic_target(pair, z, n)));
        laurent_dev = std::max(
            laurent_dev,
            max_abs_diff(evaluate_protocol(ph, z, Picture::Laurent),
                         laurent_target(pair, z, n)));
    }
    push("protocol_analytic", analytic_dev, 1e-12);
    push("protocol_laurent", laurent_dev, 1e-12);

    write_json(g, json{{"ok", ok}, {"checks", checks}});
    if (!ok) throw NumericalError("verification tolerances exceeded");
    return 0;
}

int run_bench_cmd(const GlobalOptions& g, const std::vector<int>& degrees,
                  const std::vector<std::string>& methods, double eta,
                  int repeats) {
    BenchConfig cfg;
    cfg.degrees = degrees;
    cfg.eta = eta;
    cfg.eps = g.eps;
    cfg.seed = g.seed;
    cfg.repeats = repeats;
    for (const std::string& m : methods) cfg.methods.push_back(method_from_name(m));
    const std::vector<BenchRecord> records = run_bench(cfg);
    std::ostringstream out;
    if (g.format == "csv")
        emit_csv(records, out);
    else
        emit_json(records, cfg, out);
    write_output(g, out.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GQSP phase factors from complex target polynomials"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--eps", g.eps, "completion tolerance")->capture_default_str();
    app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--out", g.out, "output path (default: stdout)");
    app.add_option("--in", g.in, "input path (default: stdin)");

    std::optional<double> eta;
    double eta_value = 0.0;
    CLI::App* cmd_complete =
        app.add_subcommand("complete", "complement a target polynomial");
    CLI::Option* eta_opt =
        cmd_complete->add_option("--eta", eta_value, "admissibility margin");

    std::string method = "half-cholesky";
    CLI::App* cmd_inverse = app.add_subcommand(
        "inverse-nlft", "recover the coefficient sequence of a target");
    cmd_inverse->add_option("--method", method,
                            "half-cholesky | direct | layer-strip")
        ->capture_default_str();

    bool switched = false;
    CLI::App* cmd_phases =
        app.add_subcommand("phases", "synthesize GQSP phase factors");
    cmd_phases->add_option("--method", method,
                           "half-cholesky | direct | layer-strip")
        ->capture_default_str();
    cmd_phases->add_flag("--switch", switched,
                         "exchange the roles of the two output polynomials");

    std::vector<std::string> z_args;
    int grid = 8;
    std::string picture = "analytic";
    CLI::App* cmd_eval =
        app.add_subcommand("eval", "evaluate a phase-factor protocol");
    cmd_eval->add_option("--z", z_args, "evaluation point re,im (repeatable)");
    cmd_eval->add_option("--grid", grid, "equispaced points when --z is absent")
        ->capture_default_str();
    cmd_eval->add_option("--picture", picture, "analytic | laurent")
        ->check(CLI::IsMember({"analytic", "laurent"}))
        ->capture_default_str();

    CLI::App* cmd_verify = app.add_subcommand(
        "verify", "run the end-to-end identity checks on an input");
    cmd_verify->add_option("--method", method,
                           "half-cholesky | direct | layer-strip")
        ->capture_default_str();

    std::vector<int> degrees;
    std::vector<std::string> methods = {"half_cholesky"};
    double bench_eta = 0.5;
    int repeats = 1;
    CLI::App* cmd_bench =
        app.add_subcommand("bench", "accuracy and timing sweep");
    cmd_bench->add_option("--degrees", degrees, "target degrees, ascending")
        ->delimiter(',')
        ->required();
    cmd_bench->add_option("--methods", methods, "subset of bench methods")
        ->delimiter(',')
        ->capture_default_str();
    cmd_bench->add_option("--eta", bench_eta, "admissibility margin")
        ->capture_default_str();
    cmd_bench->add_option("--repeats", repeats, "instances per degree")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
        if (eta_opt->count() > 0) eta = eta_value;
        if (cmd_complete->parsed()) return run_complete(g, eta);
        if (cmd_inverse->parsed()) return run_inverse(g, method);
        if (cmd_phases->parsed()) return run_phases(g, method, switched);
        if (cmd_eval->parsed()) return run_eval(g, z_args, grid, picture);
        if (cmd_verify->parsed()) return run_verify(g, method);
        if (cmd_bench->parsed())
            return run_bench_cmd(g, degrees, methods, bench_eta, repeats);
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
        return 3;
    }
}
