#pragma once

#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qspkit/errors.hpp"
#include "qspkit/gqsp.hpp"
#include "qspkit/laurent.hpp"
#include "qspkit/nlft.hpp"
#include "qspkit/weiss.hpp"

// JSON wire format.  Complex numbers are [re, im] pairs; polynomials carry
// their lowest exponent plus the dense coefficient run; malformed documents
// surface as ValidationError so the CLI can map them to exit code 2.
namespace qspkit {

using json = nlohmann::json;

inline json complex_to_json(const cd& z) {
    return json::array({z.real(), z.imag()});
}

inline cd complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ValidationError("expected a complex number as [re, im]");
    return cd(j[0].get<double>(), j[1].get<double>());
}

inline json complex_list_to_json(const std::vector<cd>& v) {
    json out = json::array();
    for (const cd& z : v) out.push_back(complex_to_json(z));
    return out;
}

inline std::vector<cd> complex_list_from_json(const json& j, const char* what) {
    if (!j.is_array())
        throw ValidationError(std::string(what) + " must be an array");
    std::vector<cd> out;
    out.reserve(j.size());
    for (const json& e : j) out.push_back(complex_from_json(e));
    return out;
}

inline json poly_to_json(const LaurentPolynomial& p) {
    return json{{"support_start", p.support_start},
                {"coeffs", complex_list_to_json(p.coeffs)}};
}

inline LaurentPolynomial poly_from_json(const json& j) {
    if (!j.is_object() || !j.contains("coeffs"))
        throw ValidationError("polynomial must be an object with a coeffs array");
    LaurentPolynomial p;
    p.support_start = j.value("support_start", 0);
    p.coeffs = complex_list_from_json(j.at("coeffs"), "coeffs");
    if (p.coeffs.empty()) p = LaurentPolynomial::zero();
    return p;
}

inline json sequence_to_json(const NlftSequence& f) {
    return json{{"support_start", f.support_start},
                {"values", complex_list_to_json(f.values)}};
}

inline NlftSequence sequence_from_json(const json& j) {
    if (!j.is_object() || !j.contains("values"))
        throw ValidationError("sequence must be an object with a values array");
    NlftSequence f;
    f.support_start = j.value("support_start", 0);
    f.values = complex_list_from_json(j.at("values"), "values");
    return f;
}

inline json phases_to_json(const GqspPhaseFactors& p) {
    return json{{"lambda", p.lambda},
                {"phi", p.phi},
                {"theta", p.theta},
                {"n", p.n},
                {"canonical", p.canonical}};
}

inline GqspPhaseFactors phases_from_json(const json& j) {
    if (!j.is_object() || !j.contains("lambda") || !j.contains("phi") ||
        !j.contains("theta"))
        throw ValidationError("phases must be an object with lambda, phi, theta");
    GqspPhaseFactors p;
    try {
        p.lambda = j.at("lambda").get<double>();
        p.phi = j.at("phi").get<std::vector<double>>();
        p.theta = j.at("theta").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed phases: ") + e.what());
    }
    p.n = j.value("n", static_cast<int>(p.phi.size()) - 1);
    p.canonical = j.value("canonical", false);
    return p;
}

inline json completion_to_json(const LaurentPolynomial& b,
                               const CompletionResult& r) {
    return json{{"b", poly_to_json(b)},
                {"a", poly_to_json(r.a)},
                {"c_hat", complex_list_to_json(r.c_hat)},
                {"grid_size", r.grid_size},
                {"eta_used", r.eta_used},
                {"residual", r.residual}};
}

inline json parse_json(std::istream& in) {
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
}

inline json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace qspkit
