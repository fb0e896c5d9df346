#pragma once

// JSON encoding of fields, elements, polynomials and family reports.
//
//   element   [c0, c1, ...] over F_p, constant term first (an integer code is
//             also accepted on input)
//   LinPoly   [[...], [...], ...] coefficient of x^{q^i} at index i
//   ExpPoly   [{"exp": "<decimal>", "coeff": element}, ...]
//   CycInt    {"p": p, "coeffs": ["<decimal>", ...]} in the basis 1, z, .., z^{p-2}
//   table     [code, code, ...] indexed by element code
//
// Objects use insertion order, so the same report always prints the same bytes.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "ppinv/cyclotomic.hpp"
#include "ppinv/exppoly.hpp"
#include "ppinv/families.hpp"
#include "ppinv/field.hpp"
#include "ppinv/linpoly.hpp"

namespace ppinv {

using Json = nlohmann::ordered_json;

// ---- primitives -------------------------------------------------------------

inline Json to_json(const FieldSpec& s) { return Json{{"p", s.p}, {"e", s.e}, {"n", s.n}}; }

inline FieldSpec field_spec_from_json(const Json& j) {
    if (!j.is_object()) throw PreconditionError("field must be an object {p, e, n}");
    FieldSpec s;
    for (const char* key : {"p", "e", "n"})
        if (!j.contains(key) || !j.at(key).is_number_unsigned())
            throw PreconditionError(std::string("field is missing a non-negative integer '") + key + "'");
    s.p = j.at("p").get<std::uint32_t>();
    s.e = j.at("e").get<std::uint32_t>();
    s.n = j.at("n").get<std::uint32_t>();
    return s;
}

inline Json to_json(const FieldElem& a) { return Json(a.coeffs()); }

inline FieldElem elem_from_json(const FieldCtx& f, const Json& j) {
    if (j.is_number_integer()) {
        const auto v = j.get<std::int64_t>();
        if (v < 0 || static_cast<std::uint64_t>(v) >= f.order())
            throw PreconditionError("element code " + std::to_string(v) + " out of range");
        return f.elem(static_cast<Code>(v));
    }
    if (!j.is_array()) throw PreconditionError("element must be a coefficient array or an integer code");
    if (j.size() > f.degree())
        throw PreconditionError("element has " + std::to_string(j.size()) + " coefficients, field degree is " +
                                std::to_string(f.degree()));
    std::vector<std::uint32_t> cs;
    for (const auto& c : j) {
        if (!c.is_number_integer()) throw PreconditionError("element coefficients must be integers");
        const auto v = c.get<std::int64_t>();
        if (v < 0 || v >= static_cast<std::int64_t>(f.p()))
            throw PreconditionError("coefficient " + std::to_string(v) + " not in [0, p)");
        cs.push_back(static_cast<std::uint32_t>(v));
    }
    cs.resize(f.degree(), 0);
    return f.from_coeffs(cs);
}

inline Json to_json(const LinPoly& l) {
    Json out = Json::array();
    for (const auto& c : l.coeffs()) out.push_back(to_json(c));
    return out;
}

inline LinPoly linpoly_from_json(const FieldCtx& f, const Json& j) {
    if (!j.is_array()) throw PreconditionError("linearized polynomial must be an array of elements");
    if (j.size() > f.n()) throw PreconditionError("linearized polynomial has more than n coefficients");
    std::vector<FieldElem> cs;
    for (const auto& c : j) cs.push_back(elem_from_json(f, c));
    return LinPoly(f, cs);
}

inline Json to_json(const ExpPoly& p) {
    Json out = Json::array();
    for (const auto& t : p.terms()) out.push_back(Json{{"exp", std::to_string(t.exp)}, {"coeff", to_json(t.coeff)}});
    return out;
}

inline ExpPoly exppoly_from_json(const FieldCtx& f, const Json& j) {
    if (!j.is_array()) throw PreconditionError("polynomial must be an array of terms");
    ExpPoly p(f);
    for (const auto& t : j) {
        if (!t.is_object() || !t.contains("exp") || !t.contains("coeff"))
            throw PreconditionError("term must be {exp, coeff}");
        const auto& e = t.at("exp");
        const BigInt exp = e.is_string() ? from_decimal(e.get<std::string>()) : BigInt(e.get<std::int64_t>());
        p.add_term(exp, elem_from_json(f, t.at("coeff")));
    }
    return p;
}

inline Json to_json(const CycInt& c) {
    Json cs = Json::array();
    for (const auto& v : c.coeffs()) cs.push_back(to_decimal(v));
    return Json{{"p", c.p()}, {"coeffs", cs}};
}

inline CycInt cycint_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("p") || !j.contains("coeffs")) throw PreconditionError("expected {p, coeffs}");
    const auto p = j.at("p").get<std::uint32_t>();
    std::vector<BigInt> h(p);
    const auto& cs = j.at("coeffs");
    if (!cs.is_array() || cs.size() != p - 1) throw PreconditionError("cyclotomic integer needs p-1 coefficients");
    for (std::size_t i = 0; i < cs.size(); ++i) h[i] = from_decimal(cs[i].get<std::string>());
    return CycInt::from_histogram(p, h);  // h[p-1] = 0, so this is the identity on coefficients
}

// ---- reports ----------------------------------------------------------------

struct ReportOptions {
    /// Value tables larger than this are replaced by their size.
    std::uint64_t table_limit = std::uint64_t{1} << 12;
};

inline Json to_json(const MapForm& m, const ReportOptions& opt = {}) {
    Json j{{"formula", m.formula}};
    if (m.poly) {
        j["poly"] = to_json(*m.poly);
    } else if (m.table) {
        if (m.table->values.size() <= opt.table_limit)
            j["table"] = m.table->values;
        else
            j["table_size"] = m.table->values.size();
    }
    return j;
}

inline Json params_to_json(const std::vector<Param>& params) {
    Json out = Json::object();
    for (const auto& p : params)
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, FieldElem> || std::is_same_v<T, LinPoly>)
                    out[p.name] = to_json(v);
                else
                    out[p.name] = v;
            },
            p.value);
    return out;
}

inline Json to_json(const Check& c) {
    Json j{{"name", c.name}, {"pass", c.pass}};
    if (!c.witness.empty()) {
        Json w = Json::object();
        for (const auto& [name, value] : c.witness) w[name] = to_json(value);
        j["witness"] = w;
    }
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

inline Json to_json(const FamilyInstance& inst, const ReportOptions& opt = {}) {
    Json j;
    j["family_id"] = std::string(family_tag(inst.id));
    j["family"] = std::string(family_name(inst.id));
    j["field"] = to_json(inst.field->spec());
    j["params"] = params_to_json(inst.params);
    j["forward"] = to_json(inst.forward, opt);
    if (!inst.inverse.formula.empty() || !inst.inverse.empty()) j["inverse"] = to_json(inst.inverse, opt);
    if (inst.companion)
        j["companion"] = Json{{"forward", to_json(inst.companion->first, opt)},
                              {"inverse", to_json(inst.companion->second, opt)}};
    Json checks = Json::array();
    for (const auto& c : inst.checks) checks.push_back(to_json(c));
    j["checks"] = checks;
    j["notes"] = inst.notes;
    j["verified"] = inst.verified();
    return j;
}

/// Recovers build_family arguments from a params object. Derived values
/// (the corollary's k, the f4k element alpha) are ignored.
inline FamilyArgs args_from_json(const FieldCtx* f, const Json& params) {
    if (!params.is_object()) throw PreconditionError("params must be an object");
    FamilyArgs args;
    auto need_field = [&](const std::string& key) -> const FieldCtx& {
        if (f == nullptr) throw PreconditionError("parameter '" + key + "' needs a field");
        return *f;
    };
    auto as_int = [](const std::string& key, const Json& v) {
        if (!v.is_number_integer()) throw PreconditionError("parameter '" + key + "' must be an integer");
        return v.get<std::int64_t>();
    };
    for (const auto& [key, v] : params.items()) {
        if (key == "a") args.a = elem_from_json(need_field(key), v);
        else if (key == "b") args.b = elem_from_json(need_field(key), v);
        else if (key == "beta") args.beta = elem_from_json(need_field(key), v);
        else if (key == "L") args.L = linpoly_from_json(need_field(key), v);
        else if (key == "k") args.k = as_int(key, v);
        else if (key == "form") args.form = as_int(key, v);
        else if (key == "alpha_choice") args.alpha = as_int(key, v);
        else if (key == "variant") {
            if (!v.is_string()) throw PreconditionError("parameter 'variant' must be a string");
            args.variant = v.get<std::string>();
        } else if (key != "alpha") {
            throw PreconditionError("unknown parameter '" + key + "'");
        }
    }
    return args;
}

/// The parts of a report needed to rebuild and compare it.
struct ReportSummary {
    FamilyId id{};
    FieldSpec field;
    Json params;
    std::vector<std::pair<std::string, bool>> checks;
    bool verified = false;
};

inline ReportSummary summary_from_json(const Json& j) {
    if (!j.is_object()) throw PreconditionError("report must be an object");
    for (const char* key : {"family_id", "field", "params", "checks", "verified"})
        if (!j.contains(key)) throw PreconditionError(std::string("report is missing '") + key + "'");
    ReportSummary s;
    const auto id = parse_family(j.at("family_id").get<std::string>());
    if (!id) throw PreconditionError("unknown family '" + j.at("family_id").get<std::string>() + "'");
    s.id = *id;
    s.field = field_spec_from_json(j.at("field"));
    s.params = j.at("params");
    for (const auto& c : j.at("checks")) s.checks.emplace_back(c.at("name").get<std::string>(), c.at("pass").get<bool>());
    s.verified = j.at("verified").get<bool>();
    return s;
}

/// Rebuilds the instance a report describes.
inline FamilyInstance rebuild(const ReportSummary& s, const ScanPolicy& policy = {}) {
    const Field field = make_field(s.field, policy.bound);
    return build_family(s.id, field, args_from_json(field.get(), s.params), policy);
}

}  // namespace ppinv
