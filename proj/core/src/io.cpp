#include "lpconj/io.hpp"

#include "lpconj/error.hpp"

#include <charconv>
#include <sstream>
#include <system_error>

namespace lpconj::io {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw ParseError(std::string("missing field \"") + key + "\"");
    }
    return j.at(key);
}

double real_from_json(const json& j, const char* what) {
    if (!j.is_number()) {
        throw ParseError(std::string(what) + " must be a number");
    }
    return j.get<double>();
}

std::string kind_of(const json& j) {
    const json& k = field(j, "kind");
    if (!k.is_string()) {
        throw ParseError("\"kind\" must be a string");
    }
    return k.get<std::string>();
}

json real_list(const std::vector<double>& v) {
    json out = json::array();
    for (double s : v) {
        out.push_back(s);
    }
    return out;
}

} // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw ParseError("complex scalar must be [re, im] or a number, got " + j.dump());
}

json to_json(const WeightSeq& w) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, WeightSeq::Constant>) {
                return {{"kind", "constant"}, {"value", complex_to_json(v.value)}};
            } else if constexpr (std::is_same_v<T, WeightSeq::List>) {
                json values = json::array();
                for (auto z : v.values) {
                    values.push_back(complex_to_json(z));
                }
                return {{"kind", "list"}, {"values", values}, {"tail", complex_to_json(v.tail)}};
            } else {
                return {{"kind", "harmonic"}, {"c", complex_to_json(v.c)}, {"a", complex_to_json(v.a)}};
            }
        },
        w.descriptor());
}

WeightSeq weights_from_json(const json& j) {
    const std::string kind = kind_of(j);
    if (kind == "constant") {
        return WeightSeq::constant(complex_from_json(field(j, "value")));
    }
    if (kind == "list") {
        const json& values = field(j, "values");
        if (!values.is_array()) {
            throw ParseError("\"values\" must be an array");
        }
        std::vector<Complex> v;
        for (const auto& z : values) {
            v.push_back(complex_from_json(z));
        }
        return WeightSeq::list(std::move(v), complex_from_json(field(j, "tail")));
    }
    if (kind == "harmonic") {
        return WeightSeq::harmonic(complex_from_json(field(j, "c")), complex_from_json(field(j, "a")));
    }
    throw ParseError("unknown weight kind \"" + kind + "\"");
}

json to_json(const ExponentSeq& s) {
    json out = std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ExponentSeq::Constant>) {
                return {{"kind", "constant"}, {"value", v.value}};
            } else if constexpr (std::is_same_v<T, ExponentSeq::List>) {
                return {{"kind", "list"}, {"values", real_list(v.values)}, {"tail", v.tail}};
            } else if constexpr (std::is_same_v<T, ExponentSeq::Harmonic>) {
                return {{"kind", "harmonic"}, {"c", v.c}, {"a", v.a}};
            } else {
                return {{"kind", "log_modulus"},
                        {"weights", to_json(v.weights)},
                        {"base", v.base},
                        {"reciprocal", v.reciprocal}};
            }
        },
        s.descriptor());
    out["bound"] = s.bound();
    return out;
}

ExponentSeq exponents_from_json(const json& j) {
    std::optional<double> bound;
    if (j.is_object() && j.contains("bound")) {
        bound = real_from_json(j.at("bound"), "\"bound\"");
    }
    const std::string kind = kind_of(j);
    if (kind == "constant") {
        return ExponentSeq(ExponentSeq::Constant{real_from_json(field(j, "value"), "\"value\"")}, bound);
    }
    if (kind == "list") {
        const json& values = field(j, "values");
        if (!values.is_array()) {
            throw ParseError("\"values\" must be an array");
        }
        std::vector<double> v;
        for (const auto& s : values) {
            v.push_back(real_from_json(s, "exponent"));
        }
        return ExponentSeq(ExponentSeq::List{std::move(v), real_from_json(field(j, "tail"), "\"tail\"")},
                           bound);
    }
    if (kind == "harmonic") {
        return ExponentSeq(ExponentSeq::Harmonic{real_from_json(field(j, "c"), "\"c\""),
                                                 real_from_json(field(j, "a"), "\"a\"")},
                           bound);
    }
    if (kind == "log_modulus") {
        bool reciprocal = false;
        if (j.contains("reciprocal")) {
            if (!j.at("reciprocal").is_boolean()) {
                throw ParseError("\"reciprocal\" must be a boolean");
            }
            reciprocal = j.at("reciprocal").get<bool>();
        }
        return ExponentSeq(ExponentSeq::LogModulus{weights_from_json(field(j, "weights")),
                                                   real_from_json(field(j, "base"), "\"base\""),
                                                   reciprocal},
                           bound);
    }
    throw ParseError("unknown exponent kind \"" + kind + "\"");
}

json to_json(const FinSeq& x) {
    json entries = json::object();
    for (const auto& e : x.entries()) {
        entries[std::to_string(e.index)] = complex_to_json(e.value);
    }
    return {{"p", x.p()}, {"entries", entries}};
}

FinSeq finseq_from_json(const json& j) {
    const double p = real_from_json(field(j, "p"), "\"p\"");
    const json& entries = field(j, "entries");
    if (!entries.is_object()) {
        throw ParseError("\"entries\" must be an object keyed by index");
    }
    std::vector<Entry> out;
    for (const auto& [key, value] : entries.items()) {
        Index n = 0;
        const auto* end = key.data() + key.size();
        const auto [ptr, ec] = std::from_chars(key.data(), end, n);
        if (ec != std::errc{} || ptr != end) {
            throw ParseError("entry key \"" + key + "\" is not a positive integer");
        }
        out.push_back({n, complex_from_json(value)});
    }
    return FinSeq(p, std::move(out));
}

json to_json(const DiagonalOperator& d) { return {{"p", d.p()}, {"weights", to_json(d.weights())}}; }

json to_json(const ConjugacyMap& m) {
    json stages = json::array();
    for (const auto& s : m.stages()) {
        if (const auto* w = std::get_if<WarpStage>(&s)) {
            stages.push_back({{"type", "warp"}, {"inverse", w->inverse}, {"exponents", to_json(w->exponents)}});
        } else {
            const auto& r = std::get<RotationStage>(s);
            stages.push_back({{"type", "rotation"}, {"inverse", r.inverse}, {"weights", to_json(r.weights)}});
        }
    }
    return {{"p", m.p()},
            {"source", to_json(m.source().weights())},
            {"target", to_json(m.target().weights())},
            {"stages", stages}};
}

json to_json(const DefectReport& r) {
    return {{"samples", r.samples},
            {"max_defect", r.max_defect},
            {"mean_defect", r.mean_defect},
            {"max_abs_defect", r.max_abs_defect},
            {"worst_witness", to_json(r.worst_witness)}};
}

json to_json(const EscapeProfile& e) {
    json rows = json::array();
    for (const auto& r : e.rows) {
        json row = {{"index", r.index}, {"sentinel", !r.escape_time.has_value()}};
        row["escape_time"] = r.escape_time ? json(*r.escape_time) : json(nullptr);
        rows.push_back(row);
    }
    return {{"weights", to_json(e.weights)},
            {"p", e.p},
            {"epsilon", e.epsilon},
            {"radius_factor", e.radius_factor},
            {"radius", e.radius},
            {"cap", e.cap},
            {"rows", rows},
            {"divergence_flag", e.divergence_flag},
            {"divergence_flag_is_heuristic", true}};
}

json to_json(const std::vector<RadicandInfo>& diagnostics) {
    json out = json::array();
    for (const auto& d : diagnostics) {
        out.push_back({{"index", d.index},
                       {"exponent", d.exponent},
                       {"tail_hi", d.tail_hi},
                       {"tail_lo", d.tail_lo},
                       {"radicand", d.radicand},
                       {"condition", d.condition}});
    }
    return out;
}

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) {
        throw Error("format_double: conversion failed");
    }
    return std::string(buf, ptr);
}

std::string finseq_csv(const FinSeq& x) {
    std::string out = "index,re,im\n";
    for (const auto& e : x.entries()) {
        out += std::to_string(e.index) + "," + format_double(e.value.real()) + "," +
               format_double(e.value.imag()) + "\n";
    }
    return out;
}

std::string escape_profile_csv(const EscapeProfile& e) {
    std::string out = "index,escape_time,sentinel_flag\n";
    for (const auto& r : e.rows) {
        out += std::to_string(r.index) + "," + (r.escape_time ? std::to_string(*r.escape_time) : "") +
               "," + (r.escape_time ? "0" : "1") + "\n";
    }
    return out;
}

} // namespace lpconj::io
