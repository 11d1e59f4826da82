// trace_io.hpp: JSON trace documents.
//
// Document shape:
//   {"start": "<term>", "steps": [{"kind": "beta", "index": 1, "result": "<term>"},
//                                 {"kind": "alpha", "result": "<term>"}]}
// A standard sequence additionally carries "bound". Parsing is strict:
// unknown fields anywhere are rejected, as are missing ones.
#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "lamstd/standard.hpp"
#include "lamstd/syntax.hpp"

namespace lamstd {

struct TraceDocument {
    ReductionTrace trace;
    std::optional<std::size_t> bound;
};

namespace detail {

inline void require_fields(const nlohmann::json& obj, std::initializer_list<const char*> required,
                           std::initializer_list<const char*> optional, const std::string& what) {
    if (!obj.is_object()) throw InvalidTrace(what + " is not a JSON object");
    for (const char* f : required)
        if (!obj.contains(f)) throw InvalidTrace(what + " is missing field \"" + f + "\"");
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        bool known = false;
        for (const char* f : required) known = known || key == f;
        for (const char* f : optional) known = known || key == f;
        if (!known) throw InvalidTrace(what + " has unknown field \"" + key + "\"");
    }
}

inline std::string require_string(const nlohmann::json& obj, const char* field, const std::string& what) {
    if (!obj.at(field).is_string()) throw InvalidTrace(what + " field \"" + field + "\" is not a string");
    return obj.at(field).get<std::string>();
}

inline std::size_t require_index(const nlohmann::json& obj, const char* field, const std::string& what) {
    const auto& v = obj.at(field);
    if (!v.is_number_unsigned()) throw InvalidTrace(what + " field \"" + field + "\" is not a natural number");
    return v.get<std::size_t>();
}

}  // namespace detail

inline nlohmann::json step_to_json(const TraceStep& s) {
    nlohmann::json j;
    if (s.kind == TraceStep::Kind::beta) {
        j["kind"] = "beta";
        j["index"] = s.index;
    } else {
        j["kind"] = "alpha";
    }
    j["result"] = print_term(s.result);
    return j;
}

inline nlohmann::json trace_to_json(const ReductionTrace& t) {
    nlohmann::json steps = nlohmann::json::array();
    for (const TraceStep& s : t.steps) steps.push_back(step_to_json(s));
    return nlohmann::json{{"start", print_term(t.start)}, {"steps", std::move(steps)}};
}

inline nlohmann::json sequence_to_json(const StandardSequence& s) {
    nlohmann::json j = trace_to_json(ReductionTrace{s.start, s.steps});
    j["bound"] = s.bound;
    return j;
}

inline TraceDocument document_from_json(const nlohmann::json& j) {
    detail::require_fields(j, {"start", "steps"}, {"bound"}, "trace document");
    ReductionTrace t = empty_trace(parse_term(detail::require_string(j, "start", "trace document")));
    const auto& steps = j.at("steps");
    if (!steps.is_array()) throw InvalidTrace("trace document field \"steps\" is not an array");
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& sj = steps[i];
        std::string what = "step " + std::to_string(i + 1);
        if (!sj.is_object() || !sj.contains("kind") || !sj.at("kind").is_string())
            throw InvalidTrace(what + " has no \"kind\" string");
        std::string kind = sj.at("kind").get<std::string>();
        if (kind == "beta") {
            detail::require_fields(sj, {"kind", "index", "result"}, {}, what);
            t.steps.push_back(TraceStep::beta(detail::require_index(sj, "index", what),
                                              parse_term(detail::require_string(sj, "result", what))));
        } else if (kind == "alpha") {
            detail::require_fields(sj, {"kind", "result"}, {}, what);
            t.steps.push_back(TraceStep::alpha(parse_term(detail::require_string(sj, "result", what))));
        } else {
            throw InvalidTrace(what + " has unknown kind \"" + kind + "\"");
        }
    }
    TraceDocument doc{std::move(t), std::nullopt};
    if (j.contains("bound")) doc.bound = detail::require_index(j, "bound", "trace document");
    return doc;
}

inline TraceDocument document_from_string(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InvalidTrace("trace document is not valid JSON");
    return document_from_json(j);
}

// View a document as a standard sequence; an absent bound is taken as the
// last beta index so that plain traces can be checked for standardness too.
inline StandardSequence document_to_sequence(const TraceDocument& doc) {
    std::size_t bound = doc.bound ? *doc.bound : detail::last_beta_index(doc.trace.steps);
    return StandardSequence{doc.trace.start, doc.trace.steps, bound};
}

}  // namespace lamstd
