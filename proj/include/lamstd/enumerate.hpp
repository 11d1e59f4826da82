// enumerate.hpp: exhaustive trace enumeration between terms.
//
// All beta traces from a start term up to a step budget, emitted in
// lexicographic order of their index sequences (a trace precedes its
// extensions). No alpha steps are ever inserted. This is deliberately the
// dumbest correct search; it serves as the reference the standardizer is
// tested against.
#pragma once

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "lamstd/beta.hpp"

namespace lamstd {

inline constexpr std::size_t default_trace_cap = 100000;

// Cap override from LAMSTD_FRONTIER_CAP, if set and numeric.
inline std::size_t trace_cap_from_env() {
    const char* env = std::getenv("LAMSTD_FRONTIER_CAP");
    if (!env || !*env) return default_trace_cap;
    char* tail = nullptr;
    unsigned long long v = std::strtoull(env, &tail, 10);
    if (tail == env || *tail != '\0') return default_trace_cap;
    return static_cast<std::size_t>(v);
}

namespace detail {

inline void enumerate_rec(const ReductionTrace& t, std::size_t depth_left, std::size_t cap,
                          std::vector<ReductionTrace>& out) {
    if (out.size() >= cap)
        throw ResourceLimit("trace enumeration exceeded cap of " + std::to_string(cap));
    out.push_back(t);
    if (depth_left == 0) return;
    std::size_t total = count_redexes(t.end());
    for (std::size_t n = 0; n < total; ++n) {
        ReductionTrace ext = t;
        ext.steps.push_back(TraceStep::beta(n, contract_at(t.end(), n)));
        enumerate_rec(ext, depth_left - 1, cap, out);
    }
}

}  // namespace detail

inline std::vector<ReductionTrace> enumerate_traces(const Term& m, std::size_t depth,
                                                    std::size_t cap = default_trace_cap) {
    std::vector<ReductionTrace> out;
    detail::enumerate_rec(empty_trace(m), depth, cap, out);
    return out;
}

// First enumerated trace from m to n: syntactic end match wins; failing
// that, an alpha-equivalent end with an explicit closing alpha step.
inline std::optional<ReductionTrace> find_trace(const Term& m, const Term& n, std::size_t depth,
                                                std::size_t cap = default_trace_cap) {
    std::vector<ReductionTrace> all = enumerate_traces(m, depth, cap);
    for (const ReductionTrace& t : all)
        if (t.end() == n) return t;
    for (const ReductionTrace& t : all) {
        if (alpha_equivalent(t.end(), n)) {
            ReductionTrace out = t;
            out.steps.push_back(TraceStep::alpha(n));
            return out;
        }
    }
    return std::nullopt;
}

}  // namespace lamstd
