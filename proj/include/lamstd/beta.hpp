// beta.hpp: positional beta-contraction and reduction traces.
//
// Redexes are numbered left to right as the term is written: in an
// application (f x) with f an abstraction, the head redex is 0, redexes
// inside f come next, then redexes inside x; a non-abstraction f contributes
// no head redex. contract_at is total on valid indices and deterministic,
// which is what lets a trace be replayed and checked syntactically.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lamstd/alpha.hpp"
#include "lamstd/term.hpp"

namespace lamstd {

using RedexIndex = std::size_t;

inline bool is_abstraction(const Term& m) { return m.is_abstraction(); }

inline std::size_t count_redexes(const Term& m) {
    switch (m.kind()) {
    case Term::Kind::variable:
        return 0;
    case Term::Kind::application:
        return count_redexes(m.fun()) + count_redexes(m.arg()) + (m.fun().is_abstraction() ? 1 : 0);
    case Term::Kind::abstraction:
        return count_redexes(m.body());
    }
    return 0;
}

namespace detail {

// Where redex n of an application (fun arg) sits: the head itself, inside
// fun, or inside arg; `inner` is the index within that subterm.
struct RedexLocation {
    enum class Where { head, fun, arg };
    Where where;
    std::size_t inner;
};

inline RedexLocation locate_app_redex(const Term& app, std::size_t n) {
    std::size_t in_fun = count_redexes(app.fun());
    std::size_t in_arg = count_redexes(app.arg());
    bool head = app.fun().is_abstraction();
    std::size_t total = in_fun + in_arg + (head ? 1 : 0);
    if (n >= total)
        throw IndexOutOfRange("redex index " + std::to_string(n) + " out of range (term has " +
                              std::to_string(total) + ")");
    if (head) {
        if (n == 0) return {RedexLocation::Where::head, 0};
        if (n <= in_fun) return {RedexLocation::Where::fun, n - 1};
        return {RedexLocation::Where::arg, n - 1 - in_fun};
    }
    if (n < in_fun) return {RedexLocation::Where::fun, n};
    return {RedexLocation::Where::arg, n - in_fun};
}

}  // namespace detail

inline Term contract_at(const Term& m, std::size_t n) {
    switch (m.kind()) {
    case Term::Kind::variable:
        throw IndexOutOfRange("redex index " + std::to_string(n) + " out of range (term has 0)");
    case Term::Kind::abstraction:
        return Term::abstraction(m.name(), contract_at(m.body(), n));
    case Term::Kind::application: {
        auto loc = detail::locate_app_redex(m, n);
        switch (loc.where) {
        case detail::RedexLocation::Where::head:
            return single_subst(m.fun().body(), m.fun().name(), m.arg());
        case detail::RedexLocation::Where::fun:
            return Term::application(contract_at(m.fun(), loc.inner), m.arg());
        case detail::RedexLocation::Where::arg:
            return Term::application(m.fun(), contract_at(m.arg(), loc.inner));
        }
    }
    }
    throw Error("unreachable term kind");
}

inline std::vector<std::pair<RedexIndex, Term>> enumerate_successors(const Term& m) {
    std::vector<std::pair<RedexIndex, Term>> out;
    std::size_t total = count_redexes(m);
    out.reserve(total);
    for (std::size_t n = 0; n < total; ++n)
        out.emplace_back(n, contract_at(m, n));
    return out;
}

// Contracting alpha-equivalent terms at the same index lands in the same
// alpha class. The check is carried out, not assumed; alpha_ok reports it.
struct TransportResult {
    Term result;
    bool alpha_ok;
};

inline TransportResult transport_beta_along_alpha(const Term& m, std::size_t n, const Term& m_prime) {
    if (!alpha_equivalent(m, m_prime))
        throw PreconditionViolated("transport_beta_along_alpha: terms are not alpha-equivalent");
    Term via_m = contract_at(m, n);
    Term via_m_prime = contract_at(m_prime, n);
    return TransportResult{via_m_prime, alpha_equivalent(via_m_prime, via_m)};
}

struct TraceStep {
    enum class Kind { beta, alpha };
    Kind kind;
    std::size_t index;  // meaningful for beta steps only
    Term result;

    static TraceStep beta(std::size_t n, Term r) { return TraceStep{Kind::beta, n, std::move(r)}; }
    static TraceStep alpha(Term r) { return TraceStep{Kind::alpha, 0, std::move(r)}; }

    friend bool operator==(const TraceStep& a, const TraceStep& b) {
        if (a.kind != b.kind || a.result != b.result) return false;
        return a.kind == Kind::alpha || a.index == b.index;
    }
    friend bool operator!=(const TraceStep& a, const TraceStep& b) { return !(a == b); }
};

// A start term plus checked steps. Beta steps must replay syntactically via
// contract_at; alpha steps must be alpha-equivalent to their predecessor.
struct ReductionTrace {
    Term start;
    std::vector<TraceStep> steps;

    const Term& end() const { return steps.empty() ? start : steps.back().result; }
    std::size_t beta_count() const {
        std::size_t k = 0;
        for (const auto& s : steps)
            if (s.kind == TraceStep::Kind::beta) ++k;
        return k;
    }

    friend bool operator==(const ReductionTrace& a, const ReductionTrace& b) {
        return a.start == b.start && a.steps == b.steps;
    }
    friend bool operator!=(const ReductionTrace& a, const ReductionTrace& b) { return !(a == b); }
};

inline ReductionTrace empty_trace(Term start) { return ReductionTrace{std::move(start), {}}; }

inline ReductionTrace concat_traces(const ReductionTrace& a, const ReductionTrace& b) {
    if (a.end() != b.start)
        throw EndpointMismatch("concat_traces: first trace ends where the second does not start");
    ReductionTrace out = a;
    out.steps.insert(out.steps.end(), b.steps.begin(), b.steps.end());
    return out;
}

// First failure in a trace, as a human-readable reason; steps are numbered
// from 1 in diagnostics.
inline std::optional<std::string> explain_trace_failure(const ReductionTrace& t) {
    const Term* cur = &t.start;
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const TraceStep& s = t.steps[i];
        std::string label = "step " + std::to_string(i + 1);
        if (s.kind == TraceStep::Kind::beta) {
            if (s.index >= count_redexes(*cur))
                return "beta " + label + " index " + std::to_string(s.index) + " out of range";
            if (contract_at(*cur, s.index) != s.result)
                return "beta " + label + " does not replay to its recorded result";
        } else {
            if (!alpha_equivalent(*cur, s.result))
                return "alpha " + label + " is not alpha-equivalent to its predecessor";
        }
        cur = &s.result;
    }
    return std::nullopt;
}

inline bool validate_trace(const ReductionTrace& t) {
    return !explain_trace_failure(t).has_value();
}

// Checked form of: alpha-equivalent terms have equal redex counts.
inline bool same_redex_count(const Term& a, const Term& b) {
    if (!alpha_equivalent(a, b))
        throw PreconditionViolated("same_redex_count: terms are not alpha-equivalent");
    return count_redexes(a) == count_redexes(b);
}

}  // namespace lamstd
