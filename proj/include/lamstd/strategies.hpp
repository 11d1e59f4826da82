// strategies.hpp: head reduction of application chains, and leftmost reduction.
//
// hap_step contracts the head redex of an application chain
// (\x. M) N P ... -> M[x:=N] P ... and never fires on a variable or under an
// abstraction. Where it fires it coincides syntactically with contracting
// redex 0, which is why hap prefixes later embed into standard sequences.
#pragma once

#include <optional>
#include <utility>

#include "lamstd/beta.hpp"

namespace lamstd {

inline std::optional<Term> hap_step(const Term& m) {
    if (!m.is_application()) return std::nullopt;
    Term f = m.fun();
    if (f.is_abstraction())
        return single_subst(f.body(), f.name(), m.arg());
    if (auto r = hap_step(f))
        return Term::application(*std::move(r), m.arg());
    return std::nullopt;
}

inline std::optional<Term> leftmost_step(const Term& m) {
    if (count_redexes(m) == 0) return std::nullopt;
    return contract_at(m, 0);
}

// Checked form of: a head contraction is the leftmost contraction.
inline bool hap_implies_leftmost(const Term& m) {
    auto h = hap_step(m);
    if (!h)
        throw PreconditionViolated("hap_implies_leftmost: term has no head redex");
    return leftmost_step(m) == h;
}

// A trace whose beta steps are all head contractions (index 0); alpha steps
// may be interleaved. validate_hap is the membership check.
using HapTrace = ReductionTrace;

inline bool validate_hap(const HapTrace& t) {
    const Term* cur = &t.start;
    for (const TraceStep& s : t.steps) {
        if (s.kind == TraceStep::Kind::beta) {
            if (s.index != 0) return false;
            auto h = hap_step(*cur);
            if (!h || *h != s.result) return false;
        } else {
            if (!alpha_equivalent(*cur, s.result)) return false;
        }
        cur = &s.result;
    }
    return true;
}

// Head reduction is stable under applying one more argument on the right.
inline HapTrace hap_app_right(const HapTrace& t, const Term& p) {
    HapTrace out = empty_trace(Term::application(t.start, p));
    out.steps.reserve(t.steps.size());
    for (const TraceStep& s : t.steps) {
        Term r = Term::application(s.result, p);
        out.steps.push_back(s.kind == TraceStep::Kind::beta ? TraceStep::beta(0, std::move(r))
                                                           : TraceStep::alpha(std::move(r)));
    }
    return out;
}

// One head step survives substitution: if m head-steps to target, then the
// image of m head-steps to a term alpha-equivalent to the image of target.
// The equivalence is checked and reported, not assumed.
struct HapSubstResult {
    Term result;
    bool alpha_ok;
};

inline HapSubstResult hap_subst_step(const Term& m, const Term& target, const Substitution& s) {
    auto h = hap_step(m);
    if (!h || *h != target)
        throw PreconditionViolated("hap_subst_step: target is not the head step of m");
    auto img_step = hap_step(apply_subst(m, s));
    if (!img_step)
        throw Error("hap_subst_step: image lost its head redex");
    return HapSubstResult{*img_step, alpha_equivalent(*img_step, apply_subst(target, s))};
}

// Whole head-reduction traces survive substitution. Beta steps whose image
// lands only alpha-close to the substituted result get an explicit trailing
// alpha step; alpha steps collapse because alpha-equivalent terms have
// identical images.
inline HapTrace hap_trace_subst(const HapTrace& t, const Substitution& s) {
    HapTrace out = empty_trace(apply_subst(t.start, s));
    for (const TraceStep& step : t.steps) {
        // Invariant: out.end() is the image of the predecessor of `step`.
        if (step.kind == TraceStep::Kind::beta) {
            auto img_step = hap_step(out.end());
            if (!img_step)
                throw PreconditionViolated("hap_trace_subst: trace is not head reduction");
            Term stepped = *std::move(img_step);
            Term target_img = apply_subst(step.result, s);
            bool adjust = stepped != target_img;
            out.steps.push_back(TraceStep::beta(0, std::move(stepped)));
            if (adjust) out.steps.push_back(TraceStep::alpha(std::move(target_img)));
        }
        // original alpha step: predecessor and result have identical images,
        // so the output trace does not move
    }
    return out;
}

// Outcome of fuelled leftmost normalization; on fuel exhaustion the partial
// trace is still valid and ends at the last term reached.
struct NormalizeOutcome {
    bool normalized;
    ReductionTrace trace;
};

inline NormalizeOutcome normalize_leftmost(const Term& m, std::size_t fuel = 10000) {
    ReductionTrace trace = empty_trace(m);
    Term cur = m;
    for (std::size_t used = 0; count_redexes(cur) != 0; ++used) {
        if (used == fuel) return NormalizeOutcome{false, std::move(trace)};
        cur = contract_at(cur, 0);
        trace.steps.push_back(TraceStep::beta(0, cur));
    }
    return NormalizeOutcome{true, std::move(trace)};
}

}  // namespace lamstd
