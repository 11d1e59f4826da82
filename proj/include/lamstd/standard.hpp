// standard.hpp: standard derivations and the standardization pipeline.
//
// A StdDerivation is a checkable certificate that its source reduces to its
// endpoint in standard order: first a head-reduction prefix, then recursion
// into subterms left to right, with explicit alpha adjustments. The pipeline
//
//   trace  -> trace_to_derivation -> derivation_to_sequence -> standardize
//
// turns an arbitrary replayable trace into a sequence whose beta indices
// never decrease. Everything here is constructive: prefixes are concrete
// traces, certify_derivation re-checks every node, and the emitted sequence
// is re-validated rather than trusted.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lamstd/strategies.hpp"

namespace lamstd {

// Derivation tree for standard reduction. Nodes are immutable and cache
// their source and endpoint; constructors accept arbitrary pieces (including
// invalid ones, so tests can build corrupt certificates) and
// certify_derivation performs the real checking.
class StdDerivation {
public:
    enum class Kind { variable, application, abstraction, alpha };

    // source ->>hap x
    static StdDerivation st_var(HapTrace prefix, Var x) {
        Term src = prefix.start;
        Term end = Term::variable(x);
        return StdDerivation(std::make_shared<const Node>(Node{
            Kind::variable, std::move(prefix), x, nullptr, nullptr, std::move(src), std::move(end)}));
    }

    // source ->>hap (A B), then A and B reduce independently
    static StdDerivation st_app(HapTrace prefix, StdDerivation left, StdDerivation right) {
        Term src = prefix.start;
        Term end = Term::application(left.endpoint(), right.endpoint());
        return StdDerivation(std::make_shared<const Node>(Node{Kind::application, std::move(prefix), 0,
                                                               std::move(left.node_), std::move(right.node_),
                                                               std::move(src), std::move(end)}));
    }

    // source ->>hap \binder. A, then the body reduces
    static StdDerivation st_abs(HapTrace prefix, Var binder, StdDerivation body) {
        Term src = prefix.start;
        Term end = Term::abstraction(binder, body.endpoint());
        return StdDerivation(std::make_shared<const Node>(Node{Kind::abstraction, std::move(prefix), binder,
                                                               std::move(body.node_), nullptr, std::move(src),
                                                               std::move(end)}));
    }

    // close an inner derivation under one alpha conversion at the end
    static StdDerivation st_alpha(StdDerivation inner, Term target) {
        Term src = inner.source();
        return StdDerivation(std::make_shared<const Node>(Node{Kind::alpha, empty_trace(src), 0,
                                                               std::move(inner.node_), nullptr, src,
                                                               std::move(target)}));
    }

    Kind kind() const { return node_->kind; }
    const HapTrace& prefix() const { return node_->prefix; }
    // st_var's variable, or st_abs's binder
    Var name() const { return node_->name; }
    StdDerivation left() const {
        assert(kind() == Kind::application);
        return StdDerivation(node_->a);
    }
    StdDerivation right() const {
        assert(kind() == Kind::application);
        return StdDerivation(node_->b);
    }
    StdDerivation body() const {
        assert(kind() == Kind::abstraction);
        return StdDerivation(node_->a);
    }
    StdDerivation inner() const {
        assert(kind() == Kind::alpha);
        return StdDerivation(node_->a);
    }
    const Term& alpha_target() const {
        assert(kind() == Kind::alpha);
        return node_->endpoint;
    }

    const Term& source() const { return node_->source; }
    const Term& endpoint() const { return node_->endpoint; }

private:
    struct Node {
        Kind kind;
        HapTrace prefix;
        Var name;
        std::shared_ptr<const Node> a;  // app left / abs body / alpha inner
        std::shared_ptr<const Node> b;  // app right
        Term source;
        Term endpoint;
    };

    explicit StdDerivation(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    std::shared_ptr<const Node> node_;
};

// Reflexive derivation: empty prefixes all the way down.
inline StdDerivation st_refl(const Term& m) {
    switch (m.kind()) {
    case Term::Kind::variable:
        return StdDerivation::st_var(empty_trace(m), m.name());
    case Term::Kind::application:
        return StdDerivation::st_app(empty_trace(m), st_refl(m.fun()), st_refl(m.arg()));
    case Term::Kind::abstraction:
        return StdDerivation::st_abs(empty_trace(m), m.name(), st_refl(m.body()));
    }
    throw Error("unreachable term kind");
}

// Head steps taken before a standard derivation stay standard: graft the
// trace onto the derivation's outermost prefix.
inline StdDerivation prepend_hap(const HapTrace& t, const StdDerivation& d) {
    if (t.end() != d.source())
        throw EndpointMismatch("prepend_hap: trace does not end at the derivation's source");
    switch (d.kind()) {
    case StdDerivation::Kind::variable:
        return StdDerivation::st_var(concat_traces(t, d.prefix()), d.name());
    case StdDerivation::Kind::application:
        return StdDerivation::st_app(concat_traces(t, d.prefix()), d.left(), d.right());
    case StdDerivation::Kind::abstraction:
        return StdDerivation::st_abs(concat_traces(t, d.prefix()), d.name(), d.body());
    case StdDerivation::Kind::alpha:
        return StdDerivation::st_alpha(prepend_hap(t, d.inner()), d.alpha_target());
    }
    throw Error("unreachable derivation kind");
}

// Pointwise standard derivations between two substitutions: each variable is
// mapped to a derivation from its source image to its target image; absent
// variables default to the reflexive derivation at the variable itself.
class SubstDerivation {
public:
    static SubstDerivation identity() { return SubstDerivation(); }

    StdDerivation lookup(Var x) const {
        auto it = entries_.find(x);
        return it == entries_.end() ? st_refl(Term::variable(x)) : it->second;
    }

    SubstDerivation updated(Var x, StdDerivation d) const {
        SubstDerivation out = *this;
        out.entries_.insert_or_assign(x, std::move(d));
        return out;
    }

    Substitution source_subst() const {
        Substitution s = Substitution::identity();
        for (const auto& [x, d] : entries_) s = s.updated(x, d.source());
        return s;
    }

    Substitution target_subst() const {
        Substitution s = Substitution::identity();
        for (const auto& [x, d] : entries_) s = s.updated(x, d.endpoint());
        return s;
    }

    const std::map<Var, StdDerivation>& entries() const { return entries_; }

private:
    std::map<Var, StdDerivation> entries_;
};

// Standard reduction is closed under substitution: from d : M ->>st N and
// pointwise derivations sigma ->>st sigma', build M.sigma ->>st N.sigma'.
// Endpoints of the result are syntactically the substituted endpoints.
inline StdDerivation st_subst(const StdDerivation& d, const SubstDerivation& sd) {
    Substitution sigma = sd.source_subst();
    switch (d.kind()) {
    case StdDerivation::Kind::variable:
        // push the prefix through sigma, then continue with the derivation
        // sigma carries for the variable itself
        return prepend_hap(hap_trace_subst(d.prefix(), sigma), sd.lookup(d.name()));
    case StdDerivation::Kind::application:
        return StdDerivation::st_app(hap_trace_subst(d.prefix(), sigma), st_subst(d.left(), sd),
                                     st_subst(d.right(), sd));
    case StdDerivation::Kind::abstraction: {
        Substitution sigma_target = sd.target_subst();
        // images of the two abstraction endpoints under their substitutions
        HapTrace prefix = hap_trace_subst(d.prefix(), sigma);
        Term abs_src_img = prefix.end();
        Term abs_end_img =
            apply_subst(Term::abstraction(d.name(), d.body().endpoint()), sigma_target);
        // one binder fresh for both images keeps the body derivations aligned
        Var z = chi(Restriction{Substitution::identity(), Term::application(abs_src_img, abs_end_img)});
        Term realigned = Term::abstraction(
            z, apply_subst(d.body().source(), sigma.updated(d.name(), Term::variable(z))));
        if (realigned != abs_src_img) prefix.steps.push_back(TraceStep::alpha(realigned));
        StdDerivation body_img = st_subst(d.body(), sd.updated(d.name(), st_refl(Term::variable(z))));
        StdDerivation under_z = StdDerivation::st_abs(std::move(prefix), z, body_img);
        return StdDerivation::st_alpha(std::move(under_z), std::move(abs_end_img));
    }
    case StdDerivation::Kind::alpha:
        // alpha-equivalent endpoints have identical images, so the target
        // just gets substituted; the wrapped alpha fact becomes reflexive
        return StdDerivation::st_alpha(st_subst(d.inner(), sd),
                                       apply_subst(d.alpha_target(), sd.target_subst()));
    }
    throw Error("unreachable derivation kind");
}

// Contract the head redex of a derivation's endpoint: from d ending at
// (\x. M) N, produce a derivation ending at M[x:=N]. The left component is
// peeled down to its abstraction node; its body derivation is pushed through
// the substitution derivation [x := derivation of N].
inline StdDerivation st_contract_top(const StdDerivation& d) {
    const Term& end = d.endpoint();
    if (!end.is_application() || !end.fun().is_abstraction())
        throw ShapeMismatch("st_contract_top: endpoint is not a head redex");
    switch (d.kind()) {
    case StdDerivation::Kind::alpha: {
        // contract under the alpha wrapper, then adjust to the contractum of
        // the written endpoint; the two contracta are alpha-equivalent
        StdDerivation inner = st_contract_top(d.inner());
        return StdDerivation::st_alpha(std::move(inner),
                                       single_subst(end.fun().body(), end.fun().name(), end.arg()));
    }
    case StdDerivation::Kind::application: {
        StdDerivation l = d.left();
        if (l.kind() == StdDerivation::Kind::alpha) {
            // move the left child's alpha wrapper to the top and retry
            StdDerivation commuted = StdDerivation::st_app(d.prefix(), l.inner(), d.right());
            StdDerivation inner = st_contract_top(commuted);
            return StdDerivation::st_alpha(std::move(inner),
                                           single_subst(end.fun().body(), end.fun().name(), end.arg()));
        }
        if (l.kind() != StdDerivation::Kind::abstraction)
            throw ShapeMismatch("st_contract_top: left derivation does not end in an abstraction");
        const Term& arg_src = d.right().source();
        // L ->>hap (A B) ->>hap ((\x. M') B) -> M'[x:=B], then push the body
        // derivation through [x := derivation of the argument]
        HapTrace hap = concat_traces(d.prefix(), hap_app_right(l.prefix(), arg_src));
        hap.steps.push_back(TraceStep::beta(
            0, single_subst(l.body().source(), l.name(), arg_src)));
        SubstDerivation sd = SubstDerivation::identity().updated(l.name(), d.right());
        return prepend_hap(hap, st_subst(l.body(), sd));
    }
    default:
        throw ShapeMismatch("st_contract_top: derivation endpoint shape does not match its node");
    }
}

// Append one positional contraction to a derivation: from d ending at M and
// a valid index n, produce a derivation ending at contract_at(M, n). Head
// contractions go through st_contract_top; inner ones recurse down the node
// the position names; alpha wrappers are transported index for index.
inline StdDerivation st_append_beta(const StdDerivation& d, std::size_t n) {
    const Term& end = d.endpoint();
    if (d.kind() == StdDerivation::Kind::alpha) {
        Term target = contract_at(end, n);
        StdDerivation inner = st_append_beta(d.inner(), n);
        return StdDerivation::st_alpha(std::move(inner), std::move(target));
    }
    switch (end.kind()) {
    case Term::Kind::variable:
        throw IndexOutOfRange("redex index " + std::to_string(n) + " out of range (term has 0)");
    case Term::Kind::abstraction: {
        if (d.kind() != StdDerivation::Kind::abstraction)
            throw ShapeMismatch("st_append_beta: derivation endpoint shape does not match its node");
        return StdDerivation::st_abs(d.prefix(), d.name(), st_append_beta(d.body(), n));
    }
    case Term::Kind::application: {
        if (d.kind() != StdDerivation::Kind::application)
            throw ShapeMismatch("st_append_beta: derivation endpoint shape does not match its node");
        auto loc = detail::locate_app_redex(end, n);
        switch (loc.where) {
        case detail::RedexLocation::Where::head:
            return st_contract_top(d);
        case detail::RedexLocation::Where::fun:
            return StdDerivation::st_app(d.prefix(), st_append_beta(d.left(), loc.inner), d.right());
        case detail::RedexLocation::Where::arg:
            return StdDerivation::st_app(d.prefix(), d.left(), st_append_beta(d.right(), loc.inner));
        }
        throw Error("unreachable redex location");
    }
    }
    throw Error("unreachable term kind");
}

// Fold a whole trace into one standard derivation with the same endpoints.
inline StdDerivation trace_to_derivation(const ReductionTrace& t) {
    if (auto why = explain_trace_failure(t))
        throw InvalidTrace("trace_to_derivation: " + *why);
    StdDerivation d = st_refl(t.start);
    for (const TraceStep& s : t.steps) {
        if (s.kind == TraceStep::Kind::beta)
            d = st_append_beta(d, s.index);
        else
            d = StdDerivation::st_alpha(std::move(d), s.result);
    }
    return d;
}

// Re-check every node of a derivation: prefixes must be head reduction
// traces landing exactly on the node's introduced shape, and alpha targets
// must really be alpha-equivalent. Anything mutated fails here.
inline bool certify_derivation(const StdDerivation& d) {
    switch (d.kind()) {
    case StdDerivation::Kind::variable:
        return validate_hap(d.prefix()) && d.prefix().end() == Term::variable(d.name());
    case StdDerivation::Kind::application:
        return validate_hap(d.prefix()) &&
               d.prefix().end() == Term::application(d.left().source(), d.right().source()) &&
               certify_derivation(d.left()) && certify_derivation(d.right());
    case StdDerivation::Kind::abstraction:
        return validate_hap(d.prefix()) &&
               d.prefix().end() == Term::abstraction(d.name(), d.body().source()) &&
               certify_derivation(d.body());
    case StdDerivation::Kind::alpha:
        return certify_derivation(d.inner()) &&
               alpha_equivalent(d.inner().endpoint(), d.alpha_target());
    }
    return false;
}

// A trace whose beta indices never decrease, plus the index of its last beta
// step (0 when there is none) as the recorded bound.
struct StandardSequence {
    Term start;
    std::vector<TraceStep> steps;
    std::size_t bound;

    const Term& end() const { return steps.empty() ? start : steps.back().result; }
};

inline std::optional<std::string> explain_standard_failure(const StandardSequence& s) {
    if (auto why = explain_trace_failure(ReductionTrace{s.start, s.steps}))
        return why;
    std::size_t last = 0;
    bool any_beta = false;
    for (std::size_t i = 0; i < s.steps.size(); ++i) {
        if (s.steps[i].kind != TraceStep::Kind::beta) continue;
        if (any_beta && s.steps[i].index < last)
            return "non-decreasing index violated at step " + std::to_string(i + 1);
        last = s.steps[i].index;
        any_beta = true;
    }
    if (s.bound != last)
        return "bound mismatch: recorded " + std::to_string(s.bound) + ", last beta index is " +
               std::to_string(last);
    return std::nullopt;
}

inline bool validate_standard(const StandardSequence& s) {
    return !explain_standard_failure(s).has_value();
}

namespace detail {

inline std::size_t last_beta_index(const std::vector<TraceStep>& steps) {
    for (auto it = steps.rbegin(); it != steps.rend(); ++it)
        if (it->kind == TraceStep::Kind::beta) return it->index;
    return 0;
}

inline StandardSequence seq_concat(StandardSequence a, const StandardSequence& b) {
    if (a.end() != b.start)
        throw EndpointMismatch("seq_concat: sequences do not meet");
    a.steps.insert(a.steps.end(), b.steps.begin(), b.steps.end());
    a.bound = last_beta_index(a.steps);
    return a;
}

}  // namespace detail

inline StandardSequence hap_to_sequence(const HapTrace& t) {
    return StandardSequence{t.start, t.steps, 0};
}

// Wrap a sequence under one abstraction; indices are unchanged.
inline StandardSequence seq_map_abs(const StandardSequence& s, Var binder) {
    StandardSequence out{Term::abstraction(binder, s.start), {}, s.bound};
    out.steps.reserve(s.steps.size());
    for (const TraceStep& step : s.steps) {
        Term r = Term::abstraction(binder, step.result);
        out.steps.push_back(step.kind == TraceStep::Kind::beta ? TraceStep::beta(step.index, std::move(r))
                                                               : TraceStep::alpha(std::move(r)));
    }
    return out;
}

// Apply every term in a sequence to a fixed argument on the right. A step
// contracting at k keeps index k while the predecessor's left part is not an
// abstraction and shifts to k+1 once it is; contraction inside an
// abstraction stays an abstraction, so the shift only ever switches on once
// and order is preserved.
inline StandardSequence seq_map_app_left(const StandardSequence& s, const Term& arg) {
    StandardSequence out{Term::application(s.start, arg), {}, 0};
    out.steps.reserve(s.steps.size());
    const Term* cur = &s.start;
    for (const TraceStep& step : s.steps) {
        Term r = Term::application(step.result, arg);
        if (step.kind == TraceStep::Kind::beta)
            out.steps.push_back(TraceStep::beta(step.index + (cur->is_abstraction() ? 1 : 0), std::move(r)));
        else
            out.steps.push_back(TraceStep::alpha(std::move(r)));
        cur = &step.result;
    }
    out.bound = detail::last_beta_index(out.steps);
    return out;
}

// Apply a fixed function term to every term in a sequence. All indices shift
// by the same offset: the redexes of fun, plus its head redex if fun is an
// abstraction.
inline StandardSequence seq_map_app_right(const StandardSequence& s, const Term& fun) {
    std::size_t offset = count_redexes(fun) + (fun.is_abstraction() ? 1 : 0);
    StandardSequence out{Term::application(fun, s.start), {}, 0};
    out.steps.reserve(s.steps.size());
    for (const TraceStep& step : s.steps) {
        Term r = Term::application(fun, step.result);
        if (step.kind == TraceStep::Kind::beta)
            out.steps.push_back(TraceStep::beta(step.index + offset, std::move(r)));
        else
            out.steps.push_back(TraceStep::alpha(std::move(r)));
    }
    out.bound = detail::last_beta_index(out.steps);
    return out;
}

namespace detail {

inline StandardSequence derivation_to_sequence_rec(const StdDerivation& d) {
    switch (d.kind()) {
    case StdDerivation::Kind::variable:
        return hap_to_sequence(d.prefix());
    case StdDerivation::Kind::abstraction:
        return seq_concat(hap_to_sequence(d.prefix()),
                          seq_map_abs(derivation_to_sequence_rec(d.body()), d.name()));
    case StdDerivation::Kind::application: {
        // head prefix, then the left component reduces with the original
        // argument attached, then the right component under the final left
        StandardSequence left = seq_map_app_left(derivation_to_sequence_rec(d.left()), d.right().source());
        StandardSequence right = seq_map_app_right(derivation_to_sequence_rec(d.right()), d.left().endpoint());
        return seq_concat(seq_concat(hap_to_sequence(d.prefix()), left), right);
    }
    case StdDerivation::Kind::alpha: {
        StandardSequence inner = derivation_to_sequence_rec(d.inner());
        inner.steps.push_back(TraceStep::alpha(d.alpha_target()));
        inner.bound = last_beta_index(inner.steps);
        return inner;
    }
    }
    throw Error("unreachable derivation kind");
}

}  // namespace detail

// Linearize a standard derivation into a standard sequence with the same
// endpoints. The non-decreasing property of the output is verified here; a
// failure means a bug in the construction, not bad input.
inline StandardSequence derivation_to_sequence(const StdDerivation& d) {
    StandardSequence out = detail::derivation_to_sequence_rec(d);
    if (auto why = explain_standard_failure(out))
        throw MonotonicityViolation("derivation_to_sequence: " + *why);
    return out;
}

// Whole pipeline: arbitrary replayable trace in, standard sequence out, with
// the same start and the same end term.
inline StandardSequence standardize(const ReductionTrace& t) {
    return derivation_to_sequence(trace_to_derivation(t));
}

inline bool is_normal_form(const Term& m) { return count_redexes(m) == 0; }

// Checked form of: a contraction that lands in a normal form is leftmost.
inline bool nf_step_is_leftmost(const Term& m, std::size_t n) {
    if (n >= count_redexes(m))
        throw PreconditionViolated("nf_step_is_leftmost: index is not a redex of the term");
    if (!is_normal_form(contract_at(m, n)))
        throw PreconditionViolated("nf_step_is_leftmost: contraction does not reach a normal form");
    return n == 0;
}

// A standard sequence ending in a normal form only ever contracts redex 0;
// reinterpret it as a leftmost reduction trace.
inline ReductionTrace sequence_to_leftmost(const StandardSequence& s) {
    if (auto why = explain_standard_failure(s))
        throw InvalidTrace("sequence_to_leftmost: " + *why);
    if (!is_normal_form(s.end()))
        throw NotNormalForm("sequence_to_leftmost: sequence does not end in a normal form");
    for (const TraceStep& step : s.steps)
        if (step.kind == TraceStep::Kind::beta && step.index != 0)
            throw NonLeftmostStep("sequence_to_leftmost: standard sequence to a normal form has a nonzero index");
    return ReductionTrace{s.start, s.steps};
}

// Leftmost reduction reaches every normal form a trace reaches.
inline ReductionTrace leftmost_from_trace(const ReductionTrace& t) {
    if (auto why = explain_trace_failure(t))
        throw InvalidTrace("leftmost_from_trace: " + *why);
    if (!is_normal_form(t.end()))
        throw NotNormalForm("leftmost_from_trace: trace does not end in a normal form");
    return sequence_to_leftmost(standardize(t));
}

}  // namespace lamstd
