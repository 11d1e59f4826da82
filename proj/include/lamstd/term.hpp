// term.hpp: lambda terms over numbered variables, and multiple substitution.
//
// Terms are immutable trees with no alpha-identification: Abstraction(0, x0)
// and Abstraction(1, x1) are different terms. Substitutions are total maps
// from variables to terms that differ from the identity on finitely many
// variables; applying one renames every binder it passes through, using the
// minimal-fresh choice function chi. That uniform renaming is what makes the
// algebraic laws on top of this module hold syntactically, not just up to
// alpha.
#pragma once

#include <cassert>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <utility>
#include <vector>

#include "lamstd/errors.hpp"

namespace lamstd {

using Var = std::uint64_t;

class Term {
public:
    enum class Kind { variable, application, abstraction };

    static Term variable(Var v) {
        return Term(std::make_shared<const Node>(Node{Kind::variable, v, nullptr, nullptr}));
    }
    static Term application(Term fun, Term arg) {
        return Term(std::make_shared<const Node>(
            Node{Kind::application, 0, std::move(fun.node_), std::move(arg.node_)}));
    }
    static Term abstraction(Var binder, Term body) {
        return Term(std::make_shared<const Node>(
            Node{Kind::abstraction, binder, std::move(body.node_), nullptr}));
    }

    Kind kind() const { return node_->kind; }
    bool is_variable() const { return node_->kind == Kind::variable; }
    bool is_application() const { return node_->kind == Kind::application; }
    bool is_abstraction() const { return node_->kind == Kind::abstraction; }

    // Variable name or abstraction binder.
    Var name() const {
        assert(node_->kind != Kind::application);
        return node_->name;
    }
    Term fun() const {
        assert(is_application());
        return Term(node_->a);
    }
    Term arg() const {
        assert(is_application());
        return Term(node_->b);
    }
    Term body() const {
        assert(is_abstraction());
        return Term(node_->a);
    }

    // Node count; variable-for-variable renaming preserves it.
    std::size_t size() const { return node_size(node_.get()); }

    friend bool operator==(const Term& x, const Term& y) { return node_eq(x.node_.get(), y.node_.get()); }
    friend bool operator!=(const Term& x, const Term& y) { return !(x == y); }

private:
    struct Node {
        Kind kind;
        Var name;
        std::shared_ptr<const Node> a;  // application fun / abstraction body
        std::shared_ptr<const Node> b;  // application arg
    };

    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static std::size_t node_size(const Node* n) {
        switch (n->kind) {
        case Kind::variable: return 1;
        case Kind::application: return 1 + node_size(n->a.get()) + node_size(n->b.get());
        case Kind::abstraction: return 1 + node_size(n->a.get());
        }
        return 0;
    }

    static bool node_eq(const Node* x, const Node* y) {
        if (x == y) return true;
        if (x->kind != y->kind) return false;
        switch (x->kind) {
        case Kind::variable: return x->name == y->name;
        case Kind::application: return node_eq(x->a.get(), y->a.get()) && node_eq(x->b.get(), y->b.get());
        case Kind::abstraction: return x->name == y->name && node_eq(x->a.get(), y->a.get());
        }
        return false;
    }

    std::shared_ptr<const Node> node_;
};

inline bool free_in(Var x, const Term& m) {
    switch (m.kind()) {
    case Term::Kind::variable: return m.name() == x;
    case Term::Kind::application: return free_in(x, m.fun()) || free_in(x, m.arg());
    case Term::Kind::abstraction: return m.name() != x && free_in(x, m.body());
    }
    return false;
}

inline void collect_free_vars(const Term& m, std::vector<Var>& bound, std::set<Var>& out) {
    switch (m.kind()) {
    case Term::Kind::variable: {
        Var v = m.name();
        for (Var b : bound)
            if (b == v) return;
        out.insert(v);
        return;
    }
    case Term::Kind::application:
        collect_free_vars(m.fun(), bound, out);
        collect_free_vars(m.arg(), bound, out);
        return;
    case Term::Kind::abstraction:
        bound.push_back(m.name());
        collect_free_vars(m.body(), bound, out);
        bound.pop_back();
        return;
    }
}

inline std::set<Var> free_vars(const Term& m) {
    std::set<Var> out;
    std::vector<Var> bound;
    collect_free_vars(m, bound, out);
    return out;
}

// Identity-almost-everywhere map Var -> Term, kept in canonical form: an
// entry mapping x to Variable(x) is never stored, so two substitutions with
// the same lookup function have the same representation and compare equal.
class Substitution {
public:
    static Substitution identity() { return Substitution(); }

    Term lookup(Var x) const {
        auto it = entries_.find(x);
        return it == entries_.end() ? Term::variable(x) : it->second;
    }

    Substitution updated(Var x, Term m) const {
        Substitution s = *this;
        if (m.is_variable() && m.name() == x)
            s.entries_.erase(x);
        else
            s.entries_.insert_or_assign(x, std::move(m));
        return s;
    }

    // Variables with a non-identity image.
    const std::map<Var, Term>& entries() const { return entries_; }

    friend bool operator==(const Substitution& a, const Substitution& b) {
        return a.entries_ == b.entries_;
    }
    friend bool operator!=(const Substitution& a, const Substitution& b) { return !(a == b); }

private:
    std::map<Var, Term> entries_;
};

// A substitution restricted to the free variables of a scope term; the
// domain freshness checks below only look at images of those variables.
struct Restriction {
    Substitution subst;
    Term scope;
};

inline bool fresh_in_restriction(Var x, const Restriction& r) {
    for (Var y : free_vars(r.scope))
        if (free_in(x, r.subst.lookup(y))) return false;
    return true;
}

// Least variable fresh for the restriction. Always terminates: only finitely
// many variables occur free in the finitely many relevant images.
inline Var chi(const Restriction& r) {
    std::set<Var> blocked;
    for (Var y : free_vars(r.scope)) {
        std::set<Var> fv = free_vars(r.subst.lookup(y));
        blocked.insert(fv.begin(), fv.end());
    }
    Var v = 0;
    while (blocked.count(v)) ++v;
    return v;
}

// Simultaneous substitution. Every abstraction binder is renamed to the chi
// choice for the restriction at that point, whether or not capture threatens.
inline Term apply_subst(const Term& m, const Substitution& s) {
    switch (m.kind()) {
    case Term::Kind::variable:
        return s.lookup(m.name());
    case Term::Kind::application:
        return Term::application(apply_subst(m.fun(), s), apply_subst(m.arg(), s));
    case Term::Kind::abstraction: {
        Var y = chi(Restriction{s, m});
        return Term::abstraction(y, apply_subst(m.body(), s.updated(m.name(), Term::variable(y))));
    }
    }
    throw Error("unreachable term kind");
}

inline Term single_subst(const Term& m, Var x, const Term& n) {
    return apply_subst(m, Substitution::identity().updated(x, n));
}

}  // namespace lamstd
