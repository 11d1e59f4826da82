// alpha.hpp: decidable alpha-equivalence.
//
// Two abstractions are compared by renaming both bodies to a common fresh
// variable and recursing; renaming preserves size, so the recursion is on
// the size of the first term. The fresh variable is the chi choice for the
// identity substitution restricted to an application pairing both sides,
// i.e. the least variable free in neither.
#pragma once

#include <optional>

#include "lamstd/term.hpp"

namespace lamstd {

struct AlphaVerdict {
    bool equivalent;
    // The common fresh variable used at the root; present exactly when the
    // verdict is positive and both terms are abstractions.
    std::optional<Var> witness_fresh_var;
};

namespace detail {

inline Var common_fresh(const Term& a, const Term& b) {
    return chi(Restriction{Substitution::identity(), Term::application(a, b)});
}

inline bool alpha_eq_rec(const Term& a, const Term& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case Term::Kind::variable:
        return a.name() == b.name();
    case Term::Kind::application:
        return alpha_eq_rec(a.fun(), b.fun()) && alpha_eq_rec(a.arg(), b.arg());
    case Term::Kind::abstraction: {
        Var y = common_fresh(a, b);
        return alpha_eq_rec(single_subst(a.body(), a.name(), Term::variable(y)),
                            single_subst(b.body(), b.name(), Term::variable(y)));
    }
    }
    return false;
}

}  // namespace detail

inline AlphaVerdict alpha_eq(const Term& a, const Term& b) {
    bool eq = detail::alpha_eq_rec(a, b);
    if (eq && a.is_abstraction() && b.is_abstraction())
        return AlphaVerdict{true, detail::common_fresh(a, b)};
    return AlphaVerdict{eq, std::nullopt};
}

inline bool alpha_equivalent(const Term& a, const Term& b) {
    return detail::alpha_eq_rec(a, b);
}

// Checked form of the collapse law: alpha-equivalent terms have syntactically
// identical images under any one substitution.
inline bool subst_collapses(const Term& a, const Term& b, const Substitution& s) {
    if (!alpha_equivalent(a, b))
        throw PreconditionViolated("subst_collapses: terms are not alpha-equivalent");
    return apply_subst(a, s) == apply_subst(b, s);
}

}  // namespace lamstd
