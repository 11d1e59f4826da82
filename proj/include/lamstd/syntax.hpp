// syntax.hpp: concrete syntax for terms.
//
// Grammar:  Term ::= Lam | App
//           Lam  ::= ("\" | "λ") VarTok "." Term      (binds to end of input)
//           App  ::= Atom { Atom }                     (left-associative)
//           Atom ::= VarTok | "(" Term ")"
//           VarTok ::= "x" digits
// The printer emits minimal parentheses and always uses "\" for lambda;
// parse(print(t)) == t for every term.
#pragma once

#include <cctype>
#include <ostream>
#include <string>
#include <string_view>

#include "lamstd/errors.hpp"
#include "lamstd/term.hpp"

namespace lamstd {

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Term parse() {
        Term t = parse_term();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError(pos_, "expected end of input");
        return t;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    // "λ" in UTF-8; accepted interchangeably with '\'.
    bool at_lambda() {
        if (pos_ < text_.size() && text_[pos_] == '\\') return true;
        return pos_ + 1 < text_.size() && static_cast<unsigned char>(text_[pos_]) == 0xce &&
               static_cast<unsigned char>(text_[pos_ + 1]) == 0xbb;
    }

    Term parse_term() {
        skip_ws();
        if (pos_ == text_.size())
            throw ParseError(pos_, "expected term");
        if (at_lambda()) {
            pos_ += text_[pos_] == '\\' ? 1 : 2;
            Var binder = parse_var();
            skip_ws();
            if (pos_ == text_.size() || text_[pos_] != '.')
                throw ParseError(pos_, "expected '.'");
            ++pos_;
            return Term::abstraction(binder, parse_term());
        }
        return parse_app();
    }

    Term parse_app() {
        Term t = parse_atom();
        while (true) {
            skip_ws();
            if (pos_ == text_.size() || text_[pos_] == ')') return t;
            if (!at_atom_start()) return t;
            t = Term::application(t, parse_atom());
        }
    }

    bool at_atom_start() {
        return pos_ < text_.size() && (text_[pos_] == '(' || text_[pos_] == 'x');
    }

    Term parse_atom() {
        skip_ws();
        if (pos_ == text_.size())
            throw ParseError(pos_, "expected variable or '('");
        if (text_[pos_] == '(') {
            ++pos_;
            Term t = parse_term();
            skip_ws();
            if (pos_ == text_.size() || text_[pos_] != ')')
                throw ParseError(pos_, "expected ')'");
            ++pos_;
            return t;
        }
        if (text_[pos_] == 'x') return Term::variable(parse_var());
        throw ParseError(pos_, "expected variable or '('");
    }

    Var parse_var() {
        skip_ws();
        if (pos_ == text_.size() || text_[pos_] != 'x')
            throw ParseError(pos_, "expected variable");
        ++pos_;
        if (pos_ == text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw ParseError(pos_, "expected digits after 'x'");
        Var v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            Var digit = static_cast<Var>(text_[pos_] - '0');
            if (v > (UINT64_MAX - digit) / 10)
                throw ParseError(pos_, "variable index too large");
            v = v * 10 + digit;
            ++pos_;
        }
        return v;
    }
};

enum class PrintCtx { top, app_fun, app_arg };

inline void print_rec(const Term& m, PrintCtx ctx, std::string& out) {
    switch (m.kind()) {
    case Term::Kind::variable:
        out += 'x';
        out += std::to_string(m.name());
        return;
    case Term::Kind::abstraction: {
        bool paren = ctx != PrintCtx::top;
        if (paren) out += '(';
        out += "\\x";
        out += std::to_string(m.name());
        out += ". ";
        print_rec(m.body(), PrintCtx::top, out);
        if (paren) out += ')';
        return;
    }
    case Term::Kind::application: {
        bool paren = ctx == PrintCtx::app_arg;
        if (paren) out += '(';
        print_rec(m.fun(), PrintCtx::app_fun, out);
        out += ' ';
        print_rec(m.arg(), PrintCtx::app_arg, out);
        if (paren) out += ')';
        return;
    }
    }
}

}  // namespace detail

inline Term parse_term(std::string_view text) {
    return detail::Parser(text).parse();
}

inline std::string print_term(const Term& m) {
    std::string out;
    detail::print_rec(m, detail::PrintCtx::top, out);
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const Term& m) {
    return os << print_term(m);
}

}  // namespace lamstd
