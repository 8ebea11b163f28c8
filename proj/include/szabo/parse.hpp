#pragma once

#include "szabo/errors.hpp"
#include "szabo/format.hpp"
#include "szabo/ratfn.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace szabo {

/// The set of identifiers an expression may mention. Coordinate and
/// direction variables carry fixed canonical spellings (u1, u1', a1, ...),
/// so the table maps names to identities and rejects everything else.
class VarTable {
public:
    /// Standard table for a base dimension: base coordinates u1..un, fiber
    /// coordinates u1'..un', and direction components a1..a2n (enough for
    /// the doubled dimension of an extension).
    static VarTable standard(int dim) {
        VarTable t;
        for (int i = 1; i <= dim; ++i) {
            t.declare_id(VarId::base(i));
            t.declare_id(VarId::fiber(i));
        }
        for (int i = 1; i <= 2 * dim; ++i) t.declare_id(VarId::direction(i));
        return t;
    }

    /// Declare a variable by its canonical name (used for parameters).
    VarId declare(const std::string& name, std::optional<VarKind> expected = std::nullopt) {
        auto id = var_from_name(name);
        if (!id)
            throw ValidationError("'" + name + "' is not a valid variable name");
        if (expected && id->kind != *expected)
            throw ValidationError("variable '" + name + "' does not have the expected kind");
        if (names_.count(name))
            throw ValidationError("variable '" + name + "' declared twice");
        names_.emplace(name, *id);
        return *id;
    }

    void declare_id(VarId v) { names_.emplace(var_name(v), v); }

    /// Idempotent declaration: re-declaring an existing variable with a
    /// matching kind is a no-op, a mismatched kind is an error.
    VarId ensure(const std::string& name, std::optional<VarKind> expected = std::nullopt) {
        if (auto existing = lookup(name)) {
            if (expected && existing->kind != *expected)
                throw ValidationError("variable '" + name + "' does not have the expected kind");
            return *existing;
        }
        return declare(name, expected);
    }

    std::optional<VarId> lookup(std::string_view name) const {
        auto it = names_.find(std::string(name));
        if (it == names_.end()) return std::nullopt;
        return it->second;
    }

    const std::map<std::string, VarId>& names() const { return names_; }

private:
    std::map<std::string, VarId> names_;
};

namespace detail {

/// Recursive-descent parser for the expression grammar:
///   expr     := term  (('+'|'-') term)*
///   term     := factor (('*'|'/') factor)*
///   factor   := atom ('^' nat)?
///   atom     := rational | ident | '(' expr ')' | '-' atom
///   rational := nat ('/' nat)?     -- literal only when the '/' and a digit
///                                     are immediately adjacent
/// All offsets reported in errors are byte offsets into the input.
class ExprParser {
public:
    ExprParser(std::string_view text, const VarTable& table) : s_(text), table_(table) {}

    RatFn parse() {
        skip_ws();
        if (eof()) throw SyntaxError("empty expression", pos_);
        RatFn value = expr();
        skip_ws();
        if (!eof()) throw SyntaxError("unexpected trailing input", pos_);
        return value;
    }

private:
    bool eof() const { return pos_ >= s_.size(); }
    char peek() const { return eof() ? '\0' : s_[pos_]; }
    void skip_ws() {
        while (!eof() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
    }

    // When the right operand of an infix operator fails to parse without
    // consuming anything, the operator itself is the best diagnostic.
    template <class F>
    RatFn rhs_or_blame_operator(char op, std::size_t op_off, F parse_rhs) {
        skip_ws();
        std::size_t rhs_off = pos_;
        try {
            return parse_rhs();
        } catch (SyntaxError& e) {
            if (e.offset == rhs_off)
                throw SyntaxError(std::string("operator '") + op + "' is missing its right operand",
                                  op_off);
            throw;
        }
    }

    RatFn expr() {
        RatFn value = term();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') return value;
            std::size_t op_off = pos_++;
            RatFn rhs = rhs_or_blame_operator(c, op_off, [&] { return term(); });
            value = (c == '+') ? value + rhs : value - rhs;
        }
    }

    RatFn term() {
        RatFn value = factor();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '*' && c != '/') return value;
            std::size_t op_off = pos_++;
            RatFn rhs = rhs_or_blame_operator(c, op_off, [&] { return factor(); });
            value = (c == '*') ? value * rhs : value / rhs;
        }
    }

    RatFn factor() {
        RatFn base = atom();
        skip_ws();
        if (peek() != '^') return base;
        ++pos_;
        skip_ws();
        if (peek() == '-') throw NegativeExponent(pos_);
        long e = nat_small("exponent");
        return base.pow(static_cast<unsigned>(e));
    }

    RatFn atom() {
        skip_ws();
        if (eof()) throw SyntaxError("expected expression", pos_);
        char c = peek();
        if (c == '-') {
            ++pos_;
            skip_ws();
            // '-' wraps the atom only; a following '^' (handled by the
            // enclosing factor) applies to the negated value: -u1^2 parses
            // as (-u1)^2. The formatter avoids emitting that shape.
            return -atom();
        }
        if (c == '(') {
            ++pos_;
            RatFn inner = expr();
            skip_ws();
            if (peek() != ')') throw SyntaxError("expected ')'", pos_);
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return RatFn::constant(rational_literal());
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        throw SyntaxError("expected expression", pos_);
    }

    Rational rational_literal() {
        Int num = nat_big();
        // A '/' immediately followed by a digit continues the literal.
        if (!eof() && s_[pos_] == '/' && pos_ + 1 < s_.size() &&
            std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
            ++pos_;
            std::size_t den_off = pos_;
            Int den = nat_big();
            if (den == 0) throw SyntaxError("zero denominator in rational literal", den_off);
            return Rational(num) / Rational(den);
        }
        return Rational(num);
    }

    Int nat_big() {
        std::size_t start = pos_;
        while (!eof() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return Int(std::string(s_.substr(start, pos_ - start)));
    }

    long nat_small(const char* what) {
        skip_ws();
        std::size_t start = pos_;
        while (!eof() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) throw SyntaxError(std::string("expected ") + what, start);
        if (pos_ - start > 6) throw SyntaxError(std::string(what) + " too large", start);
        return std::stol(std::string(s_.substr(start, pos_ - start)));
    }

    RatFn identifier() {
        std::size_t start = pos_;
        while (!eof()) {
            char c = s_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '\'')
                ++pos_;
            else
                break;
        }
        std::string_view name = s_.substr(start, pos_ - start);
        auto id = table_.lookup(name);
        if (!id) throw UnknownIdentifier(std::string(name), start);
        return RatFn::var(*id);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    const VarTable& table_;
};

} // namespace detail

/// Parse one expression against a variable table. Throws SyntaxError,
/// UnknownIdentifier, or NegativeExponent with byte offsets.
inline RatFn parse_expr(std::string_view text, const VarTable& table) {
    return detail::ExprParser(text, table).parse();
}

} // namespace szabo
