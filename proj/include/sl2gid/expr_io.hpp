#ifndef SL2GID_EXPR_IO_HPP
#define SL2GID_EXPR_IO_HPP

#include <cctype>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "expr.hpp"

// Text form of LieExpr.
//
//   expr    := term { ('+' term) | term-starting-with-'-' } [ '=' expr ]
//   term    := '-' INT '*' factor | '-' factor | factor
//   factor  := INT '*' factor | atom
//   atom    := var | '0' | '(' expr ')' | '[' expr ',' slot { ',' slot } ']'
//   slot    := opdiff | atom '^' INT | expr
//   opdiff  := '(' oterm { ('+' | '-') oterm } ')'   with the same atom throughout
//   oterm   := [ '-' ] [ INT '*' ] atom '^' INT
//   var     := ('y' | 'z' | 'x') INT
//
// Brackets are left-normed, "a = b" stands for a - b, and x variables are
// only accepted when ordinary identities are allowed. Printing produces text
// that parses back to the same tree.

namespace sl2gid {

namespace detail {

class ExprParser {
public:
    ExprParser(std::string_view text, bool allow_plain) : s_(text), allow_plain_(allow_plain) {}

    LieExpr parse_all()
    {
        LieExpr e = expr();
        skip();
        if (pos_ != s_.size()) {
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        }
        return e;
    }

private:
    [[noreturn]] void fail(const std::string &msg) const
    {
        throw ParseError("column " + std::to_string(pos_ + 1) + ": " + msg);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }
    bool peek(char c)
    {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool accept(char c)
    {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!accept(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }
    bool peek_digit()
    {
        skip();
        return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
    }
    unsigned long long integer()
    {
        if (!peek_digit()) {
            fail("expected an integer");
        }
        unsigned long long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + static_cast<unsigned>(s_[pos_] - '0');
            if (v > (1ULL << 40)) {
                fail("integer too large");
            }
            ++pos_;
        }
        return v;
    }
    // INT followed by '*', without consuming anything otherwise.
    std::optional<long long> scalar_prefix()
    {
        const std::size_t save = pos_;
        if (!peek_digit()) {
            return std::nullopt;
        }
        const auto v = static_cast<long long>(integer());
        if (accept('*')) {
            return v;
        }
        pos_ = save;
        return std::nullopt;
    }

    LieExpr expr()
    {
        std::vector<LieExpr> terms{term()};
        for (;;) {
            if (accept('+')) {
                terms.push_back(term());
            } else if (peek('-')) {
                terms.push_back(term());
            } else {
                break;
            }
        }
        LieExpr lhs = terms.size() == 1 ? terms.front() : LieExpr::sum(std::move(terms));
        if (accept('=')) {
            return lhs - expr();
        }
        return lhs;
    }

    LieExpr term()
    {
        if (accept('-')) {
            if (auto c = scalar_prefix()) {
                return LieExpr::scale(-*c, factor());
            }
            return LieExpr::scale(-1, factor());
        }
        return factor();
    }

    LieExpr factor()
    {
        if (auto c = scalar_prefix()) {
            return LieExpr::scale(*c, factor());
        }
        return atom();
    }

    LieExpr atom()
    {
        skip();
        if (pos_ >= s_.size()) {
            fail("unexpected end of expression");
        }
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            LieExpr e = expr();
            expect(')');
            return e;
        }
        if (c == '[') {
            ++pos_;
            LieExpr head = expr();
            std::vector<Slot> slots;
            while (accept(',')) {
                slots.push_back(slot());
            }
            if (slots.empty()) {
                fail("a bracket needs at least two entries");
            }
            expect(']');
            return chain(std::move(head), std::move(slots));
        }
        if (c == '0' && !(pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))) {
            ++pos_;
            return LieExpr::zero();
        }
        if (c == 'y' || c == 'z' || c == 'x') {
            ++pos_;
            if (!(pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))) {
                fail("variable index expected after '" + std::string(1, c) + "'");
            }
            const auto idx = integer();
            if (idx < 1 || idx > 65535) {
                fail("variable index out of range");
            }
            if (c == 'x' && !allow_plain_) {
                fail("x variables are only allowed for ordinary identities");
            }
            const auto i = static_cast<std::uint16_t>(idx);
            return LieExpr::var(c == 'y' ? y(i) : c == 'z' ? z(i) : x(i));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    unsigned exponent()
    {
        const auto k = integer();
        if (k < 1 || k > (1U << 24)) {
            fail("exponent must be between 1 and 2^24");
        }
        return static_cast<unsigned>(k);
    }

    std::optional<AdPolyDiff> opdiff()
    {
        if (!accept('(')) {
            return std::nullopt;
        }
        AdPolyDiff d;
        bool first = true;
        for (;;) {
            long long sign = 1;
            if (accept('-')) {
                sign = -1;
            } else if (!first && !accept('+')) {
                break;
            }
            long long c = 1;
            if (auto s = scalar_prefix()) {
                c = *s;
            }
            LieExpr w = atom();
            if (!accept('^')) {
                return std::nullopt;
            }
            const unsigned k = exponent();
            if (first) {
                d.w = std::move(w);
            } else if (!(w == d.w)) {
                return std::nullopt;
            }
            d.terms.emplace_back(sign * c, k);
            first = false;
        }
        if (!accept(')')) {
            return std::nullopt;
        }
        return d;
    }

    Slot slot()
    {
        const std::size_t save = pos_;
        try {
            if (auto d = opdiff()) {
                return *d;
            }
        } catch (const ParseError &) {
        }
        pos_ = save;
        try {
            LieExpr a = atom();
            if (accept('^')) {
                const unsigned k = exponent();
                if (!peek(',') && !peek(']')) {
                    fail("a power must end its slot");
                }
                return AdPower{std::move(a), k};
            }
            if (peek(',') || peek(']')) {
                return AdPower{std::move(a), 1};
            }
        } catch (const ParseError &) {
        }
        pos_ = save;
        return AdPower{expr(), 1};
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    bool allow_plain_;
};

inline bool is_sum(const LieExpr &e) { return std::holds_alternative<SumNode>(e.node().v); }
inline const ScaleNode *as_scale(const LieExpr &e) { return std::get_if<ScaleNode>(&e.node().v); }
inline bool is_atomic(const LieExpr &e)
{
    return std::holds_alternative<VarNode>(e.node().v) || std::holds_alternative<ChainNode>(e.node().v) ||
           (is_sum(e) && std::get<SumNode>(e.node().v).terms.empty());
}

inline std::string print_expr(const LieExpr &e);

inline std::string print_atom(const LieExpr &e) { return is_atomic(e) ? print_expr(e) : "(" + print_expr(e) + ")"; }

inline std::string print_scale(const ScaleNode &n)
{
    const auto *inner_scale = as_scale(n.e);
    if (n.c == -1) {
        const bool wrap = is_sum(n.e) && !is_atomic(n.e);
        return "-" + (wrap || inner_scale ? "(" + print_expr(n.e) + ")" : print_expr(n.e));
    }
    const bool wrap = (is_sum(n.e) && !is_atomic(n.e)) || (inner_scale && inner_scale->c < 0);
    return std::to_string(n.c) + "*" + (wrap ? "(" + print_expr(n.e) + ")" : print_expr(n.e));
}

inline std::string print_slot(const Slot &s)
{
    if (const auto *p = std::get_if<AdPower>(&s)) {
        if (p->k == 1) {
            return print_expr(p->w);
        }
        return print_atom(p->w) + "^" + std::to_string(p->k);
    }
    const auto &d = std::get<AdPolyDiff>(s);
    std::string out = "(";
    const std::string w = print_atom(d.w);
    for (std::size_t i = 0; i < d.terms.size(); ++i) {
        const auto [c, k] = d.terms[i];
        const long long mag = c < 0 ? -c : c;
        if (i == 0) {
            out += c < 0 ? "-" : "";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        if (mag != 1) {
            out += std::to_string(mag) + "*";
        }
        out += w + "^" + std::to_string(k);
    }
    return out + ")";
}

inline std::string print_expr(const LieExpr &e)
{
    return std::visit(
        [](const auto &n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, VarNode>) {
                return n.v.name();
            } else if constexpr (std::is_same_v<T, ScaleNode>) {
                return print_scale(n);
            } else if constexpr (std::is_same_v<T, ChainNode>) {
                std::string out = "[" + print_expr(n.head);
                for (const auto &s : n.slots) {
                    out += ", " + print_slot(s);
                }
                return out + "]";
            } else {
                if (n.terms.empty()) {
                    return "0";
                }
                std::string out;
                for (std::size_t i = 0; i < n.terms.size(); ++i) {
                    const auto &t = n.terms[i];
                    std::string s = is_sum(t) && !is_atomic(t) ? "(" + print_expr(t) + ")" : print_expr(t);
                    if (i == 0) {
                        out = s;
                    } else if (s.front() == '-') {
                        out += " - " + s.substr(1);
                    } else {
                        out += " + " + s;
                    }
                }
                return out;
            }
        },
        e.node().v);
}

} // namespace detail

/// Parses the expression syntax described at the top of this header.
inline LieExpr parse_expr(std::string_view text, bool allow_plain = false)
{
    return detail::ExprParser(text, allow_plain).parse_all();
}

/// Semicolon-separated list of expressions.
inline std::vector<LieExpr> parse_expr_list(std::string_view text, bool allow_plain = false)
{
    std::vector<LieExpr> out;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i < text.size() && (text[i] == '[' || text[i] == '(')) {
            ++depth;
        } else if (i < text.size() && (text[i] == ']' || text[i] == ')')) {
            --depth;
        }
        if (i == text.size() || (text[i] == ';' && depth == 0)) {
            out.push_back(parse_expr(text.substr(start, i - start), allow_plain));
            start = i + 1;
        }
    }
    return out;
}

inline std::string to_string(const LieExpr &e) { return detail::print_expr(e); }

} // namespace sl2gid

#endif
