#pragma once

#include <cctype>
#include <stdexcept>
#include <string>

#include "rpoly.hpp"
#include "symreal.hpp"

namespace ergokit {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : std::runtime_error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line_(line),
          column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

namespace detail {

// expr := term (('+'|'-') term)* ; term := unary (('*'|'/') unary)* ;
// unary := ('+'|'-') unary | power ; power := primary ('^' integer)? ;
// primary := number | identifier | '(' expr ')'
class PolyParser {
public:
    PolyParser(const std::string& text, std::string var) : s_(text), var_(std::move(var)) {}

    RPoly parse() {
        RPoly v = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i) {
            if (s_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(msg, line, col);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char ch) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == ch) {
            ++pos_;
            return true;
        }
        return false;
    }

    RPoly expr() {
        RPoly v = term();
        for (;;) {
            if (accept('+'))
                v += term();
            else if (accept('-'))
                v -= term();
            else
                return v;
        }
    }
    RPoly term() {
        RPoly v = unary();
        for (;;) {
            if (accept('*')) {
                v = v * unary();
            } else if (accept('/')) {
                std::size_t at = pos_;
                RPoly d = unary();
                if (d.degree() > 0 || !d.is_rational()) {
                    pos_ = at;
                    fail("division only by a nonzero rational constant");
                }
                if (d.is_zero()) {
                    pos_ = at;
                    fail("division by zero");
                }
                v = v.divided(d.constant_term().constant_term());
            } else {
                return v;
            }
        }
    }
    RPoly unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }
    RPoly power() {
        RPoly base = primary();
        if (accept('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected a nonnegative integer exponent");
            unsigned long e = std::stoul(s_.substr(start, pos_ - start));
            if (e > 64) fail("exponent too large");
            return base.pow(static_cast<unsigned>(e));
        }
        return base;
    }
    RPoly primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char ch = s_[pos_];
        if (ch == '(') {
            ++pos_;
            RPoly v = expr();
            if (!accept(')')) fail("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            Rational v(Integer(start == pos_ ? std::string("0") : s_.substr(start, pos_ - start)));
            if (pos_ < s_.size() && s_[pos_] == '.') {
                ++pos_;
                std::size_t fs = pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                if (fs == pos_ && start + 1 == fs) fail("malformed number");
                Integer scale = 1;
                for (std::size_t i = fs; i < pos_; ++i) scale *= 10;
                if (pos_ > fs) v += Rational(Integer(s_.substr(fs, pos_ - fs)), scale);
            }
            return RPoly(SymbolicReal(v));
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string id = s_.substr(start, pos_ - start);
            if (id == var_) return RPoly::variable();
            return RPoly(SymbolicReal::symbol(id));
        }
        fail("unexpected '" + std::string(1, ch) + "'");
    }

    const std::string& s_;
    std::string var_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline RPoly parse_poly(const std::string& text, const std::string& var = "n") {
    return detail::PolyParser(text, var).parse();
}

inline SymbolicReal parse_scalar(const std::string& text) {
    RPoly p = detail::PolyParser(text, "\x01").parse();
    if (p.degree() > 0) throw ParseError("scalar expected", 1, 1);
    return p.constant_term();
}

}  // namespace ergokit
