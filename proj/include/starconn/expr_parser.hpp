#pragma once

#include <cctype>
#include <string>

#include "starconn/poly.hpp"

namespace starconn::detail {

/// Recursive-descent parser for `+ - * / ^ ( )`, integer literals, `i` and
/// identifiers. `Ops` supplies the value semantics:
///   T var(const std::string&, std::size_t col)
///   T constant(const Scalar&)
///   T divide(const T&, const T&, std::size_t col)
template <class T, class Ops>
class ExprParser {
public:
    ExprParser(const std::string& text, Ops& ops) : s_(text), ops_(ops) {}

    T parse() {
        T v = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " at column " + std::to_string(pos_ + 1) + " in '" + s_ + "'");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    T expr() {
        T acc = term();
        for (;;) {
            if (eat('+'))
                acc = acc + term();
            else if (eat('-'))
                acc = acc - term();
            else
                return acc;
        }
    }
    T term() {
        T acc = unary();
        for (;;) {
            if (eat('*')) {
                acc = acc * unary();
            } else if (eat('/')) {
                std::size_t col = pos_;
                T d = unary();
                acc = ops_.divide(acc, d, col);
            } else {
                return acc;
            }
        }
    }
    T unary() {
        if (eat('-')) return ops_.constant(Scalar(-1)) * unary();
        if (eat('+')) return unary();
        return power();
    }
    T power() {
        T base = primary();
        if (eat('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            unsigned e = static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start)));
            T r = ops_.constant(Scalar(1));
            for (unsigned k = 0; k < e; ++k) r = r * base;
            return r;
        }
        return base;
    }
    T primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            T v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return ops_.constant(Scalar(mpq_class(mpz_class(s_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string id = s_.substr(start, pos_ - start);
            if (id == "i") return ops_.constant(Scalar::imag_unit());
            return ops_.var(id, start);
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string s_;
    Ops& ops_;
    std::size_t pos_ = 0;
};

}  // namespace starconn::detail
