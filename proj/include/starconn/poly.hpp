#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "starconn/scalar.hpp"

namespace starconn {

inline constexpr int kMaxVars = 8;

/// Exponent multi-index over at most kMaxVars variables.
class Monomial {
public:
    Monomial() { exps_.fill(0); }
    static Monomial var(int v, unsigned power = 1) {
        Monomial m;
        m.set(v, power);
        return m;
    }

    unsigned operator[](int v) const { return exps_[static_cast<std::size_t>(v)]; }
    void set(int v, unsigned e) {
        if (v < 0 || v >= kMaxVars) throw MathError("variable index out of range");
        if (e > 255) throw MathError("exponent overflow");
        degree_ = degree_ - exps_[static_cast<std::size_t>(v)] + e;
        exps_[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(e);
    }
    unsigned degree() const { return degree_; }
    bool is_one() const { return degree_ == 0; }

    Monomial operator*(const Monomial& o) const {
        Monomial r;
        for (int v = 0; v < kMaxVars; ++v) r.set(v, (*this)[v] + o[v]);
        return r;
    }
    /// True when o divides *this.
    bool divisible_by(const Monomial& o) const {
        for (int v = 0; v < kMaxVars; ++v)
            if ((*this)[v] < o[v]) return false;
        return true;
    }
    Monomial operator/(const Monomial& o) const {
        Monomial r;
        for (int v = 0; v < kMaxVars; ++v) r.set(v, (*this)[v] - o[v]);
        return r;
    }
    /// Degree restricted to variables [first, first+count).
    unsigned partial_degree(int first, int count) const {
        unsigned d = 0;
        for (int v = first; v < first + count; ++v) d += (*this)[v];
        return d;
    }
    /// Copy with the variables [first, first+count) zeroed.
    Monomial without(int first, int count) const {
        Monomial r = *this;
        for (int v = first; v < first + count; ++v) r.set(v, 0);
        return r;
    }
    Monomial only(int first, int count) const {
        Monomial r;
        for (int v = first; v < first + count; ++v) r.set(v, (*this)[v]);
        return r;
    }

    /// Graded lexicographic order: total degree first, then x1 > x2 > ...
    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
        for (int v = 0; v < kMaxVars; ++v)
            if (a[v] != b[v]) return a[v] < b[v];
        return false;
    }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

private:
    std::array<std::uint8_t, kMaxVars> exps_{};
    unsigned degree_ = 0;
};

/// Ordered variable names; maps between names and indices for parsing and
/// printing. Values do not carry a roster; it is supplied by the context.
class Roster {
public:
    Roster() = default;
    explicit Roster(std::vector<std::string> names);
    /// x1..x{nx} followed by t1..t{nt}.
    static Roster standard(int nx, int nt);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int v) const { return names_.at(static_cast<std::size_t>(v)); }
    /// -1 if absent.
    int index(const std::string& name) const;

private:
    std::vector<std::string> names_;
};

/// Sparse multivariate polynomial with coefficients in C, terms kept in
/// graded-lex order with no zero coefficients.
template <class C>
class Poly {
public:
    using Terms = std::map<Monomial, C>;

    Poly() = default;
    Poly(const C& c) {  // NOLINT(google-explicit-constructor)
        if (!c.is_zero()) terms_.emplace(Monomial{}, c);
    }
    Poly(long c) : Poly(C(c)) {}  // NOLINT(google-explicit-constructor)
    static Poly var(int v) { return term(C(1), Monomial::var(v)); }
    static Poly term(const C& c, const Monomial& m) {
        Poly p;
        if (!c.is_zero()) p.terms_.emplace(m, c);
        return p;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }
    C constant_term() const {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? C(0) : it->second;
    }
    C coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? C(0) : it->second;
    }
    unsigned degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }
    /// Leading term in graded-lex order.
    const std::pair<const Monomial, C>& leading() const { return *terms_.rbegin(); }

    void add_term(const Monomial& m, const C& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    Poly& operator*=(const C& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const C& s) { return a *= s; }
    friend Poly operator*(const C& s, Poly a) { return a *= s; }
    Poly operator-() const {
        Poly r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly pow(unsigned e) const {
        Poly r(1L), base = *this;
        while (e) {
            if (e & 1U) r *= base;
            e >>= 1U;
            if (e) base *= base;
        }
        return r;
    }

    /// Multiply by a monomial.
    Poly shifted(const Monomial& m) const {
        Poly r;
        for (const auto& [mm, c] : terms_) r.terms_.emplace(mm * m, c);
        return r;
    }

    Poly derivative(int v) const {
        Poly r;
        for (const auto& [m, c] : terms_) {
            unsigned e = m[v];
            if (e == 0) continue;
            Monomial mm = m;
            mm.set(v, e - 1);
            r.add_term(mm, c * C(static_cast<long>(e)));
        }
        return r;
    }
    /// Partial derivative by the multi-index `beta` (all variables).
    Poly derivative(const Monomial& beta) const {
        Poly r;
        for (const auto& [m, c] : terms_) {
            if (!m.divisible_by(beta)) continue;
            C f = c;
            for (int v = 0; v < kMaxVars; ++v)
                for (unsigned k = 0; k < beta[v]; ++k) f *= C(static_cast<long>(m[v] - k));
            r.add_term(m / beta, f);
        }
        return r;
    }
    /// Antiderivative in v vanishing on v = 0.
    Poly antiderivative(int v) const {
        Poly r;
        for (const auto& [m, c] : terms_) {
            Monomial mm = m;
            mm.set(v, m[v] + 1);
            r.add_term(mm, c / C(static_cast<long>(m[v] + 1)));
        }
        return r;
    }

    /// Substitute variable v by the constant value.
    Poly substitute(int v, const C& value) const {
        Poly r;
        for (const auto& [m, c] : terms_) {
            C f = c;
            for (unsigned k = 0; k < m[v]; ++k) f *= value;
            Monomial mm = m;
            mm.set(v, 0);
            r.add_term(mm, f);
        }
        return r;
    }
    /// Substitute variable v by a polynomial.
    Poly substitute(int v, const Poly& value) const {
        Poly r;
        for (const auto& [m, c] : terms_) {
            Monomial mm = m;
            mm.set(v, 0);
            r += term(c, mm) * value.pow(m[v]);
        }
        return r;
    }
    bool depends_on(int v) const {
        return std::any_of(terms_.begin(), terms_.end(), [v](const auto& t) { return t.first[v] > 0; });
    }
    unsigned degree_in(int v) const {
        unsigned d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m[v]);
        return d;
    }
    /// Coefficient of v^k as a polynomial free of v.
    Poly coeff_in(int v, unsigned k) const {
        Poly r;
        for (const auto& [m, c] : terms_)
            if (m[v] == k) {
                Monomial mm = m;
                mm.set(v, 0);
                r.terms_.emplace(mm, c);
            }
        return r;
    }
    template <class F>
    Poly map_coeffs(F&& f) const {
        Poly r;
        for (const auto& [m, c] : terms_) r.add_term(m, f(c));
        return r;
    }
    /// Keep only terms whose monomial satisfies pred.
    template <class F>
    Poly filter(F&& pred) const {
        Poly r;
        for (const auto& [m, c] : terms_)
            if (pred(m)) r.terms_.emplace(m, c);
        return r;
    }

private:
    Terms terms_;
};

using SPoly = Poly<Scalar>;

/// Canonical text in descending graded-lex order, e.g. `3/2*x1^2*x2 - i*x2`.
std::string to_string(const SPoly& p, const Roster& roster);
/// Parses the polynomial grammar (`+ - * ^`, parentheses, rational
/// literals, `i`, roster variables). Division is permitted by nonzero
/// constants only. Throws ParseError with the offending column.
SPoly parse_poly(const std::string& text, const Roster& roster);

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact division a / b; throws MathError if b does not divide a.
SPoly exact_divide(const SPoly& a, const SPoly& b);
/// Monic (leading coefficient 1) greatest common divisor.
SPoly poly_gcd(const SPoly& a, const SPoly& b);

/// Monomial printing helper shared by other modules: `x1^2*x2`, or "" for 1.
std::string monomial_string(const Monomial& m, const Roster& roster);

/// All monomials in variables [first, first+count) with degree <= maxdeg,
/// in graded-lex order.
std::vector<Monomial> monomials_up_to(int first, int count, unsigned maxdeg);

}  // namespace starconn
