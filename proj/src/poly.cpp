#include "starconn/poly.hpp"

#include <sstream>

#include "starconn/expr_parser.hpp"

namespace starconn {

Roster::Roster(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.size() > static_cast<std::size_t>(kMaxVars)) throw MathError("too many variables in roster");
}

Roster Roster::standard(int nx, int nt) {
    std::vector<std::string> names;
    for (int k = 1; k <= nx; ++k) names.push_back("x" + std::to_string(k));
    for (int k = 1; k <= nt; ++k) names.push_back("t" + std::to_string(k));
    return Roster(std::move(names));
}

int Roster::index(const std::string& name) const {
    for (std::size_t k = 0; k < names_.size(); ++k)
        if (names_[k] == name) return static_cast<int>(k);
    return -1;
}

std::string monomial_string(const Monomial& m, const Roster& roster) {
    std::string out;
    for (int v = 0; v < kMaxVars; ++v) {
        unsigned e = m[v];
        if (e == 0) continue;
        if (v >= roster.size()) throw MathError("monomial uses a variable outside the roster");
        if (!out.empty()) out += "*";
        out += roster.name(v);
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

std::string to_string(const SPoly& p, const Roster& roster) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        std::string mono = monomial_string(m, roster);
        Scalar coef = c;
        bool negative = false;
        // Pull a leading minus out of purely real or purely imaginary coefficients.
        if (coef.is_real() ? sgn(coef.re()) < 0 : (sgn(coef.re()) == 0 && sgn(coef.im()) < 0)) {
            negative = true;
            coef = -coef;
        }
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        if (mono.empty()) {
            out += coef.str();
        } else if (coef.is_one()) {
            out += mono;
        } else {
            out += coef.str() + "*" + mono;
        }
    }
    return out;
}

namespace {

struct SPolyOps {
    const Roster& roster;
    SPoly var(const std::string& name, std::size_t col) const {
        int v = roster.index(name);
        if (v < 0) throw ParseError("unknown variable '" + name + "' at column " + std::to_string(col + 1));
        return SPoly::var(v);
    }
    static SPoly constant(const Scalar& s) { return SPoly(s); }
    static SPoly divide(const SPoly& a, const SPoly& b, std::size_t col) {
        if (!b.is_constant() || b.is_zero())
            throw ParseError("division by a non-constant or zero polynomial at column " + std::to_string(col + 1));
        return a * b.constant_term().inverse();
    }
};

}  // namespace

SPoly parse_poly(const std::string& text, const Roster& roster) {
    SPolyOps ops{roster};
    detail::ExprParser<SPoly, SPolyOps> parser(text, ops);
    return parser.parse();
}

SPoly exact_divide(const SPoly& a, const SPoly& b) {
    if (b.is_zero()) throw MathError("division by the zero polynomial");
    SPoly q, r = a;
    const auto& [lm, lc] = b.leading();
    Scalar inv = lc.inverse();
    while (!r.is_zero()) {
        const auto& [rm, rc] = r.leading();
        if (!rm.divisible_by(lm)) throw MathError("polynomial division is not exact");
        SPoly t = SPoly::term(rc * inv, rm / lm);
        q += t;
        r -= t * b;
    }
    return q;
}

namespace {

SPoly make_monic(const SPoly& p) {
    if (p.is_zero()) return p;
    return p * p.leading().second.inverse();
}

int main_variable(const SPoly& a, const SPoly& b) {
    for (int v = 0; v < kMaxVars; ++v)
        if (a.depends_on(v) || b.depends_on(v)) return v;
    return -1;
}

SPoly gcd_rec(const SPoly& a, const SPoly& b);

/// Content with respect to v: gcd of the coefficients of powers of v.
SPoly content_in(const SPoly& p, int v) {
    SPoly g;
    for (unsigned k = 0; k <= p.degree_in(v); ++k) {
        SPoly c = p.coeff_in(v, k);
        if (c.is_zero()) continue;
        g = g.is_zero() ? make_monic(c) : gcd_rec(g, c);
        if (g.is_constant()) return SPoly(1L);
    }
    return g;
}

SPoly primitive_in(const SPoly& p, int v) {
    if (p.is_zero()) return p;
    return exact_divide(p, content_in(p, v));
}

/// Pseudo-remainder of a by b as univariate polynomials in v.
SPoly pseudo_remainder(SPoly a, const SPoly& b, int v) {
    unsigned db = b.degree_in(v);
    SPoly lb = b.coeff_in(v, db);
    while (!a.is_zero() && a.degree_in(v) >= db) {
        unsigned da = a.degree_in(v);
        SPoly la = a.coeff_in(v, da);
        a = lb * a - (la * b).shifted(Monomial::var(v, da - db));
    }
    return a;
}

SPoly gcd_rec(const SPoly& a, const SPoly& b) {
    if (a.is_zero()) return make_monic(b);
    if (b.is_zero()) return make_monic(a);
    int v = main_variable(a, b);
    if (v < 0) return SPoly(1L);
    if (!a.depends_on(v)) return gcd_rec(a, content_in(b, v));
    if (!b.depends_on(v)) return gcd_rec(content_in(a, v), b);
    SPoly g_content = gcd_rec(content_in(a, v), content_in(b, v));
    SPoly p = primitive_in(a, v), q = primitive_in(b, v);
    if (p.degree_in(v) < q.degree_in(v)) std::swap(p, q);
    while (!q.is_zero() && q.depends_on(v)) {
        SPoly r = pseudo_remainder(p, q, v);
        p = q;
        q = r.is_zero() ? r : make_monic(primitive_in(r, v));
    }
    // q == 0: p is the primitive gcd; q a nonzero v-free remainder: gcd is 1 in v.
    SPoly prim = q.is_zero() ? primitive_in(p, v) : SPoly(1L);
    return make_monic(g_content * prim);
}

}  // namespace

SPoly poly_gcd(const SPoly& a, const SPoly& b) { return gcd_rec(a, b); }

std::vector<Monomial> monomials_up_to(int first, int count, unsigned maxdeg) {
    std::vector<Monomial> out;
    Monomial m;
    std::function<void(int, unsigned)> rec = [&](int k, unsigned left) {
        if (k == count) {
            out.push_back(m);
            return;
        }
        for (unsigned e = 0; e <= left; ++e) {
            m.set(first + k, e);
            rec(k + 1, left - e);
        }
        m.set(first + k, 0);
    };
    rec(0, maxdeg);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace starconn
