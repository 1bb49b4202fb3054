#include "starconn/polydiff.hpp"

#include <algorithm>
#include <sstream>

namespace starconn {

namespace {

bool odd(int k) { return (k % 2 + 2) % 2 == 1; }

Scalar factorial_multi(const Monomial& m, int dim) {
    Scalar r(1);
    for (int v = 0; v < dim; ++v) r *= factorial(m[v]);
    return r;
}

// All ways to write gamma = mu_0 + ... + mu_{parts-1}, with the multinomial
// coefficient gamma! / prod mu_p!.
struct Split {
    std::vector<Monomial> mu;
    Scalar coeff;
};

void splits_rec(const Monomial& gamma, int dim, int v, int parts, std::vector<Monomial>& cur, Scalar coeff,
                std::vector<Split>& out) {
    if (v == dim) {
        out.push_back({cur, coeff});
        return;
    }
    unsigned g = gamma[v];
    // distribute g among parts
    std::vector<unsigned> e(static_cast<std::size_t>(parts), 0);
    std::function<void(int, unsigned, Scalar)> rec = [&](int p, unsigned left, Scalar c) {
        if (p == parts - 1) {
            e[static_cast<std::size_t>(p)] = left;
            Scalar cc = c / factorial(left);
            for (int q = 0; q < parts; ++q) cur[static_cast<std::size_t>(q)].set(v, e[static_cast<std::size_t>(q)]);
            splits_rec(gamma, dim, v + 1, parts, cur, cc, out);
            return;
        }
        for (unsigned k = 0; k <= left; ++k) {
            e[static_cast<std::size_t>(p)] = k;
            rec(p + 1, left - k, c / factorial(k));
        }
    };
    rec(0, g, coeff * factorial(g));
    for (int q = 0; q < parts; ++q) cur[static_cast<std::size_t>(q)].set(v, 0);
}

std::vector<Split> splits(const Monomial& gamma, int dim, int parts) {
    std::vector<Split> out;
    std::vector<Monomial> cur(static_cast<std::size_t>(parts));
    splits_rec(gamma, dim, 0, parts, cur, Scalar(1), out);
    return out;
}

void tuples_rec(const std::vector<Monomial>& basis, int arity, std::vector<Monomial>& cur,
                const std::function<void(const std::vector<Monomial>&)>& fn) {
    if (static_cast<int>(cur.size()) == arity) {
        fn(cur);
        return;
    }
    for (const auto& m : basis) {
        cur.push_back(m);
        tuples_rec(basis, arity, cur, fn);
        cur.pop_back();
    }
}

void for_each_tuple(const std::vector<Monomial>& basis, int arity, const std::function<void(const std::vector<Monomial>&)>& fn) {
    std::vector<Monomial> cur;
    tuples_rec(basis, arity, cur, fn);
}

std::string tuple_string(const std::vector<Monomial>& t, const Roster& roster) {
    std::ostringstream os;
    os << "(";
    for (std::size_t s = 0; s < t.size(); ++s) {
        std::string m = monomial_string(t[s], roster);
        os << (s ? ", " : "") << (m.empty() ? "1" : m);
    }
    os << ")";
    return os.str();
}

std::string first_difference(const HSeries& a, const HSeries& b, int order, const Roster& roster) {
    for (int k = 0; k <= order; ++k) {
        SPoly d = a.at(k) - b.at(k);
        if (d.is_zero()) continue;
        const auto& [m, c] = *d.terms().rbegin();
        std::string ms = monomial_string(m, roster);
        std::ostringstream os;
        os << "h^" << k << " coefficient of " << (ms.empty() ? "1" : ms) << " differs by " << c.str();
        return os.str();
    }
    return {};
}

}  // namespace

// ----------------------------------------------------------- construction

MultiDiffOp MultiDiffOp::pointwise(int dim) {
    MultiDiffOp m(2, dim);
    m.add_term(0, {Monomial{}, Monomial{}}, SPoly(1L));
    return m;
}

MultiDiffOp MultiDiffOp::identity(int dim) {
    MultiDiffOp m(1, dim);
    m.add_term(0, {Monomial{}}, SPoly(1L));
    return m;
}

MultiDiffOp MultiDiffOp::function(int dim, const HSeries& f) {
    MultiDiffOp m(0, dim, f.order());
    for (int k = 0; k <= f.order(); ++k) m.add_term(static_cast<unsigned>(k), {}, f[k]);
    return m;
}

MultiDiffOp MultiDiffOp::multiplication(int dim, const SPoly& a, unsigned hpow) {
    MultiDiffOp m(1, dim);
    m.add_term(hpow, {Monomial{}}, a);
    return m;
}

MultiDiffOp MultiDiffOp::derivative(int dim, const Monomial& beta, const SPoly& a) {
    MultiDiffOp m(1, dim);
    m.add_term(0, {beta}, a);
    return m;
}

void MultiDiffOp::add_term(unsigned h, const std::vector<Monomial>& d, const SPoly& c) {
    if (c.is_zero() || static_cast<int>(h) > order_) return;
    if (static_cast<int>(d.size()) != arity_) throw MathError("operator term arity mismatch");
    OpKey key{h, d};
    auto [it, ins] = terms_.emplace(std::move(key), c);
    if (!ins) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MultiDiffOp MultiDiffOp::truncated(int order) const {
    MultiDiffOp r(arity_, dim_, std::min(order, order_));
    for (const auto& [k, c] : terms_)
        if (static_cast<int>(k.h) <= r.order_) r.terms_.emplace(k, c);
    return r;
}

MultiDiffOp MultiDiffOp::h_part(unsigned k) const {
    MultiDiffOp r(arity_, dim_, kExactOrder);
    for (const auto& [key, c] : terms_)
        if (key.h == k) r.add_term(0, key.d, c);
    return r;
}

MultiDiffOp MultiDiffOp::shifted(int k) const {
    int order = order_ >= kExactOrder ? kExactOrder : order_ + k;
    MultiDiffOp r(arity_, dim_, order);
    for (const auto& [key, c] : terms_) {
        int h = static_cast<int>(key.h) + k;
        if (h < 0) throw MathError("operator has a term below h^0 after division by h");
        r.add_term(static_cast<unsigned>(h), key.d, c);
    }
    return r;
}

int MultiDiffOp::differential_order(unsigned k, int slot) const {
    int d = 0;
    for (const auto& [key, c] : terms_)
        if (key.h == k) d = std::max(d, static_cast<int>(key.d[static_cast<std::size_t>(slot)].degree()));
    return d;
}

MultiDiffOp& MultiDiffOp::operator+=(const MultiDiffOp& o) {
    if (arity_ != o.arity_) throw MathError("operator arity mismatch");
    if (dim_ == 0) dim_ = o.dim_;
    if (o.order_ < order_) *this = truncated(o.order_);
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

MultiDiffOp& MultiDiffOp::operator-=(const MultiDiffOp& o) { return *this += -o; }

MultiDiffOp& MultiDiffOp::operator*=(const Scalar& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
}

MultiDiffOp MultiDiffOp::map_coeffs(const std::function<SPoly(const SPoly&)>& fn) const {
    MultiDiffOp r(arity_, dim_, order_);
    for (const auto& [k, c] : terms_) r.add_term(k, fn(c));
    return r;
}

// -------------------------------------------------------------- evaluation

HSeries MultiDiffOp::apply(const std::vector<HSeries>& args) const {
    if (static_cast<int>(args.size()) != arity_) throw MathError("wrong number of operator arguments");
    int order = order_;
    for (const auto& a : args) order = std::min(order, a.order());
    if (order >= kExactOrder) {
        order = 0;
        for (const auto& [k, c] : terms_) order = std::max(order, static_cast<int>(k.h));
    }
    HSeries out(order);
    // derivative cache per (slot, h-power, multi-index)
    std::vector<std::map<std::pair<int, Monomial>, SPoly>> cache(args.size());
    auto deriv = [&](std::size_t s, int k, const Monomial& g) -> const SPoly& {
        auto key = std::make_pair(k, g);
        auto it = cache[s].find(key);
        if (it != cache[s].end()) return it->second;
        return cache[s].emplace(key, args[s][k].derivative(g)).first->second;
    };
    for (const auto& [key, c] : terms_) {
        if (static_cast<int>(key.h) > order) continue;
        std::function<void(std::size_t, int, SPoly)> rec = [&](std::size_t s, int h, SPoly acc) {
            if (acc.is_zero()) return;
            if (s == args.size()) {
                out[h] += acc;
                return;
            }
            for (int k = 0; h + k <= order && k <= args[s].order(); ++k) {
                const SPoly& d = deriv(s, k, key.d[s]);
                if (!d.is_zero()) rec(s + 1, h + k, acc * d);
            }
        };
        rec(0, static_cast<int>(key.h), c);
    }
    return out;
}

HSeries MultiDiffOp::apply(const std::vector<SPoly>& args) const {
    int order = order_;
    if (order >= kExactOrder) {
        order = 0;
        for (const auto& [k, c] : terms_) order = std::max(order, static_cast<int>(k.h));
    }
    std::vector<HSeries> a;
    for (const auto& p : args) a.emplace_back(p, order);
    return apply(a);
}

MultiDiffOp MultiDiffOp::insert(int slot, const MultiDiffOp& phi) const {
    if (slot < 0 || slot >= arity_) throw MathError("insertion slot out of range");
    int q = phi.arity_;
    MultiDiffOp r(arity_ - 1 + q, dim_, std::min(order_, phi.order_));
    std::map<Monomial, std::vector<Split>> split_cache;
    for (const auto& [kp, a] : terms_) {
        const Monomial& gamma = kp.d[static_cast<std::size_t>(slot)];
        auto it = split_cache.find(gamma);
        if (it == split_cache.end()) it = split_cache.emplace(gamma, splits(gamma, dim_, q + 1)).first;
        for (const auto& [kf, b] : phi.terms_) {
            unsigned h = kp.h + kf.h;
            if (static_cast<int>(h) > r.order_) continue;
            for (const auto& sp : it->second) {
                SPoly db = b.derivative(sp.mu[0]);
                if (db.is_zero()) continue;
                std::vector<Monomial> d;
                d.reserve(static_cast<std::size_t>(r.arity_));
                for (int s = 0; s < slot; ++s) d.push_back(kp.d[static_cast<std::size_t>(s)]);
                for (int s = 0; s < q; ++s) d.push_back(sp.mu[static_cast<std::size_t>(s + 1)] * kf.d[static_cast<std::size_t>(s)]);
                for (int s = slot + 1; s < arity_; ++s) d.push_back(kp.d[static_cast<std::size_t>(s)]);
                r.add_term(h, d, a * db * sp.coeff);
            }
        }
    }
    return r;
}

std::string MultiDiffOp::str(const Roster& roster) const {
    std::ostringstream os;
    for (const auto& [k, c] : terms_) {
        os << "h^" << k.h << " * (" << to_string(c, roster) << ") * D[";
        for (std::size_t s = 0; s < k.d.size(); ++s) {
            os << (s ? "," : "") << "(";
            for (int v = 0; v < dim_; ++v) os << (v ? "," : "") << k.d[s][v];
            os << ")";
        }
        os << "]\n";
    }
    return os.str();
}

// -------------------------------------------------------------- extraction

MultiDiffOp extract_operator(int arity, int dim, int order, const std::function<int(int)>& order_bound,
                             const std::function<HSeries(const std::vector<Monomial>&)>& evaluate) {
    MultiDiffOp op(arity, dim, order);
    std::map<std::vector<Monomial>, HSeries> values;
    auto value = [&](const std::vector<Monomial>& t) -> const HSeries& {
        auto it = values.find(t);
        if (it != values.end()) return it->second;
        return values.emplace(t, evaluate(t)).first->second;
    };
    for (int k = 0; k <= order; ++k) {
        int bound = order_bound(k);
        std::vector<Monomial> basis = monomials_up_to(0, dim, static_cast<unsigned>(std::max(bound, 0)));
        for_each_tuple(basis, arity, [&](const std::vector<Monomial>& gamma) {
            // a_gamma = prod_s 1/gamma_s! sum_{beta <= gamma} C(gamma, beta) (-x)^{gamma - beta} D(x^beta)
            SPoly coeff;
            std::vector<Monomial> beta(static_cast<std::size_t>(arity));
            std::function<void(int, SPoly)> rec = [&](int s, SPoly w) {
                if (s == arity) {
                    coeff += w * value(beta).at(k);
                    return;
                }
                const Monomial& g = gamma[static_cast<std::size_t>(s)];
                for (const auto& b : monomials_up_to(0, dim, g.degree())) {
                    if (!g.divisible_by(b)) continue;
                    Monomial rest = g / b;
                    Scalar c(1);
                    for (int v = 0; v < dim; ++v) c *= binomial(g[v], b[v]);
                    if (rest.degree() % 2) c = -c;
                    beta[static_cast<std::size_t>(s)] = b;
                    rec(s + 1, w * SPoly::term(c, rest));
                }
            };
            Scalar norm(1);
            for (const auto& g : gamma) norm *= factorial_multi(g, dim);
            rec(0, SPoly(norm.inverse()));
            op.add_term(static_cast<unsigned>(k), gamma, coeff);
        });
    }
    return op;
}

// ---------------------------------------------------- brackets and checks

MultiDiffOp compose(const MultiDiffOp& a, const MultiDiffOp& b) {
    if (a.arity() != 1 || b.arity() != 1) throw MathError("compose expects arity-1 operators");
    return a.insert(0, b);
}

MultiDiffOp gerstenhaber(const MultiDiffOp& psi, const MultiDiffOp& phi) {
    int r = psi.arity() - 1, s = phi.arity() - 1;
    MultiDiffOp out(r + s + 1, std::max(psi.dim(), phi.dim()), std::min(psi.order(), phi.order()));
    // cochains of negative arity are zero
    if (psi.arity() < 0 || phi.arity() < 0) return out;
    for (int i = 0; i <= r; ++i) {
        MultiDiffOp t = psi.insert(i, phi);
        out += odd(i * s) ? -t : t;
    }
    bool outer = odd(r * s);
    for (int j = 0; j <= s; ++j) {
        MultiDiffOp t = phi.insert(j, psi);
        bool neg = !outer;  // the second sum enters with -(-1)^{rs}
        if (odd(j * r)) neg = !neg;
        out += neg ? -t : t;
    }
    return out;
}

MultiDiffOp hochschild_d(const MultiDiffOp& phi, const MultiDiffOp& m) { return gerstenhaber(m, phi); }

MultiDiffOp inner_derivation(const HSeries& b, const MultiDiffOp& m) {
    MultiDiffOp bf = MultiDiffOp::function(m.dim(), b);
    return hochschild_d(bf, m).shifted(-1);
}

std::optional<std::string> compare_on_basis(const MultiDiffOp& a, const MultiDiffOp& b, unsigned maxdeg, int order,
                                            const Roster& roster) {
    if (a.arity() != b.arity()) return std::string("arity mismatch");
    MultiDiffOp d = (a - b).truncated(order);
    std::optional<std::string> witness;
    int dim = std::max(a.dim(), b.dim());
    for_each_tuple(monomials_up_to(0, dim, maxdeg), a.arity(), [&](const std::vector<Monomial>& t) {
        if (witness) return;
        std::vector<HSeries> args;
        for (const auto& m : t) args.emplace_back(SPoly::term(Scalar(1), m), order);
        HSeries v = d.apply(args);
        if (!v.is_zero()) witness = "at " + tuple_string(t, roster) + ": " + first_difference(v, HSeries(0), order, roster);
    });
    return witness;
}

CheckResult is_derivation(const MultiDiffOp& b, const MultiDiffOp& m, unsigned maxdeg, const Roster& roster) {
    int order = std::min(b.order(), m.order());
    std::vector<Monomial> basis = monomials_up_to(0, m.dim(), maxdeg);
    for (const auto& f : basis)
        for (const auto& g : basis) {
            HSeries hf(SPoly::term(Scalar(1), f), order), hg(SPoly::term(Scalar(1), g), order);
            HSeries lhs = b.apply({m.apply({hf, hg})});
            HSeries rhs = m.apply({b.apply({hf}), hg}) + m.apply({hf, b.apply({hg})});
            std::string w = first_difference(lhs.truncated(order), rhs.truncated(order), order, roster);
            if (!w.empty())
                return make_check("derivation of the star product", "B(f*g) = B(f)*g + f*B(g)", false,
                                  "at " + tuple_string({f, g}, roster) + ": " + w);
        }
    return make_check("derivation of the star product", "B(f*g) = B(f)*g + f*B(g)", true);
}

HSeries inner_potential(const MultiDiffOp& b, const MultiDiffOp& m, const SymplecticData& sd) {
    int order = std::min(b.order(), m.order());
    if (order >= kExactOrder) throw MathError("inner_potential needs a truncated star product");
    int n = sd.dim();
    HSeries pot(std::max(order - 1, 0));
    MultiDiffOp residual = b.truncated(order - 1);
    for (int k = 0; k < order; ++k) {
        std::vector<SPoly> y(static_cast<std::size_t>(n));
        for (const auto& [key, c] : residual.terms()) {
            if (static_cast<int>(key.h) != k) continue;
            const Monomial& g = key.d[0];
            if (g.degree() != 1) {
                std::ostringstream os;
                os << "not a derivation: order h^" << k << " of the residual is not a vector field";
                throw MathError(os.str());
            }
            for (int j = 0; j < n; ++j)
                if (g[j] == 1) y[static_cast<std::size_t>(j)] += c;
        }
        // d_l b = -i omega_{lj} Y^j
        DiffForm theta;
        for (int l = 0; l < n; ++l) {
            SPoly v;
            for (int j = 0; j < n; ++j)
                if (!sd.omega(l, j).is_zero()) v += y[static_cast<std::size_t>(j)] * sd.omega(l, j);
            add_to_form(theta, static_cast<std::uint16_t>(1U << static_cast<unsigned>(l)), v * -Scalar::imag_unit());
        }
        if (!form_is_zero(d_form(theta, n))) {
            std::ostringstream os;
            os << "not symplectic: order h^" << k << " of the residual has non-closed i_X omega";
            throw MathError(os.str());
        }
        DiffForm bk = poincare(theta, n);
        SPoly fk = bk.count(0) ? bk.at(0) : SPoly();
        pot[k] = fk;
        HSeries single(order);
        single[k] = fk;
        residual -= inner_derivation(single, m).truncated(order - 1);
    }
    return pot;
}

MultiDiffOp op_derivative(const MultiDiffOp& a, int v) {
    return a.map_coeffs([v](const SPoly& c) { return c.derivative(v); });
}

MultiDiffOp op_substitute(const MultiDiffOp& a, int v, const Scalar& value) {
    return a.map_coeffs([v, &value](const SPoly& c) { return c.substitute(v, value); });
}

MultiDiffOp invert(const MultiDiffOp& p) {
    if (p.arity() != 1) throw MathError("invert expects an arity-1 operator");
    if (!(p.h_part(0) == MultiDiffOp::identity(p.dim()))) throw MathError("operator is not of the form id + O(h)");
    int order = p.order();
    if (order >= kExactOrder) {
        order = 0;
        for (const auto& [k, c] : p.terms()) order = std::max(order, static_cast<int>(k.h));
    }
    MultiDiffOp q = (MultiDiffOp::identity(p.dim()) - p).truncated(order);  // P = id - q
    MultiDiffOp sum = MultiDiffOp::identity(p.dim()).truncated(order);
    MultiDiffOp term = sum;
    for (int k = 1; k <= order; ++k) {
        term = compose(term, q);
        sum += term;
    }
    return sum;
}

MultiDiffOp power(const MultiDiffOp& a, unsigned e) {
    MultiDiffOp r = MultiDiffOp::identity(a.dim()).truncated(a.order());
    for (unsigned k = 0; k < e; ++k) r = compose(r, a);
    return r;
}

}  // namespace starconn
