#include "starconn/fedosov.hpp"

#include <sstream>

namespace starconn {

namespace {

std::string form_witness(const DiffForm& f, const Roster& roster) {
    const auto& [mask, c] = *f.begin();
    std::ostringstream os;
    os << "dx{";
    bool first = true;
    for (int j = 0; j < 16; ++j)
        if (mask & (1U << static_cast<unsigned>(j))) {
            os << (first ? "" : ",") << j + 1;
            first = false;
        }
    os << "} coefficient " << to_string(c, roster);
    return os.str();
}

}  // namespace

// ----------------------------------------------------------- FedosovSetup

FedosovSetup::FedosovSetup(ConnectionFamily c, std::vector<DiffForm> alpha) : conn_(std::move(c)), alpha_(std::move(alpha)) {
    if (alpha_.empty()) alpha_.emplace_back();
    if (!form_is_zero(alpha_[0])) throw MathError("alpha - omega must be divisible by h");
    for (const auto& a : alpha_)
        for (const auto& [mask, v] : a)
            if (__builtin_popcount(mask) != 2) throw MathError("alpha must be a 2-form");
}

WeylForm FedosovSetup::alpha_weyl() const {
    WeylForm w(dim(), kExact);
    for (std::size_t k = 1; k < alpha_.size(); ++k) w += form_to_weyl(alpha_[k], dim(), static_cast<unsigned>(k));
    return w;
}

DiffForm FedosovSetup::omega_form() const {
    DiffForm w;
    for (int i = 0; i < dim(); ++i)
        for (int j = i + 1; j < dim(); ++j)
            add_to_form(w, static_cast<std::uint16_t>((1U << static_cast<unsigned>(i)) | (1U << static_cast<unsigned>(j))),
                        SPoly(symplectic().omega(i, j)));
    return w;
}

std::vector<CheckResult> FedosovSetup::validate() const {
    std::vector<CheckResult> out{validate_connection(conn_)};
    for (std::size_t k = 1; k < alpha_.size(); ++k) {
        DiffForm d = d_form(alpha_[k], dim());
        std::ostringstream name;
        name << "alpha_" << k << " closed";
        out.push_back(make_check(name.str(), "d alpha = 0", d.empty(), d.empty() ? "" : form_witness(d, conn_.roster())));
    }
    return out;
}

// -------------------------------------------------------- FedosovSolution

FedosovSolution::FedosovSolution(FedosovSetup setup, int truncation)
    : setup_(std::move(setup)), n_(truncation), curv_(curvature_weyl(setup_.connection())), r_(setup_.dim(), truncation) {
    for (const auto& c : setup_.validate())
        if (!c.passed()) throw MathError("invalid setup: " + c.name + ": " + c.witness);
    const ConnectionFamily& conn = setup_.connection();
    const WeylAlgebra& w = algebra();
    WeylForm a = setup_.alpha_weyl();
    for (int d = 3; d <= n_; ++d) {
        // delta r^(d) = (alpha - omega)_{d-1} - R_{d-1} + d_nabla r^(d-1) + (1/2) ad_over_h(r, r)_{d-1}
        WeylForm rhs = a.degree_part(d - 1) - curv_.degree_part(d - 1) + cov_deriv(conn, r_.degree_part(d - 1)) +
                       w.ad_over_h_degree(r_, r_, d - 1) * Scalar::rational(1, 2);
        r_ += delta_inv(rhs);
    }
}

WeylForm FedosovSolution::D(const WeylForm& a) const {
    return cov_deriv(setup_.connection(), a) - delta(a) + algebra().ad_over_h(r_, a);
}

WeylForm FedosovSolution::tau_monomial(const Monomial& m) const {
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = tau_cache_.find(m);
        if (it != tau_cache_.end()) return it->second;
    }
    const ConnectionFamily& conn = setup_.connection();
    WeylForm t(setup_.dim(), n_);
    t.add_term(WeylKey{}, SPoly::term(Scalar(1), m));
    for (int d = 1; d <= n_; ++d) {
        WeylForm rhs = cov_deriv(conn, t.degree_part(d - 1)) + algebra().ad_over_h_degree(r_, t, d - 1);
        t += delta_inv(rhs);
    }
    std::lock_guard<std::mutex> lock(cache_mutex_);
    return tau_cache_.emplace(m, t).first->second;
}

WeylForm FedosovSolution::tau(const SPoly& f) const {
    int dim = setup_.dim();
    WeylForm out(dim, n_);
    for (const auto& [m, c] : f.terms()) {
        Monomial xm = m.only(0, dim);
        Monomial rest = m.without(0, dim);
        out += tau_monomial(xm).times(SPoly::term(c, rest));
    }
    return out;
}

HSeries FedosovSolution::star(const SPoly& f, const SPoly& g, int k) const {
    if (2 * k > n_) throw MathError("truncation too small for the requested star-product order");
    return central_product(algebra(), tau(f).truncated(2 * k), tau(g).truncated(2 * k), k);
}

HSeries central_product(const WeylAlgebra& w, const WeylForm& a, const WeylForm& b, int k) {
    HSeries out(k);
    for (const auto& [ka, ca] : a.terms()) {
        if (ka.forms) throw MathError("central_product expects form-degree 0 inputs");
        for (const auto& [kb, cb] : b.terms()) {
            if (kb.forms) throw MathError("central_product expects form-degree 0 inputs");
            unsigned p = ka.y.degree();
            if (kb.y.degree() != p) continue;
            int h = static_cast<int>(ka.h + kb.h + p);
            if (h > k) continue;
            for (const auto& con : w.monomial_product(ka.y, kb.y))
                if (con.y.is_one()) out[h] += ca * cb * con.coeff;
        }
    }
    return out;
}

HSeries central_ad_over_h(const WeylAlgebra& w, const WeylForm& a, const WeylForm& b, int k) {
    // Full contractions of y^a o y^b and y^b o y^a differ by (-1)^p, so only
    // odd p survive, doubled; (i/h) lowers the h-power by one.
    HSeries out(k);
    Scalar two_i(mpq_class(0), mpq_class(2));
    for (const auto& [ka, ca] : a.terms()) {
        if (ka.forms) throw MathError("central_ad_over_h expects form-degree 0 inputs");
        unsigned p = ka.y.degree();
        if (p % 2 == 0) continue;
        for (const auto& [kb, cb] : b.terms()) {
            if (kb.forms) throw MathError("central_ad_over_h expects form-degree 0 inputs");
            if (kb.y.degree() != p) continue;
            int h = static_cast<int>(ka.h + kb.h + p) - 1;
            if (h > k) continue;
            for (const auto& con : w.monomial_product(ka.y, kb.y))
                if (con.y.is_one()) out[h] += ca * cb * (con.coeff * two_i);
        }
    }
    return out;
}

std::vector<DiffForm> weyl_curvature(const ConnectionFamily& c, const WeylForm& r) {
    const WeylAlgebra& w = c.symplectic().algebra();
    WeylForm x = delta(r) + curvature_weyl(c) - cov_deriv(c, r) - w.ad_over_h(r, r) * Scalar::rational(1, 2);
    int valid = r.truncation() >= kExact ? kExact : r.truncation() - 1;
    x = x.truncated(valid);
    std::vector<DiffForm> out(1);
    for (int i = 0; i < c.dim(); ++i)
        for (int j = i + 1; j < c.dim(); ++j)
            add_to_form(out[0], static_cast<std::uint16_t>((1U << static_cast<unsigned>(i)) | (1U << static_cast<unsigned>(j))),
                        SPoly(c.symplectic().omega(i, j)));
    for (const auto& [k, v] : x.terms()) {
        if (!k.y.is_one() || k.form_degree() != 2) {
            std::ostringstream os;
            os << "connection is not abelian: non-central curvature term " << x.degree_part(static_cast<int>(k.total_degree())).str(c.roster());
            throw MathError(os.str());
        }
        if (out.size() <= k.h) out.resize(k.h + 1);
        add_to_form(out[k.h], k.forms, v);
    }
    return out;
}

// -------------------------------------------------------------- operators

StarTruncation extract_bidiff(const FedosovSolution& sol, int k) {
    int dim = sol.setup().dim();
    MultiDiffOp op = extract_operator(
        2, dim, k, [](int j) { return j; },
        [&](const std::vector<Monomial>& t) {
            return sol.star(SPoly::term(Scalar(1), t[0]), SPoly::term(Scalar(1), t[1]), k);
        });
    return {k, op};
}

MultiDiffOp moyal_operator(const SymplecticData& sd, int k) {
    int dim = sd.dim();
    MultiDiffOp op(2, dim, k);
    std::map<std::pair<Monomial, Monomial>, Scalar> layer{{{Monomial{}, Monomial{}}, Scalar(1)}};
    Scalar weight(1);
    for (int j = 0; j <= k; ++j) {
        for (const auto& [d, c] : layer) op.add_term(static_cast<unsigned>(j), {d.first, d.second}, SPoly(c * weight));
        std::map<std::pair<Monomial, Monomial>, Scalar> next;
        for (const auto& [d, c] : layer)
            for (int a = 0; a < dim; ++a)
                for (int b = 0; b < dim; ++b) {
                    if (sd.pi(a, b).is_zero()) continue;
                    auto key = std::make_pair(d.first * Monomial::var(a), d.second * Monomial::var(b));
                    next[key] += c * sd.pi(a, b);
                }
        layer = std::move(next);
        weight = weight * Scalar(mpq_class(0), mpq_class(1, 2)) / Scalar(static_cast<long>(j + 1));
    }
    return op;
}

CheckResult check_associativity(const StarTruncation& s, const std::vector<std::array<SPoly, 3>>& triples,
                                const Roster& roster) {
    for (const auto& t : triples) {
        HSeries f(t[0], s.order), g(t[1], s.order), k(t[2], s.order);
        HSeries lhs = s.apply(s.apply(f, g), k), rhs = s.apply(f, s.apply(g, k));
        if (lhs != rhs) {
            for (int j = 0; j <= s.order; ++j)
                if (lhs.at(j) != rhs.at(j)) {
                    std::ostringstream os;
                    os << "f=" << to_string(t[0], roster) << ", g=" << to_string(t[1], roster) << ", k=" << to_string(t[2], roster)
                       << ": h^" << j << " differs by " << to_string(lhs.at(j) - rhs.at(j), roster);
                    return make_check("associativity", "(f*g)*k = f*(g*k)", false, os.str());
                }
        }
    }
    return make_check("associativity", "(f*g)*k = f*(g*k)", true);
}

std::vector<CheckResult> check_star_axioms(const StarTruncation& s, const SymplecticData& sd, unsigned maxdeg,
                                           const Roster& roster) {
    std::vector<CheckResult> out;
    int dim = sd.dim();
    auto c0 = compare_on_basis(s.op.h_part(0), MultiDiffOp::pointwise(dim), 0, 0, roster);
    out.push_back(make_check("c0 is the pointwise product", "c^0(f, g) = f g", !c0, c0.value_or("")));

    std::string unit_witness;
    for (const auto& [k, c] : s.op.terms())
        if (k.h > 0 && (k.d[0].is_one() || k.d[1].is_one())) {
            std::ostringstream os;
            os << "h^" << k.h << " term " << to_string(c, roster) << " with an underived slot";
            unit_witness = os.str();
            break;
        }
    out.push_back(make_check("unit", "f * 1 = f = 1 * f", unit_witness.empty(), unit_witness));

    if (s.order >= 1) {
        MultiDiffOp c1 = s.op.h_part(1);
        MultiDiffOp swapped(2, dim);
        for (const auto& [k, c] : c1.terms()) swapped.add_term(0, {k.d[1], k.d[0]}, c);
        MultiDiffOp bracket(2, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                if (!sd.pi(i, j).is_zero())
                    bracket.add_term(0, {Monomial::var(i), Monomial::var(j)}, SPoly(sd.pi(i, j) * Scalar::imag_unit()));
        auto w = compare_on_basis(c1 - swapped, bracket, 1, 0, roster);
        out.push_back(make_check("first-order commutator", "c^1(f,g) - c^1(g,f) = i{f,g}", !w, w.value_or("")));
    }

    std::string order_witness;
    for (int k = 0; k <= s.order && order_witness.empty(); ++k)
        for (int slot = 0; slot < 2; ++slot)
            if (s.op.differential_order(static_cast<unsigned>(k), slot) > k) {
                std::ostringstream os;
                os << "c^" << k << " has order " << s.op.differential_order(static_cast<unsigned>(k), slot) << " in slot " << slot + 1;
                order_witness = os.str();
                break;
            }
    out.push_back(make_check("natural differential order", "c^k of order <= k", order_witness.empty(), order_witness));

    std::vector<std::array<SPoly, 3>> triples;
    std::vector<Monomial> basis = monomials_up_to(0, dim, maxdeg);
    for (const auto& a : basis)
        for (const auto& b : basis)
            for (const auto& c : basis)
                triples.push_back({SPoly::term(Scalar(1), a), SPoly::term(Scalar(1), b), SPoly::term(Scalar(1), c)});
    out.push_back(check_associativity(s, triples, roster));
    return out;
}

std::vector<CheckResult> check_solution(const FedosovSolution& sol, unsigned maxdeg, const Roster& roster) {
    std::vector<CheckResult> out;
    WeylForm dr = delta_star(sol.r());
    out.push_back(make_check("normalization of r", "delta* r = 0", dr.is_zero(), dr.is_zero() ? "" : dr.str(roster)));

    const FedosovSetup& setup = sol.setup();
    std::string w;
    try {
        std::vector<DiffForm> a = weyl_curvature(setup.connection(), sol.r());
        for (std::size_t k = 0; k < a.size() && w.empty(); ++k) {
            DiffForm expect = k == 0 ? setup.omega_form() : (k < setup.alpha().size() ? setup.alpha()[k] : DiffForm{});
            if (a[k] != expect) w = "h^" + std::to_string(k) + " component differs";
        }
    } catch (const MathError& e) {
        w = e.what();
    }
    out.push_back(make_check("Weyl curvature", "omega + delta r + R - d_nabla r - (i/h) r o r = omega + alpha", w.empty(), w));

    w.clear();
    int n = sol.truncation();
    for (const auto& m : monomials_up_to(0, setup.dim(), maxdeg)) {
        SPoly f = SPoly::term(Scalar(1), m);
        WeylForm t = sol.tau(f);
        WeylForm d = sol.D(t).truncated(n - 1);
        if (!d.is_zero()) {
            w = "D tau(" + to_string(f, roster) + ") = " + d.str(roster);
            break;
        }
        if (center_part(t) != WeylForm::scalar(setup.dim(), f)) {
            w = "center of tau(" + to_string(f, roster) + ") is not f";
            break;
        }
    }
    out.push_back(make_check("flat sections", "D_r tau(f) = 0, p(tau(f)) = f", w.empty(), w));
    return out;
}

}  // namespace starconn
