#include "starconn/family.hpp"

#include <sstream>

namespace starconn {

namespace {

std::string pair_string(const Monomial& f, const Monomial& g, const Roster& roster) {
    std::string a = monomial_string(f, roster), b = monomial_string(g, roster);
    return "(" + (a.empty() ? std::string("1") : a) + ", " + (b.empty() ? std::string("1") : b) + ")";
}

std::string series_difference(const HSeries& a, const HSeries& b, int order, const Roster& roster) {
    for (int k = 0; k <= order; ++k) {
        SPoly d = a.at(k) - b.at(k);
        if (!d.is_zero()) {
            std::ostringstream os;
            os << "h^" << k << " differs by " << to_string(d, roster);
            return os.str();
        }
    }
    return {};
}

WeylForm degree_range_ad(const WeylAlgebra& w, const WeylForm& a, const WeylForm& b, int maxdeg) {
    WeylForm out(a.dim(), maxdeg);
    for (int d = 0; d <= maxdeg; ++d) out += w.ad_over_h_degree(a, b, d);
    return out;
}

}  // namespace

// ---------------------------------------------------------- FamilyContext

FamilyContext::FamilyContext(FedosovSetup setup, int order)
    : k_(order), sol_(std::make_shared<FedosovSolution>(std::move(setup), 2 * order + 2)) {
    if (order < 1) throw MathError("family order must be at least 1");
}

std::vector<Scalar> FamilyContext::coordinate(int j) const {
    if (j < 0 || j >= nparams()) throw MathError("parameter index out of range");
    std::vector<Scalar> v(static_cast<std::size_t>(nparams()), Scalar(0));
    v[static_cast<std::size_t>(j)] = Scalar(1);
    return v;
}

const StarTruncation& FamilyContext::star() const {
    if (!star_) star_ = std::make_shared<StarTruncation>(extract_bidiff(*sol_, k_));
    return *star_;
}

WeylForm TrivializationBeta::weyl(int j, int dim) const {
    WeylForm w(dim, kExact);
    const auto& b = beta.at(static_cast<std::size_t>(j));
    for (std::size_t k = 0; k < b.size(); ++k) w += form_to_weyl(b[k], dim, static_cast<unsigned>(k));
    return w;
}

// ---------------------------------------------------------- trivialization

TrivializationBeta trivialize_alpha(const FamilyContext& fam, const std::vector<Scalar>& basepoint) {
    if (static_cast<int>(basepoint.size()) != fam.nparams()) throw MathError("basepoint has the wrong dimension");
    // alpha_{t0} is t-constant, so d_T K(alpha - alpha_{t0}) = K(V[alpha]).
    int dim = fam.dim();
    TrivializationBeta out;
    const auto& alpha = fam.setup().alpha();
    for (int j = 0; j < fam.nparams(); ++j) {
        int tv = fam.connection().tvar(j);
        std::vector<DiffForm> bj(alpha.size());
        for (std::size_t k = 1; k < alpha.size(); ++k) {
            DiffForm va = map_form(alpha[k], [tv](const SPoly& c) { return c.derivative(tv); });
            if (!form_is_zero(d_form(va, dim))) throw MathError("variation of alpha is not closed");
            bj[k] = poincare(va, dim);
        }
        out.beta.push_back(std::move(bj));
    }
    return out;
}

CheckResult check_trivialization(const FamilyContext& fam, const TrivializationBeta& beta) {
    int dim = fam.dim();
    const auto& alpha = fam.setup().alpha();
    for (int j = 0; j < fam.nparams(); ++j) {
        int tv = fam.connection().tvar(j);
        const auto& bj = beta.beta.at(static_cast<std::size_t>(j));
        for (std::size_t k = 0; k < std::max(alpha.size(), bj.size()); ++k) {
            DiffForm va = k < alpha.size() ? map_form(alpha[k], [tv](const SPoly& c) { return c.derivative(tv); }) : DiffForm{};
            DiffForm db = k < bj.size() ? d_form(bj[k], dim) : DiffForm{};
            DiffForm diff = form_add(db, va, Scalar(-1));
            if (!diff.empty()) {
                std::ostringstream os;
                os << "direction t" << j + 1 << ", h^" << k << ": d_M i_V beta - V[alpha] has coefficient "
                   << to_string(diff.begin()->second, fam.roster());
                return make_check("trivialization", "d_M i_V beta = V[alpha]", false, os.str());
            }
        }
    }
    return make_check("trivialization", "d_M i_V beta = V[alpha]", true);
}

MultiDiffOp variation_star(const FamilyContext& fam, int j) {
    return op_derivative(fam.star().op, fam.connection().tvar(j));
}

// ------------------------------------------------------------------- s

namespace {

WeylForm s_source(const FamilyContext& fam, const TrivializationBeta& beta, int j) {
    const auto& conn = fam.connection();
    std::vector<Scalar> v = fam.coordinate(j);
    return vary(fam.solution().r(), conn.tvar(0), v) + variation_S(conn, v) * Scalar::rational(1, 2) +
           beta.weyl(j, fam.dim());
}

}  // namespace

WeylForm solve_s(const FamilyContext& fam, const TrivializationBeta& beta, int j) {
    CheckResult triv = check_trivialization(fam, beta);
    if (!triv.passed()) throw MathError("equation for s is not solvable: " + triv.witness);
    const FedosovSolution& sol = fam.solution();
    int n = sol.truncation();
    WeylForm src = s_source(fam, beta, j);
    WeylForm s(fam.dim(), n);
    for (int d = 1; d <= n; ++d) {
        // delta s = d_nabla s + ad_over_h(r, s) - source
        WeylForm x = cov_deriv(fam.connection(), s.degree_part(d - 1)) + sol.algebra().ad_over_h_degree(sol.r(), s, d - 1) -
                     src.degree_part(d - 1);
        s += delta_inv(x);
    }
    return s;
}

std::vector<CheckResult> check_s(const FamilyContext& fam, const TrivializationBeta& beta, int j, const WeylForm& s) {
    const FedosovSolution& sol = fam.solution();
    WeylForm defect = (sol.D(s) - s_source(fam, beta, j)).truncated(sol.truncation() - 1);
    std::ostringstream name;
    name << "s equation, direction t" << j + 1;
    std::vector<CheckResult> out;
    out.push_back(make_check(name.str(), "D_r(i_V s) = V[r] + i_V S/2 + i_V beta", defect.is_zero(),
                             defect.is_zero() ? "" : defect.str(fam.roster()).substr(0, 200)));
    WeylForm ds = delta_star(s);
    out.push_back(make_check("s normalization, direction t" + std::to_string(j + 1), "delta*(i_V s) = 0", ds.is_zero(),
                             ds.is_zero() ? "" : ds.str(fam.roster()).substr(0, 200)));
    return out;
}

// ------------------------------------------------------- connection form

MultiDiffOp connection_operator(const FamilyContext& fam, const WeylForm& s) {
    const FedosovSolution& sol = fam.solution();
    int k = fam.order();
    return extract_operator(1, fam.dim(), k, [](int j) { return j + 1; }, [&](const std::vector<Monomial>& t) {
        return central_ad_over_h(sol.algebra(), s, sol.tau(SPoly::term(Scalar(1), t[0])), k);
    });
}

ConnectionOneForm connection_form(const FamilyContext& fam, const TrivializationBeta& beta, std::vector<WeylForm>* sigmas) {
    ConnectionOneForm a;
    a.provenance = "from-s";
    for (int j = 0; j < fam.nparams(); ++j) {
        WeylForm s = solve_s(fam, beta, j);
        a.a.push_back(connection_operator(fam, s));
        if (sigmas) sigmas->push_back(std::move(s));
    }
    return a;
}

CheckResult check_hochschild_identity(const MultiDiffOp& a, const StarTruncation& m, const MultiDiffOp& variation,
                                      unsigned maxdeg, const Roster& roster, const std::string& name) {
    int k = m.order;
    std::vector<Monomial> basis = monomials_up_to(0, m.op.dim(), maxdeg);
    for (const auto& fm : basis)
        for (const auto& gm : basis) {
            HSeries f(SPoly::term(Scalar(1), fm), k), g(SPoly::term(Scalar(1), gm), k);
            HSeries lhs = m.apply(a.apply({f}), g) + m.apply(f, a.apply({g})) - a.apply({m.apply(f, g)});
            HSeries rhs = variation.apply({f, g});
            std::string w = series_difference(lhs, rhs, k, roster);
            if (!w.empty()) return make_check(name, "A(V)(f)*g + f*A(V)(g) - A(V)(f*g) = f V[*] g", false, "at " + pair_string(fm, gm, roster) + ": " + w);
        }
    return make_check(name, "A(V)(f)*g + f*A(V)(g) - A(V)(f*g) = f V[*] g", true);
}

std::vector<CheckResult> verify_compatibility(const FamilyContext& fam, const ConnectionOneForm& a) {
    std::vector<CheckResult> out;
    for (int j = 0; j < fam.nparams(); ++j) {
        const MultiDiffOp& op = a.a.at(static_cast<std::size_t>(j));
        std::string name = "compatibility, direction t" + std::to_string(j + 1);
        std::string low;
        for (const auto& [key, c] : op.terms())
            if (key.h == 0) {
                low = "A has an h^0 term";
                break;
            }
        if (!low.empty()) {
            out.push_back(make_check(name, "d_H A(V) = V[*]", false, low));
            continue;
        }
        out.push_back(check_hochschild_identity(op, fam.star(), variation_star(fam, j), static_cast<unsigned>(fam.order() + 1),
                                                fam.roster(), name));
    }
    return out;
}

CheckResult check_lowest_order(const FamilyContext& fam, const TrivializationBeta& beta, const MultiDiffOp& a, int j,
                               unsigned maxdeg) {
    const SymplecticData& sd = fam.symplectic();
    int dim = fam.dim();
    const auto& bj = beta.beta.at(static_cast<std::size_t>(j));
    DiffForm b1 = bj.size() > 1 ? bj[1] : DiffForm{};
    std::string name = "lowest order of A, direction t" + std::to_string(j + 1);
    const char* anchor = "A(V)(f) = -h i_V i_{X_f} beta_1 mod h^2";
    for (const auto& m : monomials_up_to(0, dim, maxdeg)) {
        SPoly f = SPoly::term(Scalar(1), m);
        auto x = hamiltonian_vf(sd, f);
        SPoly contraction;
        for (int k = 0; k < dim; ++k) {
            auto it = b1.find(static_cast<std::uint16_t>(1U << static_cast<unsigned>(k)));
            if (it != b1.end()) contraction += x[static_cast<std::size_t>(k)] * it->second;
        }
        HSeries expect(1);
        expect[1] = -contraction;
        HSeries got = a.truncated(1).apply({HSeries(f, 1)});
        std::string w = series_difference(got, expect, 1, fam.roster());
        if (!w.empty()) {
            std::string ms = monomial_string(m, fam.roster());
            return make_check(name, anchor, false, "f = " + (ms.empty() ? std::string("1") : ms) + ": " + w);
        }
    }
    return make_check(name, anchor, true);
}

// --------------------------------------------------------------- curvature

MultiDiffOp connection_curvature(const ConnectionOneForm& a, const FamilyContext& fam, int i, int j) {
    const MultiDiffOp& ai = a.a.at(static_cast<std::size_t>(i));
    const MultiDiffOp& aj = a.a.at(static_cast<std::size_t>(j));
    return (op_derivative(aj, fam.connection().tvar(i)) - op_derivative(ai, fam.connection().tvar(j)) + compose(ai, aj) -
            compose(aj, ai))
        .truncated(fam.order());
}

CurvatureResult curvature(const FamilyContext& fam, const ConnectionOneForm& a, const std::vector<WeylForm>& sigmas, int i,
                          int j) {
    int k = fam.order();
    int ti = fam.connection().tvar(i), tj = fam.connection().tvar(j);
    CurvatureResult res;
    res.direct = connection_curvature(a, fam, i, j);

    const FedosovSolution& sol = fam.solution();
    const WeylForm& si = sigmas.at(static_cast<std::size_t>(i));
    const WeylForm& sj = sigmas.at(static_cast<std::size_t>(j));
    int n = sol.truncation();
    WeylForm x = vary(sj, ti, {Scalar(1)}) - vary(si, tj, {Scalar(1)}) + degree_range_ad(sol.algebra(), si, sj, n);
    res.from_s = extract_operator(1, fam.dim(), k, [](int h) { return h + 2; }, [&](const std::vector<Monomial>& t) {
        return central_ad_over_h(sol.algebra(), x, sol.tau(SPoly::term(Scalar(1), t[0])), k);
    });
    res.mismatch = compare_on_basis(res.direct, res.from_s, static_cast<unsigned>(k + 2), k, fam.roster());
    return res;
}

}  // namespace starconn
