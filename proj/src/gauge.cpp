#include "starconn/gauge.hpp"

#include <sstream>

namespace starconn {

namespace {

std::string first_line(const MultiDiffOp& a, const Roster& roster) {
    std::string s = a.str(roster);
    auto nl = s.find('\n');
    return nl == std::string::npos ? s : s.substr(0, nl);
}

void require_no_h0(const MultiDiffOp& a, const char* what) {
    for (const auto& [key, c] : a.terms())
        if (key.h == 0) throw MathError(std::string(what) + " has an h^0 term");
}

// -Poincare homotopy on parameter space: P with d/dt_j P = -b[j] and P(0) = 0.
MultiDiffOp integrate_defect(const std::vector<MultiDiffOp>& b, const FamilyContext& fam) {
    int dim = fam.dim(), m = fam.nparams();
    MultiDiffOp out(1, dim);
    for (int j = 0; j < m; ++j) {
        int tv = fam.connection().tvar(j);
        for (const auto& [key, c] : b[static_cast<std::size_t>(j)].terms()) {
            SPoly acc;
            for (const auto& [mono, coef] : c.terms()) {
                unsigned tdeg = mono.partial_degree(dim, m);
                acc.add_term(mono * Monomial::var(tv), -coef / Scalar(static_cast<long>(tdeg + 1)));
            }
            out.add_term(key, acc);
        }
    }
    return out;
}

}  // namespace

FormalSeriesOp parallel_transport(const MultiDiffOp& a, const FamilyContext& fam, int j, int order, const Scalar& start) {
    require_no_h0(a, "connection");
    int dim = fam.dim();
    int tv = fam.connection().tvar(j);
    std::vector<MultiDiffOp> parts{MultiDiffOp::identity(dim)};
    std::vector<MultiDiffOp> ak;
    for (int k = 0; k <= order; ++k) ak.push_back(a.h_part(static_cast<unsigned>(k)));
    for (int l = 1; l <= order; ++l) {
        MultiDiffOp x(1, dim);
        for (int k = 1; k <= l; ++k) x += compose(ak[static_cast<std::size_t>(k)], parts[static_cast<std::size_t>(l - k)]);
        parts.push_back(x.map_coeffs([tv, &start](const SPoly& c) {
            SPoly f = c.antiderivative(tv);
            return f.substitute(tv, start) - f;
        }));
    }
    MultiDiffOp phi(1, dim, order);
    for (int l = 0; l <= order; ++l) phi += parts[static_cast<std::size_t>(l)].shifted(l);
    return phi;
}

CheckResult check_conjugation(const FamilyContext& fam, const FormalSeriesOp& phi, int j) {
    const StarTruncation& st = fam.star();
    int k = st.order;
    MultiDiffOp star0 = op_substitute(st.op, fam.connection().tvar(j), Scalar(0));
    MultiDiffOp inv = invert(phi.truncated(k));
    MultiDiffOp conj = phi.truncated(k).insert(0, star0.insert(0, inv).insert(1, inv)).truncated(k);
    auto diff = compare_on_basis(st.op, conj, static_cast<unsigned>(k + 1), k, fam.roster());
    return make_check("transport conjugation, direction t" + std::to_string(j + 1),
                      "*_t = Phi o *_0 o (Phi^-1 x Phi^-1)", !diff, diff.value_or(""));
}

CheckResult check_self_equivalence(const MultiDiffOp& p, const StarTruncation& m, unsigned maxdeg, const Roster& roster) {
    int k = m.order;
    MultiDiffOp pk = p.truncated(k);
    MultiDiffOp lhs = pk.insert(0, m.op).truncated(k);
    MultiDiffOp rhs = m.op.insert(0, pk).insert(1, pk).truncated(k);
    auto diff = compare_on_basis(lhs, rhs, maxdeg, k, roster);
    return make_check("self-equivalence", "P(f * g) = P(f) * P(g)", !diff, diff.value_or(""));
}

ConnectionOneForm gauge_transform(const ConnectionOneForm& a, const MultiDiffOp& p, const FamilyContext& fam) {
    int k = fam.order();
    MultiDiffOp pk = p.truncated(k);
    MultiDiffOp inv = invert(pk);
    ConnectionOneForm out;
    out.provenance = "user-supplied";
    for (int j = 0; j < fam.nparams(); ++j) {
        const MultiDiffOp& aj = a.a.at(static_cast<std::size_t>(j));
        MultiDiffOp x = op_derivative(pk, fam.connection().tvar(j)) + compose(aj, pk);
        out.a.push_back(compose(inv, x).truncated(k));
    }
    return out;
}

GaugeResult gauge_equivalence(const ConnectionOneForm& a, const ConnectionOneForm& a2, const FamilyContext& fam) {
    int k = fam.order(), m = fam.nparams(), dim = fam.dim();
    Roster roster = fam.roster();
    if (static_cast<int>(a.a.size()) != m || static_cast<int>(a2.a.size()) != m)
        throw MathError("connection has the wrong number of components");
    for (const auto* c : {&a, &a2}) {
        for (const auto& r : verify_compatibility(fam, *c))
            if (!r.passed()) throw MathError("connection not compatible: " + r.name + ": " + r.witness);
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                MultiDiffOp f = connection_curvature(*c, fam, i, j);
                if (!f.is_zero())
                    throw MathError("connections not flat / hypothesis violated: curvature(t" + std::to_string(i + 1) + ",t" +
                                    std::to_string(j + 1) + ") has " + first_line(f, roster));
            }
    }

    MultiDiffOp p = MultiDiffOp::identity(dim).truncated(k);
    for (int l = 0; l < k; ++l) {
        std::vector<MultiDiffOp> b;
        for (int j = 0; j < m; ++j) {
            const MultiDiffOp& aj = a.a[static_cast<std::size_t>(j)];
            const MultiDiffOp& bj = a2.a[static_cast<std::size_t>(j)];
            MultiDiffOp defect = op_derivative(p, fam.connection().tvar(j)) - compose(p, bj) + compose(aj, p);
            b.push_back(defect.h_part(static_cast<unsigned>(l + 1)));
        }
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                MultiDiffOp db = op_derivative(b[static_cast<std::size_t>(j)], fam.connection().tvar(i)) -
                                 op_derivative(b[static_cast<std::size_t>(i)], fam.connection().tvar(j));
                if (!db.is_zero())
                    throw MathError("connections not flat / hypothesis violated: d_T B at order " + std::to_string(l + 1) +
                                    " has " + first_line(db, roster));
            }
        p += integrate_defect(b, fam).shifted(l + 1);
    }

    GaugeResult res{p, {}};
    for (int j = 0; j < m; ++j) {
        const MultiDiffOp& aj = a.a[static_cast<std::size_t>(j)];
        const MultiDiffOp& bj = a2.a[static_cast<std::size_t>(j)];
        MultiDiffOp lhs = op_derivative(p, fam.connection().tvar(j));
        MultiDiffOp rhs = (compose(p, bj) - compose(aj, p)).truncated(k);
        auto diff = compare_on_basis(lhs, rhs, static_cast<unsigned>(k + 1), k, roster);
        res.checks.push_back(make_check("gauge relation, direction t" + std::to_string(j + 1), "V[P] = P A'(V) - A(V) P",
                                        !diff, diff.value_or("")));
    }
    res.checks.push_back(check_self_equivalence(p, fam.star(), static_cast<unsigned>(k + 1), roster));
    return res;
}

MultiDiffOp exponential(const MultiDiffOp& d) {
    require_no_h0(d, "exponent");
    int k = d.order();
    if (k == kExactOrder) throw MathError("exponential needs a truncated operator");
    MultiDiffOp sum = MultiDiffOp::identity(d.dim()).truncated(k);
    MultiDiffOp term = sum;
    for (int n = 1; n <= k; ++n) {
        term = compose(term, d).truncated(k) * Scalar::rational(1, n);
        sum += term;
    }
    return sum;
}

}  // namespace starconn
