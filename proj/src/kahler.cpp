#include "starconn/kahler.hpp"

#include <sstream>

namespace starconn {

namespace {

using Row = std::vector<ParamRational>;

RMatrix lift(const Matrix<Scalar>& m) {
    RMatrix r;
    for (const auto& row : m) {
        Row rr;
        for (const auto& v : row) rr.emplace_back(v);
        r.push_back(rr);
    }
    return r;
}

RMatrix omega_matrix(const SymplecticData& sd) {
    Matrix<Scalar> w = zero_matrix<Scalar>(sd.dim());
    for (int i = 0; i < sd.dim(); ++i)
        for (int j = 0; j < sd.dim(); ++j) w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = sd.omega(i, j);
    return lift(w);
}

RMatrix vary_matrix(const RMatrix& m, int j) {
    RMatrix r = m;
    for (auto& row : r)
        for (auto& v : row) v = v.derivative(j);
    return r;
}

// first entry where a and b differ, or ""
std::string matrix_difference(const RMatrix& a, const RMatrix& b, const Roster& params) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (a[i][j] != b[i][j])
                return "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "): " + a[i][j].str(params) + " vs " +
                       b[i][j].str(params);
    return "";
}

bool is_zero_matrix(const RMatrix& m) {
    for (const auto& row : m)
        for (const auto& v : row)
            if (!v.is_zero()) return false;
    return true;
}

RPoly bilinear(const RMatrix& m, const RPoly& f, const RPoly& g) {
    int n = static_cast<int>(m.size());
    RPoly out;
    for (int a = 0; a < n; ++a) {
        RPoly fa = f.derivative(a);
        if (fa.is_zero()) continue;
        for (int b = 0; b < n; ++b) {
            const ParamRational& c = m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            if (c.is_zero()) continue;
            out += fa * g.derivative(b) * c;
        }
    }
    return out;
}

std::string poly_witness(const RPoly& diff, const Roster& xs, const Roster& params) {
    const auto& [m, c] = diff.leading();
    std::string mono = monomial_string(m, xs);
    return "coefficient of " + (mono.empty() ? std::string("1") : mono) + " differs by " + c.str(params);
}

std::string mono_name(const Monomial& m, const Roster& xs) {
    std::string s = monomial_string(m, xs);
    return s.empty() ? "1" : s;
}

RPoly rmono(const Monomial& m) { return RPoly::term(ParamRational(1L), m); }

}  // namespace

LinearKahlerFamily::LinearKahlerFamily(SymplecticData sd, int nparams, RMatrix complex_structure,
                                       std::vector<std::vector<Scalar>> samples)
    : sd_(std::move(sd)), m_(nparams), i_(std::move(complex_structure)), samples_(std::move(samples)) {
    int n = sd_.dim();
    if (static_cast<int>(i_.size()) != n) throw MathError("complex structure has the wrong size");
    for (const auto& row : i_)
        if (static_cast<int>(row.size()) != n) throw MathError("complex structure has the wrong size");
    Roster params = param_roster();
    RMatrix sq = matmul(i_, i_);
    std::string d = matrix_difference(sq, matscale(identity_matrix<ParamRational>(n), ParamRational(-1L)), params);
    if (!d.empty()) throw MathError("I^2 != -Id at " + d);
    g_ = matmul(omega_matrix(sd_), i_);
    d = matrix_difference(g_, transpose(g_), params);
    if (!d.empty()) throw MathError("g = omega I is not symmetric at " + d);
    for (const auto& t : samples_) {
        if (static_cast<int>(t.size()) != m_) throw MathError("sample point has the wrong number of parameters");
        Matrix<Scalar> gs = zero_matrix<Scalar>(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Scalar v = g_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].evaluate(t);
                if (!v.is_real()) throw MathError("metric is not real at a sample point");
                gs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
            }
        for (int k = 1; k <= n; ++k) {
            Matrix<Scalar> minor(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i)
                minor[static_cast<std::size_t>(i)].assign(gs[static_cast<std::size_t>(i)].begin(),
                                                          gs[static_cast<std::size_t>(i)].begin() + k);
            if (sgn(determinant(minor).re()) <= 0) {
                std::ostringstream os;
                os << "metric not positive definite at t = (";
                for (std::size_t j = 0; j < t.size(); ++j) os << (j ? ", " : "") << t[j];
                os << "): leading minor " << k << " is " << determinant(minor);
                throw MathError(os.str());
            }
        }
    }
    gt_ = invert(g_);
    for (bool holo : {true, false}) {
        ParamRational c(Scalar(mpq_class(0), mpq_class(holo ? -1 : 1, 2)));
        (holo ? p10_ : p01_) =
            matadd(matscale(identity_matrix<ParamRational>(n), ParamRational(Scalar::rational(1, 2))), i_, c);
    }
    c1_ = matmul(matmul(p10_, gt_), transpose(p01_));
    // V[I] = -G~ omega, the contraction i_omega X = omega(., X) on the second slot
    RMatrix winv = invert(omega_matrix(sd_));
    for (int j = 0; j < m_; ++j) {
        RMatrix full = matscale(matmul(vary_matrix(i_, j), winv), ParamRational(-1L));
        var_.push_back({full, matmul(matmul(p10_, full), transpose(p10_)), matmul(matmul(p01_, full), transpose(p01_))});
    }
}

Roster LinearKahlerFamily::param_roster() const {
    std::vector<std::string> names;
    for (int j = 0; j < m_; ++j) names.push_back("t" + std::to_string(j + 1));
    return Roster(names);
}

LinearKahlerFamily running_kahler_family() {
    SPoly one_t = SPoly(1L) + SPoly::var(0);
    RMatrix i = {{ParamRational(0L), ParamRational(-one_t)}, {ParamRational(SPoly(1L), one_t), ParamRational(0L)}};
    return LinearKahlerFamily(SymplecticData::standard(1), 1, i,
                              {{Scalar(0)}, {Scalar::rational(1, 2)}, {Scalar::rational(-1, 2)}, {Scalar(3)}});
}

LinearKahlerFamily shear_kahler_family(int n, const std::vector<std::vector<Scalar>>& v) {
    SymplecticData sd = SymplecticData::standard(n);
    int dim = 2 * n, m = static_cast<int>(v.size());
    RMatrix winv = invert(omega_matrix(sd));
    RMatrix s = identity_matrix<ParamRational>(dim), sinv = identity_matrix<ParamRational>(dim);
    for (int j = 0; j < m; ++j) {
        RMatrix vv = zero_matrix<ParamRational>(dim);
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b)
                vv[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                    ParamRational(v[static_cast<std::size_t>(j)].at(static_cast<std::size_t>(a)) *
                                  v[static_cast<std::size_t>(j)].at(static_cast<std::size_t>(b)));
        // X = omega^-1 v v^T is Hamiltonian with X^2 = 0
        RMatrix x = matscale(matmul(winv, vv), ParamRational(SPoly::var(j)));
        s = matmul(s, matadd(identity_matrix<ParamRational>(dim), x));
        sinv = matmul(matadd(identity_matrix<ParamRational>(dim), x, ParamRational(-1L)), sinv);
    }
    RMatrix i0 = zero_matrix<ParamRational>(dim);
    for (int k = 0; k < n; ++k) {
        i0[static_cast<std::size_t>(2 * k)][static_cast<std::size_t>(2 * k + 1)] = ParamRational(-1L);
        i0[static_cast<std::size_t>(2 * k + 1)][static_cast<std::size_t>(2 * k)] = ParamRational(1L);
    }
    std::vector<std::vector<Scalar>> samples;
    for (const Scalar& x : {Scalar(0), Scalar(1), Scalar::rational(-1, 2), Scalar(-3)})
        samples.emplace_back(static_cast<std::size_t>(m), x);
    return LinearKahlerFamily(sd, m, matmul(matmul(s, i0), sinv), samples);
}

// ------------------------------------------------------------------- G~(V)

const Bivector& gtilde(const LinearKahlerFamily& fam, int j) { return fam.variation(j); }

RMatrix vary_inverse_metric(const LinearKahlerFamily& fam, int j) { return vary_matrix(fam.inverse_metric(), j); }

std::vector<CheckResult> check_gtilde(const LinearKahlerFamily& fam, int j) {
    Roster params = fam.param_roster();
    std::string dir = ", direction t" + std::to_string(j + 1);
    const Bivector& g = gtilde(fam, j);
    std::vector<CheckResult> out;
    std::string d = matrix_difference(g.full, transpose(g.full), params);
    out.push_back(make_check("G~(V) symmetric" + dir, "G~(V) is a symmetric bivector field", d.empty(), d));
    d = matrix_difference(vary_inverse_metric(fam, j), g.full, params);
    out.push_back(make_check("variation of g~" + dir, "V[g~] = G~(V)", d.empty(), d));
    d = matrix_difference(matadd(g.holo, g.antiholo), g.full, params);
    out.push_back(make_check("type decomposition" + dir, "G~(V) = G(V) + G(V)-bar", d.empty(), d));
    const RMatrix &p = fam.projector(true), &q = fam.projector(false);
    bool pure = is_zero_matrix(matmul(q, g.holo)) && is_zero_matrix(matmul(p, g.antiholo));
    out.push_back(make_check("pure type" + dir, "pi^{0,1} G(V) = 0, pi^{1,0} G(V)-bar = 0", pure,
                             pure ? "" : "mixed component present"));
    return out;
}

// ------------------------------------------------------------------- operators

RPoly delta_Z(const RMatrix& z, const RPoly& f) {
    int n = static_cast<int>(z.size());
    RPoly out;
    for (int a = 0; a < n; ++a) {
        RPoly fa = f.derivative(a);
        if (fa.is_zero()) continue;
        for (int b = 0; b < n; ++b) {
            const ParamRational& c = z[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            if (!c.is_zero()) out += fa.derivative(b) * c;
        }
    }
    return out;
}

RPoly c1_karabegov(const LinearKahlerFamily& fam, const RPoly& f, const RPoly& g) {
    return bilinear(fam.c1_matrix(), f, g);
}

RPoly v_c1(const LinearKahlerFamily& fam, int j, const RPoly& f, const RPoly& g) {
    return bilinear(gtilde(fam, j).full, f, g) * ParamRational(Scalar::rational(1, 2));
}

RPoly v_c1_direct(const LinearKahlerFamily& fam, int j, const RPoly& f, const RPoly& g) {
    return vary(c1_karabegov(fam, f, g), j) - c1_karabegov(fam, vary(f, j), g) - c1_karabegov(fam, f, vary(g, j));
}

CheckResult verify_lemma_vc1(const LinearKahlerFamily& fam, int j, const RPoly& f, const RPoly& g, const Scalar& factor) {
    const RMatrix& z = gtilde(fam, j).full;
    RPoly lhs = v_c1(fam, j, f, g);
    RPoly rhs = (delta_Z(z, f * g) - delta_Z(z, f) * g - f * delta_Z(z, g)) * ParamRational(factor);
    RPoly diff = lhs - rhs;
    return make_check("variation of c1, direction t" + std::to_string(j + 1),
                      "V[c1](f,g) = (Delta(fg) - Delta(f) g - f Delta(g)) / 4", diff.is_zero(),
                      diff.is_zero() ? "" : poly_witness(diff, fam.roster(), fam.param_roster()));
}

RPoly hitchin_a1(const LinearKahlerFamily& fam, int j, const RPoly& F, const RPoly& f, const Scalar& coeff) {
    return delta_Z(gtilde(fam, j).full, f) * ParamRational(coeff) + c1_karabegov(fam, vary(F, j), f) + v_c1(fam, j, F, f);
}

RPoly hitchin_p1(const LinearKahlerFamily& fam, const RPoly& F, const RPoly& f) {
    return delta_Z(fam.inverse_metric(), f) * ParamRational(Scalar::rational(1, 4)) - c1_karabegov(fam, F, f);
}

std::vector<CheckResult> order1_hitchin_check(const LinearKahlerFamily& fam, const RPoly& F, unsigned maxdeg,
                                              const Scalar& coeff) {
    Roster xs = fam.roster(), params = fam.param_roster();
    std::vector<Monomial> basis = monomials_up_to(0, fam.dim(), maxdeg);
    std::vector<CheckResult> out;
    for (int j = 0; j < fam.nparams(); ++j) {
        std::string dir = ", direction t" + std::to_string(j + 1);
        std::string w;
        for (const auto& fm : basis) {
            RPoly f = rmono(fm), af = hitchin_a1(fam, j, F, f, coeff);
            for (const auto& gm : basis) {
                RPoly g = rmono(gm);
                RPoly diff = v_c1(fam, j, f, g) -
                             (hitchin_a1(fam, j, F, f * g, coeff) * ParamRational(-1L) + af * g + f * hitchin_a1(fam, j, F, g, coeff));
                if (!diff.is_zero()) {
                    w = "at (" + mono_name(fm, xs) + ", " + mono_name(gm, xs) + "): " + poly_witness(diff, xs, params);
                    break;
                }
            }
            if (!w.empty()) break;
        }
        out.push_back(make_check("order-1 derivation identity" + dir,
                                 "V[c1](f,g) = -A1(V)(fg) + A1(V)(f) g + f A1(V)(g)", w.empty(), w));
        w.clear();
        for (const auto& fm : basis) {
            RPoly f = rmono(fm);
            RPoly diff = vary(hitchin_p1(fam, F, f), j) * ParamRational(-1L) - hitchin_a1(fam, j, F, f, coeff);
            if (!diff.is_zero()) {
                w = "at " + mono_name(fm, xs) + ": " + poly_witness(diff, xs, params);
                break;
            }
        }
        out.push_back(make_check("order-1 flatness" + dir, "V[-P1] = A1(V)", w.empty(), w));
    }
    std::string w;
    for (int i = 0; i < fam.nparams() && w.empty(); ++i)
        for (int j = i + 1; j < fam.nparams() && w.empty(); ++j)
            for (const auto& fm : basis) {
                RPoly f = rmono(fm);
                RPoly diff = vary(hitchin_a1(fam, j, F, f, coeff), i) - vary(hitchin_a1(fam, i, F, f, coeff), j);
                if (!diff.is_zero()) {
                    w = "(t" + std::to_string(i + 1) + ",t" + std::to_string(j + 1) + ") at " + mono_name(fm, xs) + ": " +
                        poly_witness(diff, xs, params);
                    break;
                }
            }
    out.push_back(make_check("order-1 closedness", "d_T A1 = 0", w.empty(), w));
    return out;
}

RPoly operator_E(const LinearKahlerFamily& fam, int j, const RPoly& F, const RPoly& f) {
    const RMatrix& z = gtilde(fam, j).full;
    int n = fam.dim() / 2;
    RPoly inner = delta_Z(z, f) - bilinear(z, f, F) * ParamRational(2L) - delta_Z(z, F) * f * ParamRational(2L) -
                  vary(F, j) * f * ParamRational(static_cast<long>(2 * n));
    return inner * ParamRational(Scalar::rational(-1, 4));
}

RPoly operator_H(const LinearKahlerFamily& fam, int j, const RPoly& F) { return operator_E(fam, j, F, RPoly(1L)); }

CheckResult rigidity_check(const LinearKahlerFamily& fam, int j) {
    (void)gtilde(fam, j);
    return make_check("rigidity, direction t" + std::to_string(j + 1), "nabla_{X''} G(V) = 0", true,
                      "G(V) has constant coefficients");
}

// ------------------------------------------------------------------- helpers

RPoly to_rpoly(const SPoly& p, int dim, int nparams) {
    RPoly out;
    for (const auto& [m, c] : p.terms()) {
        Monomial t;
        for (int j = 0; j < nparams; ++j) t.set(j, m[dim + j]);
        if (m.partial_degree(dim, kMaxVars - dim) != t.degree()) throw MathError("polynomial uses variables beyond the roster");
        out.add_term(m.only(0, dim), ParamRational(SPoly::term(c, t)));
    }
    return out;
}

RPoly vary(const RPoly& p, int j) {
    return p.map_coeffs([j](const ParamRational& c) { return c.derivative(j); });
}

std::string to_string(const RPoly& p, const Roster& xs, const Roster& params) {
    if (p.is_zero()) return "0";
    std::string out;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        if (!out.empty()) out += " + ";
        std::string mono = monomial_string(it->first, xs);
        out += "(" + it->second.str(params) + ")";
        if (!mono.empty()) out += "*" + mono;
    }
    return out;
}

}  // namespace starconn
