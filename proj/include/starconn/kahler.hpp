#pragma once

#include <string>
#include <vector>

#include "starconn/matrix.hpp"
#include "starconn/param_rational.hpp"
#include "starconn/report.hpp"
#include "starconn/symplectic.hpp"

namespace starconn {

using RMatrix = Matrix<ParamRational>;

struct Bivector {
    RMatrix full;      // G~(V)
    RMatrix holo;      // G(V), type (2,0)
    RMatrix antiholo;  // G(V)-bar, type (0,2)
};

/// Constant-coefficient complex structures I_t on (R^{2n}, omega) with
/// g_t(X, Y) = omega(X, I_t Y), i.e. g = omega * I as matrices. Functions are
/// RPoly: x1..x{2n} with coefficients rational in t1..tm.
class LinearKahlerFamily {
public:
    /// Throws MathError unless I^2 = -Id, g is symmetric and g is
    /// positive definite at every sample point.
    LinearKahlerFamily(SymplecticData sd, int nparams, RMatrix complex_structure,
                       std::vector<std::vector<Scalar>> samples);

    const SymplecticData& symplectic() const { return sd_; }
    int dim() const { return sd_.dim(); }
    int nparams() const { return m_; }
    const RMatrix& complex_structure() const { return i_; }
    const RMatrix& metric() const { return g_; }
    /// g~ = g^-1.
    const RMatrix& inverse_metric() const { return gt_; }
    const std::vector<std::vector<Scalar>>& samples() const { return samples_; }
    /// pi^{1,0} or pi^{0,1}.
    const RMatrix& projector(bool holomorphic) const { return holomorphic ? p10_ : p01_; }
    /// pi^{1,0} g~ (pi^{0,1})^T, the matrix of c1.
    const RMatrix& c1_matrix() const { return c1_; }
    const Bivector& variation(int j) const { return var_.at(static_cast<std::size_t>(j)); }
    Roster roster() const { return Roster::standard(dim(), 0); }
    Roster param_roster() const;

private:
    SymplecticData sd_;
    int m_;
    RMatrix i_, g_, gt_, p10_, p01_, c1_;
    std::vector<Bivector> var_;
    std::vector<std::vector<Scalar>> samples_;
};

/// R^2 with I_t = [[0, -(1+t)], [1/(1+t), 0]].
LinearKahlerFamily running_kahler_family();
/// I_t = S(t) I_0 S(t)^-1 with S(t) = prod_j (Id + t_j pi v_j v_j^T), a product of
/// symplectic shears; I_0 the standard structure.
LinearKahlerFamily shear_kahler_family(int n, const std::vector<std::vector<Scalar>>& v);

/// G~(V) from V[I]^a_b = G~^{ac} omega_{bc} for V = d/dt_j, with its type parts
/// (cached on the family).
const Bivector& gtilde(const LinearKahlerFamily& fam, int j);
/// V[g~] by differentiating the inverse metric.
RMatrix vary_inverse_metric(const LinearKahlerFamily& fam, int j);
std::vector<CheckResult> check_gtilde(const LinearKahlerFamily& fam, int j);

/// Z^{ij} d_i d_j f for a constant symmetric Z.
RPoly delta_Z(const RMatrix& z, const RPoly& f);

/// g~(df pi^{1,0}, dg pi^{0,1}).
RPoly c1_karabegov(const LinearKahlerFamily& fam, const RPoly& f, const RPoly& g);
/// df G~(V) dg / 2.
RPoly v_c1(const LinearKahlerFamily& fam, int j, const RPoly& f, const RPoly& g);
/// d/dt_j of c1 with f, g held fixed.
RPoly v_c1_direct(const LinearKahlerFamily& fam, int j, const RPoly& f, const RPoly& g);

/// V[c1](f, g) = factor (Delta(fg) - Delta(f) g - f Delta(g)), Delta = Delta_{G~(V)}.
CheckResult verify_lemma_vc1(const LinearKahlerFamily& fam, int j, const RPoly& f, const RPoly& g,
                             const Scalar& factor = Scalar::rational(1, 4));

/// A~1(V)(f) = coeff Delta_{G~(V)} f + c1(V[F], f) + V[c1](F, f), coeff = -1/4.
RPoly hitchin_a1(const LinearKahlerFamily& fam, int j, const RPoly& F, const RPoly& f,
                 const Scalar& coeff = Scalar::rational(-1, 4));
/// P1(f) = Delta_{g~} f / 4 - c1(F, f).
RPoly hitchin_p1(const LinearKahlerFamily& fam, const RPoly& F, const RPoly& f);

/// Derivation identity, flatness V[-P1] = A~1(V), and d_T A~1 = 0 on the
/// monomial basis of degree <= maxdeg, all directions.
std::vector<CheckResult> order1_hitchin_check(const LinearKahlerFamily& fam, const RPoly& F, unsigned maxdeg,
                                              const Scalar& coeff = Scalar::rational(-1, 4));

/// E(V)(f) and H(V) = E(V)(1), evaluated for display.
RPoly operator_E(const LinearKahlerFamily& fam, int j, const RPoly& F, const RPoly& f);
RPoly operator_H(const LinearKahlerFamily& fam, int j, const RPoly& F);

/// G(V) is constant in x for linear families, so it is parallel.
CheckResult rigidity_check(const LinearKahlerFamily& fam, int j);

/// SPoly over x1..x{dim}, t1..tm (t at index dim + j) to RPoly.
RPoly to_rpoly(const SPoly& p, int dim, int nparams);
/// Coefficientwise d/dt_j.
RPoly vary(const RPoly& p, int j);
std::string to_string(const RPoly& p, const Roster& xs, const Roster& params);

}  // namespace starconn
