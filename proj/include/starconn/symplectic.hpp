#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "starconn/matrix.hpp"
#include "starconn/poly.hpp"
#include "starconn/report.hpp"
#include "starconn/weyl.hpp"

namespace starconn {

/// Constant symplectic form on R^{2n} with its Poisson tensor. The pair is
/// normalized by sum_j pi^{ij} omega_{kj} = delta^i_k, so pi = omega^{-T}.
class SymplecticData {
public:
    explicit SymplecticData(Matrix<Scalar> omega);
    /// omega = sum_k dx^{2k-1} ^ dx^{2k}.
    static SymplecticData standard(int n);

    int dim() const { return static_cast<int>(omega_.size()); }
    const Matrix<Scalar>& omega() const { return omega_; }
    const Matrix<Scalar>& pi() const { return pi_; }
    const Scalar& omega(int i, int j) const { return omega_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    const Scalar& pi(int i, int j) const { return pi_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    /// Fiberwise Moyal product built from pi (shared, thread-safe cache).
    const WeylAlgebra& algebra() const { return *algebra_; }

private:
    Matrix<Scalar> omega_;
    Matrix<Scalar> pi_;
    std::shared_ptr<WeylAlgebra> algebra_;
};

/// Scalar differential form on R^{2n}: dx^J bitmask -> coefficient.
using DiffForm = std::map<std::uint16_t, SPoly>;

void add_to_form(DiffForm& f, std::uint16_t mask, const SPoly& c);
DiffForm form_add(DiffForm a, const DiffForm& b, const Scalar& scale = Scalar(1));
/// Exterior derivative in x^1..x^dim.
DiffForm d_form(const DiffForm& f, int dim);
/// Homotopy operator from the origin: d K + K d = id on forms of positive
/// degree, K(x^g dx^J) = x^g i_E(dx^J) / (|g| + |J|) with E the Euler field.
DiffForm poincare(const DiffForm& f, int dim);
DiffForm map_form(const DiffForm& f, const std::function<SPoly(const SPoly&)>& fn);
bool form_is_zero(const DiffForm& f);
/// `(x1)*dx2 + (-x2)*dx1`, ascending in the dx multi-index; "0" when empty.
std::string form_string(const DiffForm& f, const Roster& roster);
/// h^k f embedded as a fiberwise-constant Weyl form.
WeylForm form_to_weyl(const DiffForm& f, int dim, unsigned hpow);

/// Family of torsion-free connections Gamma^k_{ij}(x; t) on R^{2n}, with
/// x1..x{2n} at variable indices 0..2n-1 and t1..tm following.
class ConnectionFamily {
public:
    ConnectionFamily(SymplecticData sd, int nparams);
    /// Gamma^k_{ij} = pi^{kl} d_l d_i d_j phi: symplectic for every phi.
    static ConnectionFamily from_potential(SymplecticData sd, int nparams, const SPoly& phi);

    const SymplecticData& symplectic() const { return sd_; }
    int dim() const { return sd_.dim(); }
    int nparams() const { return nparams_; }
    int tvar(int j) const { return dim() + j; }
    Roster roster() const { return Roster::standard(dim(), nparams_); }

    /// Sets Gamma^k_{ij} and Gamma^k_{ji}.
    void set(int k, int i, int j, const SPoly& v);
    const SPoly& gamma(int k, int i, int j) const {
        return g_[static_cast<std::size_t>((k * dim() + i) * dim() + j)];
    }
    /// (Gamma_i)^j_k = Gamma^j_{ik}.
    Matrix<SPoly> gamma_matrix(int i) const;
    bool is_flat() const;
    /// Coefficientwise map (e.g. d/dt_j or substitution of parameters).
    ConnectionFamily map(const std::function<SPoly(const SPoly&)>& fn) const;

private:
    SymplecticData sd_;
    int nparams_;
    std::vector<SPoly> g_;
};

/// Checks nabla omega = 0 identically in x and t.
CheckResult validate_connection(const ConnectionFamily& c);

/// d_nabla a = sum_i dx^i ^ (d/dx^i - L_{Gamma_i}) a, where L_M acts on the
/// fiber by y^j -> M^j_k y^k.
WeylForm cov_deriv(const ConnectionFamily& c, const WeylForm& a);
/// The y-quadratic q with ad_over_h(q, .) = L_M for M in sp(omega).
WeylForm quadratic_generator(const SymplecticData& sd, const Matrix<SPoly>& m);
/// R with d_nabla^2 = -ad_over_h(R, .).
WeylForm curvature_weyl(const ConnectionFamily& c);
/// i_V S with V[d_nabla] = (1/2) ad_over_h(i_V S, .); V = sum_j v_j d/dt_j.
WeylForm variation_S(const ConnectionFamily& c, const std::vector<Scalar>& v);
/// omega_{ij} y^i dx^j.
WeylForm omega_tilde(const SymplecticData& sd);
/// V[a] for V = sum_j v_j d/dt_j applied to the coefficients.
WeylForm vary(const WeylForm& a, int tvar0, const std::vector<Scalar>& v);

/// {f, g} = pi^{ij} d_i f d_j g.
SPoly poisson_bracket(const SymplecticData& sd, const SPoly& f, const SPoly& g);
/// X_f with X_f(g) = {f, g}, i.e. X_f^k = pi^{jk} d_j f.
std::vector<SPoly> hamiltonian_vf(const SymplecticData& sd, const SPoly& f);
SPoly apply_vf(const std::vector<SPoly>& x, const SPoly& g);

}  // namespace starconn
