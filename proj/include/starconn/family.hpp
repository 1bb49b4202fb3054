#pragma once

#include <memory>
#include <string>
#include <vector>

#include "starconn/fedosov.hpp"
#include "starconn/polydiff.hpp"

namespace starconn {

/// Family of Fedosov setups over parameters t1..tm (polynomial in t), with
/// the star product computed to order K at generic t.
class FamilyContext {
public:
    FamilyContext(FedosovSetup setup, int order);

    const FedosovSetup& setup() const { return sol_->setup(); }
    const FedosovSolution& solution() const { return *sol_; }
    const SymplecticData& symplectic() const { return setup().symplectic(); }
    const ConnectionFamily& connection() const { return setup().connection(); }
    int dim() const { return setup().dim(); }
    int nparams() const { return connection().nparams(); }
    int order() const { return k_; }
    Roster roster() const { return connection().roster(); }
    /// Coordinate field d/dt_j as a coefficient vector.
    std::vector<Scalar> coordinate(int j) const;

    /// c^0..c^K at generic t (extracted once, shared).
    const StarTruncation& star() const;

private:
    int k_;
    std::shared_ptr<FedosovSolution> sol_;
    mutable std::shared_ptr<StarTruncation> star_;
};

/// beta[j][k]: the h^k 1-form of i_{d/dt_j} beta.
struct TrivializationBeta {
    std::vector<std::vector<DiffForm>> beta;

    WeylForm weyl(int j, int dim) const;
};

/// beta = d_T K(alpha - alpha_{t0}), with K the Poincare homotopy on R^{2n}.
/// Throws MathError if a variation of alpha is not closed.
TrivializationBeta trivialize_alpha(const FamilyContext& fam, const std::vector<Scalar>& basepoint);
/// d_M i_V beta = V[alpha] for each coordinate field.
CheckResult check_trivialization(const FamilyContext& fam, const TrivializationBeta& beta);

/// V[*] = coefficientwise d/dt_j of the extracted star product.
MultiDiffOp variation_star(const FamilyContext& fam, int j);

/// i_V s for V = d/dt_j: the element with D_r(i_V s) = V[r] + i_V S / 2 + i_V beta
/// and vanishing center. The sign of beta is the one for which the equation is
/// solvable exactly when d_M i_V beta = V[alpha]. Throws MathError when d_M i_V beta != V[alpha].
WeylForm solve_s(const FamilyContext& fam, const TrivializationBeta& beta, int j);
/// The defining equation of i_V s up to the truncation, and delta* (i_V s) = 0.
std::vector<CheckResult> check_s(const FamilyContext& fam, const TrivializationBeta& beta, int j, const WeylForm& s);

struct ConnectionOneForm {
    std::vector<MultiDiffOp> a;  // A(d/dt_j)
    std::string provenance;      // "from-s" or "user-supplied"
};

/// f -> p(ad_over_h(i_V s, tau(f))) as an operator, order bound k+1 at h^k.
MultiDiffOp connection_operator(const FamilyContext& fam, const WeylForm& s);
/// Solves s for every coordinate field and assembles A.
ConnectionOneForm connection_form(const FamilyContext& fam, const TrivializationBeta& beta,
                                  std::vector<WeylForm>* sigmas = nullptr);

/// A(V)(f) * g + f * A(V)(g) - A(V)(f * g) = f V[*] g on all monomial pairs
/// of degree <= K + 1, for every coordinate field.
std::vector<CheckResult> verify_compatibility(const FamilyContext& fam, const ConnectionOneForm& a);
/// Same identity for a single operator against a given variation.
CheckResult check_hochschild_identity(const MultiDiffOp& a, const StarTruncation& m, const MultiDiffOp& variation,
                                      unsigned maxdeg, const Roster& roster, const std::string& name);

/// A(V)(f) = -h i_V i_{X_f} beta_1 mod h^2 on monomials of degree <= maxdeg.
CheckResult check_lowest_order(const FamilyContext& fam, const TrivializationBeta& beta, const MultiDiffOp& a, int j,
                               unsigned maxdeg);

/// V[A(W)] - W[A(V)] + [A(V), A(W)] for V = d/dt_i, W = d/dt_j, truncated at K.
MultiDiffOp connection_curvature(const ConnectionOneForm& a, const FamilyContext& fam, int i, int j);

struct CurvatureResult {
    MultiDiffOp direct;   // V[A(W)] - W[A(V)] + [A(V), A(W)]
    MultiDiffOp from_s;   // f -> p(ad_over_h(V s_W - W s_V + ad_over_h(s_V, s_W), tau(f)))
    std::optional<std::string> mismatch;
};

/// Both curvature computations for V = d/dt_i, W = d/dt_j.
CurvatureResult curvature(const FamilyContext& fam, const ConnectionOneForm& a, const std::vector<WeylForm>& sigmas,
                          int i, int j);

}  // namespace starconn
