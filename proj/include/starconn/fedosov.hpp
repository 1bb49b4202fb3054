#pragma once

#include <array>
#include <map>
#include <mutex>
#include <vector>

#include "starconn/polydiff.hpp"
#include "starconn/symplectic.hpp"
#include "starconn/weyl.hpp"

namespace starconn {

/// Connection plus the formal 2-form omega + sum_{k>=1} h^k alpha_k.
class FedosovSetup {
public:
    /// alpha[k] is the h^k coefficient; alpha[0] must be empty (omega is implied).
    FedosovSetup(ConnectionFamily c, std::vector<DiffForm> alpha);

    const ConnectionFamily& connection() const { return conn_; }
    const SymplecticData& symplectic() const { return conn_.symplectic(); }
    int dim() const { return conn_.dim(); }
    const std::vector<DiffForm>& alpha() const { return alpha_; }
    /// sum_{k>=1} h^k alpha_k as a central Weyl form.
    WeylForm alpha_weyl() const;
    /// omega as a scalar 2-form.
    DiffForm omega_form() const;

    /// Connection is symplectic and each alpha_k is closed.
    std::vector<CheckResult> validate() const;

private:
    ConnectionFamily conn_;
    std::vector<DiffForm> alpha_;
};

/// Abelian connection r and flat sections for a setup, computed up to total
/// degree N.
class FedosovSolution {
public:
    FedosovSolution(FedosovSetup setup, int truncation);

    const FedosovSetup& setup() const { return setup_; }
    int truncation() const { return n_; }
    const WeylForm& r() const { return r_; }
    const WeylForm& curvature() const { return curv_; }
    const WeylAlgebra& algebra() const { return setup_.symplectic().algebra(); }

    /// D_r a = -delta a + d_nabla a + ad_over_h(r, a).
    WeylForm D(const WeylForm& a) const;
    /// Flat section with center f, up to total degree N. Linear over the
    /// parameters, so results are cached per x-monomial.
    WeylForm tau(const SPoly& f) const;
    /// f * g mod h^{K+1}; requires 2K <= N.
    HSeries star(const SPoly& f, const SPoly& g, int k) const;

private:
    WeylForm tau_monomial(const Monomial& m) const;

    FedosovSetup setup_;
    int n_;
    WeylForm curv_;
    WeylForm r_;
    mutable std::mutex cache_mutex_;
    mutable std::map<Monomial, WeylForm> tau_cache_;
};

/// The central 2-form omega + delta r + R - d_nabla r - (i/h) r o r, listed by
/// h-power, valid below total degree N. Throws MathError when the non-central
/// part does not vanish.
std::vector<DiffForm> weyl_curvature(const ConnectionFamily& c, const WeylForm& r);

/// p(a o b) restricted to h-powers <= k, for form-degree 0 inputs.
HSeries central_product(const WeylAlgebra& w, const WeylForm& a, const WeylForm& b, int k);

/// p(ad_over_h(a, b)) restricted to h-powers <= k, for form-degree 0 inputs.
HSeries central_ad_over_h(const WeylAlgebra& w, const WeylForm& a, const WeylForm& b, int k);

/// A star product to order K as a bidifferential operator.
struct StarTruncation {
    int order = 0;
    MultiDiffOp op;

    HSeries apply(const SPoly& f, const SPoly& g) const { return op.apply({f, g}); }
    HSeries apply(const HSeries& f, const HSeries& g) const { return op.apply({f, g}); }
};

/// Recovers c^0..c^K by evaluation on monomials of degree <= k per slot.
StarTruncation extract_bidiff(const FedosovSolution& sol, int k);

/// Truncation order used for a star product of order K.
inline int fedosov_truncation(int k) { return 2 * k; }

/// Closed-form Moyal coefficients (i/2)^k/k! pi^{i1j1}...pi^{ikjk} d^k (x) d^k.
MultiDiffOp moyal_operator(const SymplecticData& sd, int k);

/// Unit, c^0, c^1 antisymmetry, differential order and associativity (on
/// all monomial triples of degree <= maxdeg) of a truncated star product.
std::vector<CheckResult> check_star_axioms(const StarTruncation& s, const SymplecticData& sd, unsigned maxdeg,
                                           const Roster& roster);

/// delta* r = 0, weyl_curvature(r) = omega + alpha within the valid range, and
/// D_r tau(f) = 0 with center f for monomials f of degree <= maxdeg.
std::vector<CheckResult> check_solution(const FedosovSolution& sol, unsigned maxdeg, const Roster& roster);

/// Associativity on explicit triples.
CheckResult check_associativity(const StarTruncation& s, const std::vector<std::array<SPoly, 3>>& triples,
                                const Roster& roster);

}  // namespace starconn
