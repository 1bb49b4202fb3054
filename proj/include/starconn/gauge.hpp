#pragma once

#include <string>
#include <vector>

#include "starconn/family.hpp"

namespace starconn {

/// Phi(t) solving dPhi/dt_j = -A(d/dt_j) o Phi with Phi = id at t_j = start;
/// the other parameters stay symbolic. Throws MathError if A has an h^0 term.
FormalSeriesOp parallel_transport(const MultiDiffOp& a, const FamilyContext& fam, int j, int order,
                                  const Scalar& start = Scalar(0));

/// *_t = Phi o *_{t_j=0} o (Phi^-1 x Phi^-1) on the monomial basis.
CheckResult check_conjugation(const FamilyContext& fam, const FormalSeriesOp& phi, int j);

/// P(f * g) = P(f) * P(g) mod h^{K+1}.
CheckResult check_self_equivalence(const MultiDiffOp& p, const StarTruncation& m, unsigned maxdeg, const Roster& roster);

/// A' with V[P] = P A' - A P, i.e. A' = P^-1 (V[P] + A P).
ConnectionOneForm gauge_transform(const ConnectionOneForm& a, const MultiDiffOp& p, const FamilyContext& fam);

struct GaugeResult {
    FormalSeriesOp p;
    std::vector<CheckResult> checks;
};

/// Self-equivalence P = id + O(h) with V[P] = P A'(V) - A(V) P, P = id at
/// t = 0, built order by order. Throws MathError if a connection fails
/// compatibility or flatness, or a defect is not closed on parameter space.
GaugeResult gauge_equivalence(const ConnectionOneForm& a, const ConnectionOneForm& a2, const FamilyContext& fam);

/// sum_k D^k / k! truncated at the operator order; D must be O(h).
MultiDiffOp exponential(const MultiDiffOp& d);

}  // namespace starconn
