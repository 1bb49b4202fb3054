#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "starconn/hseries.hpp"
#include "starconn/report.hpp"
#include "starconn/symplectic.hpp"

namespace starconn {

/// h-truncation marker for operators known exactly.
inline constexpr int kExactOrder = 1 << 20;

/// Address of a term h^k a(x) d^{g_1}(f_1) ... d^{g_m}(f_m).
struct OpKey {
    unsigned h = 0;
    std::vector<Monomial> d;

    friend bool operator<(const OpKey& a, const OpKey& b) {
        if (a.h != b.h) return a.h < b.h;
        return a.d < b.d;
    }
    friend bool operator==(const OpKey& a, const OpKey& b) { return a.h == b.h && a.d == b.d; }
};

/// Formal multidifferential operator with polynomial coefficients. The
/// derivatives act on x1..x{dim}; coefficients may also carry parameters.
/// Terms with h-power above order() are dropped.
class MultiDiffOp {
public:
    using Terms = std::map<OpKey, SPoly>;

    MultiDiffOp() = default;
    MultiDiffOp(int arity, int dim, int order = kExactOrder) : arity_(arity), dim_(dim), order_(order) {}

    /// (f, g) -> f g.
    static MultiDiffOp pointwise(int dim);
    static MultiDiffOp identity(int dim);
    /// Arity 0: the formal function f.
    static MultiDiffOp function(int dim, const HSeries& f);
    /// f -> h^k a f.
    static MultiDiffOp multiplication(int dim, const SPoly& a, unsigned hpow = 0);
    /// f -> a d^beta f.
    static MultiDiffOp derivative(int dim, const Monomial& beta, const SPoly& a = SPoly(1L));

    int arity() const { return arity_; }
    int dim() const { return dim_; }
    int order() const { return order_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(unsigned h, const std::vector<Monomial>& d, const SPoly& c);
    void add_term(const OpKey& k, const SPoly& c) { add_term(k.h, k.d, c); }
    MultiDiffOp truncated(int order) const;
    /// Component of h^k, as an h^0 operator.
    MultiDiffOp h_part(unsigned k) const;
    /// Multiply by h^k (negative k divides; throws if a term would go below h^0).
    MultiDiffOp shifted(int k) const;
    /// Largest derivative order in slot s among terms with h-power k.
    int differential_order(unsigned k, int slot) const;

    MultiDiffOp& operator+=(const MultiDiffOp& o);
    MultiDiffOp& operator-=(const MultiDiffOp& o);
    MultiDiffOp& operator*=(const Scalar& s);
    friend MultiDiffOp operator+(MultiDiffOp a, const MultiDiffOp& b) { return a += b; }
    friend MultiDiffOp operator-(MultiDiffOp a, const MultiDiffOp& b) { return a -= b; }
    friend MultiDiffOp operator*(MultiDiffOp a, const Scalar& s) { return a *= s; }
    MultiDiffOp operator-() const { return *this * Scalar(-1); }
    /// Canonical-form identity of the term tables (orders ignored).
    friend bool operator==(const MultiDiffOp& a, const MultiDiffOp& b) { return a.terms_ == b.terms_; }

    MultiDiffOp map_coeffs(const std::function<SPoly(const SPoly&)>& fn) const;

    /// Applies the operator; the result is truncated at the smaller of the
    /// operator's and the arguments' orders.
    HSeries apply(const std::vector<HSeries>& args) const;
    HSeries apply(const std::vector<SPoly>& args) const;
    /// psi(f_1, ..., phi(f_i, ...), ...) with phi inserted at `slot`.
    MultiDiffOp insert(int slot, const MultiDiffOp& phi) const;

    /// `h^k * (<poly>) * D[(a1,...),(b1,...)]`, one term per line.
    std::string str(const Roster& roster) const;

private:
    int arity_ = 0;
    int dim_ = 0;
    int order_ = kExactOrder;
    Terms terms_;
};

using FormalSeriesOp = MultiDiffOp;

/// Rebuilds an operator from its values on monomials. `evaluate` receives
/// one monomial per slot and returns the operator's value; `order_bound(k)`
/// bounds the derivative order per slot at h^k.
MultiDiffOp extract_operator(int arity, int dim, int order, const std::function<int(int)>& order_bound,
                             const std::function<HSeries(const std::vector<Monomial>&)>& evaluate);

/// Composition A o B of arity-1 operators.
MultiDiffOp compose(const MultiDiffOp& a, const MultiDiffOp& b);
/// Gerstenhaber bracket; arity k has degree k - 1.
MultiDiffOp gerstenhaber(const MultiDiffOp& psi, const MultiDiffOp& phi);
/// d_H phi = [m, phi]_G.
MultiDiffOp hochschild_d(const MultiDiffOp& phi, const MultiDiffOp& m);
/// (1/h) ad_star(b): f -> (b * f - f * b) / h.
MultiDiffOp inner_derivation(const HSeries& b, const MultiDiffOp& m);

/// Compares two operators on every tuple of monomials of degree <= maxdeg
/// in each slot, up to h^order. Returns the first difference.
std::optional<std::string> compare_on_basis(const MultiDiffOp& a, const MultiDiffOp& b, unsigned maxdeg, int order,
                                            const Roster& roster);

/// Checks B(f * g) = B(f) * g + f * B(g) mod h^{K+1} on the monomial basis.
CheckResult is_derivation(const MultiDiffOp& b, const MultiDiffOp& m, unsigned maxdeg, const Roster& roster);

/// b with (1/h) ad_star(b) = B mod h^K, normalized by b_k(0) = 0. B may
/// carry an h^0 term. Throws MathError naming the order at which the
/// residual is not a symplectic vector field.
HSeries inner_potential(const MultiDiffOp& b, const MultiDiffOp& m, const SymplecticData& sd);

/// Coefficientwise d/dv.
MultiDiffOp op_derivative(const MultiDiffOp& a, int v);
/// Substitutes a value for variable v in every coefficient.
MultiDiffOp op_substitute(const MultiDiffOp& a, int v, const Scalar& value);

/// Inverse of an operator of the form id + O(h).
MultiDiffOp invert(const MultiDiffOp& p);
/// e-fold composition of an arity-1 operator.
MultiDiffOp power(const MultiDiffOp& a, unsigned e);

}  // namespace starconn
