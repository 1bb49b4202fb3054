#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "starconn/hseries.hpp"
#include "starconn/poly.hpp"

namespace starconn {

/// Truncation value for elements known exactly (finite sums).
inline constexpr int kExact = 1 << 20;

/// Address of a Weyl-form term h^k y^alpha dx^J.
struct WeylKey {
    unsigned h = 0;
    Monomial y;
    std::uint16_t forms = 0;  // bit j set <=> dx^{j+1} present, ascending wedge order

    unsigned total_degree() const { return y.degree() + 2 * h; }
    int form_degree() const { return __builtin_popcount(forms); }

    friend bool operator<(const WeylKey& a, const WeylKey& b) {
        if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
        if (a.h != b.h) return a.h < b.h;
        if (a.y != b.y) return a.y < b.y;
        return a.forms < b.forms;
    }
    friend bool operator==(const WeylKey& a, const WeylKey& b) {
        return a.h == b.h && a.y == b.y && a.forms == b.forms;
    }
};

/// Truncated element of Omega(R^{2n}, W): finite sum of h^k y^alpha dx^J with
/// polynomial coefficients in the base variables x (and parameters t). Every
/// stored term has total degree |alpha| + 2k <= truncation().
class WeylForm {
public:
    using Terms = std::map<WeylKey, SPoly>;

    WeylForm() = default;
    WeylForm(int dim, int truncation) : dim_(dim), trunc_(truncation) {}
    /// Fiberwise-constant element f (central), exact.
    static WeylForm scalar(int dim, const SPoly& f, int truncation = kExact);
    /// h^k f.
    static WeylForm scalar(int dim, const HSeries& f, int truncation = kExact);
    /// The fiber coordinate y^{i+1} (0-based i).
    static WeylForm y(int dim, int i);
    /// Single term c h^k y^alpha dx^J.
    static WeylForm term(int dim, const WeylKey& key, const SPoly& c, int truncation = kExact);

    int dim() const { return dim_; }
    int truncation() const { return trunc_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const WeylKey& k, const SPoly& c);
    WeylForm truncated(int n) const;
    /// Component of total degree exactly d.
    WeylForm degree_part(int d) const;
    /// Component of form degree exactly q.
    WeylForm form_part(int q) const;
    int min_degree() const;
    int max_degree() const;

    WeylForm& operator+=(const WeylForm& o);
    WeylForm& operator-=(const WeylForm& o);
    WeylForm& operator*=(const Scalar& s);
    /// Coefficientwise multiplication by a base polynomial (central).
    WeylForm times(const SPoly& f) const;
    friend WeylForm operator+(WeylForm a, const WeylForm& b) { return a += b; }
    friend WeylForm operator-(WeylForm a, const WeylForm& b) { return a -= b; }
    friend WeylForm operator*(WeylForm a, const Scalar& s) { return a *= s; }
    WeylForm operator-() const { return *this * Scalar(-1); }
    /// Equality of the terms (truncations are ignored; compare truncated
    /// copies when they differ).
    friend bool operator==(const WeylForm& a, const WeylForm& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const WeylForm& a, const WeylForm& b) { return !(a == b); }

    /// Coefficientwise map on the base polynomials.
    template <class F>
    WeylForm map_coeffs(F&& f) const {
        WeylForm r(dim_, trunc_);
        for (const auto& [k, c] : terms_) r.add_term(k, f(c));
        return r;
    }

    /// One line per term: `h^k * (<poly>) * y^(a1,...) * dx{j1,...}`.
    std::string str(const Roster& roster) const;

private:
    int dim_ = 0;
    int trunc_ = kExact;
    Terms terms_;
};

/// The fiberwise Moyal-Weyl product for a constant Poisson tensor pi.
/// Products of y-monomials are memoized; the cache is guarded so a single
/// algebra may be shared across threads.
class WeylAlgebra {
public:
    explicit WeylAlgebra(std::vector<std::vector<Scalar>> pi);

    int dim() const { return dim_; }
    const Scalar& pi(int i, int j) const { return pi_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

    /// a o b. Result truncation is min(N_a, N_b).
    WeylForm mul(const WeylForm& a, const WeylForm& b) const;
    /// Graded commutator a o b - (-1)^{|a||b|} b o a.
    WeylForm commutator(const WeylForm& a, const WeylForm& b) const;
    /// (i/h)[a, b]. Result truncation is min(N_a, N_b) - 1.
    WeylForm ad_over_h(const WeylForm& a, const WeylForm& b) const;

    /// Output components of total degree exactly `degree` only, using every
    /// stored term regardless of truncation. Used by degree recursions.
    WeylForm mul_degree(const WeylForm& a, const WeylForm& b, int degree) const;
    WeylForm ad_over_h_degree(const WeylForm& a, const WeylForm& b, int degree) const;

    struct Contraction {
        unsigned h;
        Monomial y;
        Scalar coeff;
    };
    /// y^alpha o y^beta as a list of h^k y^gamma terms.
    const std::vector<Contraction>& monomial_product(const Monomial& a, const Monomial& b) const;

private:
    enum class Mode { Product, Commutator };
    WeylForm combine(const WeylForm& a, const WeylForm& b, Mode mode, int min_out, int max_out, int trunc) const;

    int dim_;
    std::vector<std::vector<Scalar>> pi_;
    mutable std::mutex cache_mutex_;
    mutable std::map<std::pair<Monomial, Monomial>, std::vector<Contraction>> cache_;
};

/// Sign and result of dx^J ^ dx^L (0 sign when they overlap).
int wedge_sign(std::uint16_t a, std::uint16_t b);

/// delta(a) = sum_i dx^i ^ d a / d y^i.
WeylForm delta(const WeylForm& a);
/// delta*(a) = sum_i y^i i_{d/dx^i} a.
WeylForm delta_star(const WeylForm& a);
/// (1/(p+q)) delta* on the component of y-degree p and form degree q.
WeylForm delta_inv(const WeylForm& a);
/// The (p = 0, q = 0) component.
WeylForm center_part(const WeylForm& a);
/// Fiberwise-constant part of a form-degree-0 element as a formal function.
HSeries project_function(const WeylForm& a);

}  // namespace starconn
