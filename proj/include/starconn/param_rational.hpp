#pragma once

#include <string>
#include <vector>

#include "starconn/poly.hpp"

namespace starconn {

/// Ratio of polynomials in the parameters t1..tm (indices 0..m-1 of the
/// inner SPoly). Canonical: gcd(num, den) = 1 and den monic, so den == 1
/// whenever the value is polynomial.
class ParamRational {
public:
    ParamRational() : den_(1L) {}
    ParamRational(long c) : num_(c), den_(1L) {}           // NOLINT(google-explicit-constructor)
    ParamRational(const Scalar& c) : num_(c), den_(1L) {}  // NOLINT(google-explicit-constructor)
    ParamRational(SPoly num) : num_(std::move(num)), den_(1L) {}  // NOLINT(google-explicit-constructor)
    ParamRational(SPoly num, SPoly den);

    const SPoly& num() const { return num_; }
    const SPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    ParamRational& operator+=(const ParamRational& o);
    ParamRational& operator-=(const ParamRational& o);
    ParamRational& operator*=(const ParamRational& o);
    ParamRational& operator/=(const ParamRational& o);
    friend ParamRational operator+(ParamRational a, const ParamRational& b) { return a += b; }
    friend ParamRational operator-(ParamRational a, const ParamRational& b) { return a -= b; }
    friend ParamRational operator*(ParamRational a, const ParamRational& b) { return a *= b; }
    friend ParamRational operator/(ParamRational a, const ParamRational& b) { return a /= b; }
    ParamRational operator-() const;
    friend bool operator==(const ParamRational& a, const ParamRational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const ParamRational& a, const ParamRational& b) { return !(a == b); }

    /// d/dt_v.
    ParamRational derivative(int v) const;
    /// Value at t = point (all parameters); throws if the denominator vanishes.
    Scalar evaluate(const std::vector<Scalar>& point) const;

    std::string str(const Roster& params) const;

private:
    SPoly num_;
    SPoly den_;
};

/// Parses `(t1^2 - 1)/(t1 - 1)` style expressions over the parameter roster.
ParamRational parse_param_rational(const std::string& text, const Roster& params);

using RPoly = Poly<ParamRational>;

}  // namespace starconn
