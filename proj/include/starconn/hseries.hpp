#pragma once

#include <string>
#include <vector>

#include "starconn/poly.hpp"

namespace starconn {

/// Formal function f_0 + h f_1 + ... + h^K f_K, kept modulo h^{K+1}.
class HSeries {
public:
    HSeries() = default;
    explicit HSeries(int order) : c_(static_cast<std::size_t>(order + 1)) {}
    HSeries(const SPoly& f, int order) : c_(static_cast<std::size_t>(order + 1)) { c_[0] = f; }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const SPoly& operator[](int k) const { return c_.at(static_cast<std::size_t>(k)); }
    SPoly& operator[](int k) { return c_.at(static_cast<std::size_t>(k)); }
    /// Coefficient of h^k or zero when beyond the stored order.
    SPoly at(int k) const { return k <= order() ? c_[static_cast<std::size_t>(k)] : SPoly(); }
    bool is_zero() const;

    HSeries truncated(int order) const;
    HSeries& operator+=(const HSeries& o);
    HSeries& operator-=(const HSeries& o);
    HSeries& operator*=(const Scalar& s);
    friend HSeries operator+(HSeries a, const HSeries& b) { return a += b; }
    friend HSeries operator-(HSeries a, const HSeries& b) { return a -= b; }
    friend HSeries operator*(HSeries a, const Scalar& s) { return a *= s; }
    /// Multiply by h^k, dropping what falls beyond the order.
    HSeries shifted(int k) const;
    /// Pointwise (commutative) product, truncated to the smaller order.
    friend HSeries operator*(const HSeries& a, const HSeries& b);
    friend bool operator==(const HSeries& a, const HSeries& b);
    friend bool operator!=(const HSeries& a, const HSeries& b) { return !(a == b); }

    template <class F>
    HSeries map(F&& f) const {
        HSeries r(order());
        for (int k = 0; k <= order(); ++k) r[k] = f(c_[static_cast<std::size_t>(k)]);
        return r;
    }

    std::string str(const Roster& roster) const;

private:
    std::vector<SPoly> c_;
};

}  // namespace starconn
