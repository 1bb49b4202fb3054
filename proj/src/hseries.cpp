#include "starconn/hseries.hpp"

#include <algorithm>

namespace starconn {

bool HSeries::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const SPoly& p) { return p.is_zero(); });
}

HSeries HSeries::truncated(int order) const {
    HSeries r(order);
    for (int k = 0; k <= std::min(order, this->order()); ++k) r[k] = (*this)[k];
    return r;
}

HSeries& HSeries::operator+=(const HSeries& o) {
    if (o.order() < order()) c_.resize(static_cast<std::size_t>(o.order() + 1));
    for (int k = 0; k <= order(); ++k) c_[static_cast<std::size_t>(k)] += o[k];
    return *this;
}

HSeries& HSeries::operator-=(const HSeries& o) {
    if (o.order() < order()) c_.resize(static_cast<std::size_t>(o.order() + 1));
    for (int k = 0; k <= order(); ++k) c_[static_cast<std::size_t>(k)] -= o[k];
    return *this;
}

HSeries& HSeries::operator*=(const Scalar& s) {
    for (auto& p : c_) p *= s;
    return *this;
}

HSeries HSeries::shifted(int k) const {
    HSeries r(order());
    for (int j = 0; j + k <= order(); ++j) r[j + k] = (*this)[j];
    return r;
}

HSeries operator*(const HSeries& a, const HSeries& b) {
    int n = std::min(a.order(), b.order());
    HSeries r(n);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j) r[i + j] += a[i] * b[j];
    return r;
}

bool operator==(const HSeries& a, const HSeries& b) {
    int n = std::max(a.order(), b.order());
    for (int k = 0; k <= n; ++k)
        if (a.at(k) != b.at(k)) return false;
    return true;
}

std::string HSeries::str(const Roster& roster) const {
    std::string out;
    for (int k = 0; k <= order(); ++k) {
        if ((*this)[k].is_zero()) continue;
        if (!out.empty()) out += " + ";
        std::string body = to_string((*this)[k], roster);
        if (k == 0)
            out += "(" + body + ")";
        else
            out += "h^" + std::to_string(k) + "*(" + body + ")";
    }
    return out.empty() ? "0" : out;
}

}  // namespace starconn
