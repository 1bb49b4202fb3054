#include "starconn/param_rational.hpp"

#include "starconn/expr_parser.hpp"

namespace starconn {

ParamRational::ParamRational(SPoly num, SPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw MathError("parameter rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = SPoly(1L);
        return;
    }
    if (den_.is_constant()) {
        num_ *= den_.constant_term().inverse();
        den_ = SPoly(1L);
        return;
    }
    SPoly g = num_.is_constant() ? SPoly(1L) : poly_gcd(num_, den_);
    if (!g.is_constant()) {
        num_ = exact_divide(num_, g);
        den_ = exact_divide(den_, g);
    }
    Scalar lc = den_.leading().second.inverse();
    num_ *= lc;
    den_ *= lc;
}

ParamRational& ParamRational::operator+=(const ParamRational& o) {
    if (is_polynomial() && o.is_polynomial()) {
        num_ += o.num_;
        return *this;
    }
    if (den_ == o.den_) return *this = ParamRational(num_ + o.num_, den_);
    return *this = ParamRational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

ParamRational& ParamRational::operator-=(const ParamRational& o) { return *this += -o; }

ParamRational& ParamRational::operator*=(const ParamRational& o) {
    if (is_polynomial() && o.is_polynomial()) {
        num_ = num_ * o.num_;
        if (num_.is_zero()) den_ = SPoly(1L);
        return *this;
    }
    return *this = ParamRational(num_ * o.num_, den_ * o.den_);
}

ParamRational& ParamRational::operator/=(const ParamRational& o) {
    if (o.is_zero()) throw MathError("division by the zero rational function");
    return *this = ParamRational(num_ * o.den_, den_ * o.num_);
}

ParamRational ParamRational::operator-() const {
    ParamRational r = *this;
    r.num_ = -r.num_;
    return r;
}

ParamRational ParamRational::derivative(int v) const {
    if (is_polynomial()) return ParamRational(num_.derivative(v));
    return ParamRational(num_.derivative(v) * den_ - num_ * den_.derivative(v), den_ * den_);
}

namespace {
Scalar eval_poly(const SPoly& p, const std::vector<Scalar>& point) {
    Scalar acc;
    for (const auto& [m, c] : p.terms()) {
        Scalar t = c;
        for (int v = 0; v < kMaxVars; ++v)
            for (unsigned k = 0; k < m[v]; ++k) {
                if (static_cast<std::size_t>(v) >= point.size()) throw MathError("evaluation point too short");
                t *= point[static_cast<std::size_t>(v)];
            }
        acc += t;
    }
    return acc;
}
}  // namespace

Scalar ParamRational::evaluate(const std::vector<Scalar>& point) const {
    Scalar d = eval_poly(den_, point);
    if (d.is_zero()) throw MathError("rational function evaluated at a pole");
    return eval_poly(num_, point) / d;
}

std::string ParamRational::str(const Roster& params) const {
    if (is_polynomial()) return to_string(num_, params);
    return "(" + to_string(num_, params) + ")/(" + to_string(den_, params) + ")";
}

namespace {
struct RationalOps {
    const Roster& roster;
    ParamRational var(const std::string& name, std::size_t col) const {
        int v = roster.index(name);
        if (v < 0) throw ParseError("unknown parameter '" + name + "' at column " + std::to_string(col + 1));
        return ParamRational(SPoly::var(v));
    }
    static ParamRational constant(const Scalar& s) { return ParamRational(s); }
    static ParamRational divide(const ParamRational& a, const ParamRational& b, std::size_t col) {
        if (b.is_zero()) throw ParseError("division by zero at column " + std::to_string(col + 1));
        return a / b;
    }
};
}  // namespace

ParamRational parse_param_rational(const std::string& text, const Roster& params) {
    RationalOps ops{params};
    detail::ExprParser<ParamRational, RationalOps> parser(text, ops);
    return parser.parse();
}

}  // namespace starconn
