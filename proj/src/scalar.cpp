#include "starconn/scalar.hpp"

#include <ostream>

namespace starconn {

Scalar Scalar::rational(long p, long q) {
    if (q == 0) throw MathError("rational with zero denominator");
    return Scalar(mpq_class(p, q));
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (is_real() && o.is_real()) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw MathError("division by zero scalar");
    if (is_real()) return Scalar(mpq_class(1) / re_);
    mpq_class n = re_ * re_ + im_ * im_;
    return {re_ / n, -im_ / n};
}

std::string Scalar::str() const {
    if (is_real()) return re_.get_str();
    std::string ims;
    if (im_ == 1)
        ims = "i";
    else if (im_ == -1)
        ims = "-i";
    else
        ims = im_.get_str() + "*i";
    if (sgn(re_) == 0) return ims;
    std::string out = "(" + re_.get_str();
    if (sgn(im_) > 0) out += "+";
    out += ims + ")";
    return out;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

Scalar factorial(unsigned n) {
    mpz_class f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return Scalar(mpq_class(f));
}

Scalar binomial(unsigned n, unsigned k) {
    if (k > n) return Scalar(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Scalar(mpq_class(b));
}

Scalar i_pow(unsigned k) {
    switch (k % 4) {
        case 0: return Scalar(1);
        case 1: return Scalar::imag_unit();
        case 2: return Scalar(-1);
        default: return -Scalar::imag_unit();
    }
}

}  // namespace starconn
