#include <doctest.h>

#include "starconn/weyl.hpp"

using namespace starconn;

namespace {

WeylAlgebra standard_algebra() {
    return WeylAlgebra({{Scalar(0), Scalar(1)}, {Scalar(-1), Scalar(0)}});
}

WeylForm ymono(unsigned a, unsigned b, std::uint16_t forms = 0, unsigned h = 0, Scalar c = Scalar(1)) {
    Monomial m;
    m.set(0, a);
    m.set(1, b);
    return WeylForm::term(2, WeylKey{h, m, forms}, SPoly(c));
}

}  // namespace

TEST_CASE("moyal product of the generators") {
    WeylAlgebra w = standard_algebra();
    WeylForm p = w.mul(WeylForm::y(2, 0), WeylForm::y(2, 1));
    WeylForm expect = ymono(1, 1) + ymono(0, 0, 0, 1, Scalar(mpq_class(0), mpq_class(1, 2)));
    CHECK(p == expect);
    CHECK(w.ad_over_h(WeylForm::y(2, 0), WeylForm::y(2, 1)) == ymono(0, 0, 0, 0, Scalar(-1)));
}

TEST_CASE("moyal product is associative on monomials") {
    WeylAlgebra w = standard_algebra();
    WeylForm a = ymono(2, 1), b = ymono(1, 2), c = ymono(3, 0) + ymono(0, 1, 0, 1);
    CHECK(w.mul(w.mul(a, b), c) == w.mul(a, w.mul(b, c)));
}

TEST_CASE("graded commutator on forms") {
    WeylAlgebra w = standard_algebra();
    WeylForm a = ymono(1, 0, 0b01), b = ymono(0, 1, 0b10);
    // both odd: a o b + b o a, the classical parts cancel through dx2 ^ dx1 = -dx1 ^ dx2
    CHECK(w.commutator(a, b) == ymono(0, 0, 0b11, 1, Scalar::imag_unit()));
    CHECK(w.commutator(a, a) == w.mul(a, a) * Scalar(2));
}

TEST_CASE("delta of a quadratic") {
    WeylForm d = delta(ymono(1, 1));
    CHECK(d == ymono(0, 1, 0b01) + ymono(1, 0, 0b10));
    CHECK(delta(delta(ymono(2, 3))).is_zero());
}

TEST_CASE("delta inverse normalization and homotopy identity") {
    WeylForm a = ymono(0, 1, 0b01);
    CHECK(delta_inv(a) == ymono(1, 1) * Scalar::rational(1, 2));
    WeylForm samples[] = {a, ymono(2, 1, 0b10), ymono(1, 1, 0b11), ymono(3, 0), ymono(0, 0, 0, 1)};
    for (const auto& s : samples) {
        WeylForm lhs = delta(delta_inv(s)) + delta_inv(delta(s)) + center_part(s);
        CHECK(lhs == s);
    }
}
