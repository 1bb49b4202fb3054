#include <doctest.h>

#include "fixtures.hpp"
#include "starconn/family.hpp"

using namespace starconn;
using namespace fixtures;

TEST_CASE("t-constant family gives the zero connection") {
    Sampler s(1);
    FamilyContext fam(random_setup(s, 1, 1, false), 2);
    TrivializationBeta beta = trivialize_alpha(fam, {Scalar(0)});
    CHECK(check_trivialization(fam, beta).passed());
    for (const auto& b : beta.beta[0]) CHECK(b.empty());
    CHECK(variation_star(fam, 0).is_zero());
    std::vector<WeylForm> sig;
    ConnectionOneForm a = connection_form(fam, beta, &sig);
    CHECK(sig[0].is_zero());
    CHECK(a.a[0].is_zero());
    for (const auto& c : verify_compatibility(fam, a)) CHECK(c.passed());
}

TEST_CASE("running family on R^2") {
    Scalar c = Scalar::rational(2, 3);
    FamilyContext fam(running_setup(c), 3);
    TrivializationBeta beta = trivialize_alpha(fam, {Scalar(0)});
    DiffForm expect{{0b10, SPoly::var(0) * (c / Scalar(2))}, {0b01, SPoly::var(1) * (-c / Scalar(2))}};
    CHECK(beta.beta[0][1] == expect);
    CHECK(variation_star(fam, 0).h_part(0).is_zero());

    std::vector<WeylForm> sig;
    ConnectionOneForm a = connection_form(fam, beta, &sig);
    for (const auto& r : check_s(fam, beta, 0, sig[0])) CHECK_MESSAGE(r.passed(), r.name << ": " << r.witness);
    for (const auto& r : verify_compatibility(fam, a)) CHECK_MESSAGE(r.passed(), r.name << ": " << r.witness);
    CHECK(check_lowest_order(fam, beta, a.a[0], 0, 3).passed());

    // user trivialization i_V beta = h c x1 dx2
    TrivializationBeta user;
    user.beta = {{DiffForm{}, DiffForm{{0b10, SPoly::var(0) * c}}}};
    CHECK(check_trivialization(fam, user).passed());
    WeylForm s = solve_s(fam, user, 0);
    WeylForm low(2, kExact);
    low.add_term(WeylKey{1, Monomial::var(1), 0}, SPoly::var(0) * -c);
    CHECK(s.degree_part(3) == low);
    MultiDiffOp au = connection_operator(fam, s);
    HSeries v = au.apply({SPoly::var(1)});
    CHECK(v[0].is_zero());
    CHECK(v[1].is_zero());
    CHECK(check_lowest_order(fam, user, au, 0, 3).passed());
    ConnectionOneForm ua{{au}, "user-supplied"};
    for (const auto& r : verify_compatibility(fam, ua)) CHECK(r.passed());
}

TEST_CASE("bad trivialization is rejected") {
    FamilyContext fam(running_setup(Scalar(1)), 2);
    TrivializationBeta bad;
    bad.beta = {{DiffForm{}, DiffForm{{0b10, SPoly::var(1)}}}};
    CHECK_FALSE(check_trivialization(fam, bad).passed());
    CHECK_THROWS_AS(solve_s(fam, bad, 0), MathError);
}

TEST_CASE("perturbed connection fails compatibility") {
    FamilyContext fam(running_setup(Scalar(1)), 2);
    ConnectionOneForm a = connection_form(fam, trivialize_alpha(fam, {Scalar(0)}));
    a.a[0] += MultiDiffOp::multiplication(2, SPoly::var(0), 1);
    auto res = verify_compatibility(fam, a);
    CHECK_FALSE(res[0].passed());
    CHECK_FALSE(res[0].witness.empty());
}

TEST_CASE("curved one-parameter family") {
    Sampler s(31);
    FamilyContext fam(random_setup(s, 1, 1, true), 2);
    TrivializationBeta beta = trivialize_alpha(fam, {Scalar(0)});
    CHECK(check_trivialization(fam, beta).passed());
    std::vector<WeylForm> sig;
    ConnectionOneForm a = connection_form(fam, beta, &sig);
    for (const auto& r : check_s(fam, beta, 0, sig[0])) CHECK_MESSAGE(r.passed(), r.name << ": " << r.witness);
    for (const auto& r : verify_compatibility(fam, a)) CHECK_MESSAGE(r.passed(), r.name << ": " << r.witness);
    CHECK(check_lowest_order(fam, beta, a.a[0], 0, 3).passed());
    // operator agrees with direct evaluation beyond the extraction basis
    SPoly f = s.poly(0, 2, 5, 3);
    const auto& sol = fam.solution();
    CHECK(a.a[0].apply({f}) == central_ad_over_h(sol.algebra(), sig[0], sol.tau(f), fam.order()));
}

TEST_CASE("two-parameter family curvature") {
    Sampler s(41);
    FamilyContext fam(random_setup(s, 1, 2, true), 2);
    TrivializationBeta beta = trivialize_alpha(fam, {Scalar(0), Scalar(0)});
    std::vector<WeylForm> sig;
    ConnectionOneForm a = connection_form(fam, beta, &sig);
    for (const auto& r : verify_compatibility(fam, a)) CHECK_MESSAGE(r.passed(), r.name << ": " << r.witness);
    CurvatureResult cr = curvature(fam, a, sig, 0, 1);
    CHECK_MESSAGE(!cr.mismatch, cr.mismatch.value_or(""));
}
