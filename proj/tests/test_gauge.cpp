#include <doctest.h>

#include "fixtures.hpp"
#include "starconn/gauge.hpp"

using namespace starconn;
using namespace fixtures;

namespace {

ConnectionOneForm from_s(const FamilyContext& fam) {
    std::vector<Scalar> base(static_cast<std::size_t>(fam.nparams()), Scalar(0));
    return connection_form(fam, trivialize_alpha(fam, base));
}

// D = ad_*(q) = (1/h) ad_*(h q), an O(h) derivation of every *_t
MultiDiffOp inner(const FamilyContext& fam, const SPoly& q) {
    return hochschild_d(MultiDiffOp::function(fam.dim(), HSeries(q, fam.order())), fam.star().op).truncated(fam.order());
}

ConnectionOneForm zero_connection(const FamilyContext& fam) {
    ConnectionOneForm a;
    for (int j = 0; j < fam.nparams(); ++j) a.a.emplace_back(1, fam.dim(), fam.order());
    return a;
}

}  // namespace

TEST_CASE("transport of the zero connection is the identity") {
    Sampler s(3);
    FamilyContext fam(random_setup(s, 1, 1, false), 3);
    MultiDiffOp phi = parallel_transport(MultiDiffOp(1, 2, 3), fam, 0, 3);
    CHECK(phi == MultiDiffOp::identity(2));
    CHECK(check_conjugation(fam, phi, 0).passed());
}

TEST_CASE("transport of a constant connection is the exponential series") {
    Sampler s(4);
    FamilyContext fam(random_setup(s, 1, 1, false), 3);
    MultiDiffOp l = random_op(s, 1, 2, 0, 2, 3);
    MultiDiffOp phi = parallel_transport(l.shifted(1).truncated(3), fam, 0, 3);
    SPoly t = SPoly::var(2);
    auto times = [](const MultiDiffOp& a, const SPoly& p) { return a.map_coeffs([&p](const SPoly& c) { return c * p; }); };
    CHECK(phi.h_part(0) == MultiDiffOp::identity(2));
    CHECK(phi.h_part(1) == times(l, -t));
    CHECK(phi.h_part(2) == times(compose(l, l), t * t * Scalar::rational(1, 2)));
    CHECK(phi.h_part(3) == times(power(l, 3), t.pow(3) * Scalar::rational(-1, 6)));
    CHECK_THROWS_AS(parallel_transport(l, fam, 0, 3), MathError);
}

TEST_CASE("transport conjugates the running family") {
    FamilyContext fam(running_setup(Scalar::rational(2, 3)), 3);
    ConnectionOneForm a = from_s(fam);
    MultiDiffOp phi = parallel_transport(a.a[0], fam, 0, 3);
    CHECK(op_substitute(phi, 2, Scalar(0)) == MultiDiffOp::identity(2));
    CheckResult r = check_conjugation(fam, phi, 0);
    CHECK_MESSAGE(r.passed(), r.witness);

    // stars recomputed from scratch at t = 0 and t = 1
    StarTruncation s0 = extract_bidiff(FedosovSolution(at_parameters(fam.setup(), {Scalar(0)}), 6), 3);
    StarTruncation s1 = extract_bidiff(FedosovSolution(at_parameters(fam.setup(), {Scalar(1)}), 6), 3);
    MultiDiffOp p1 = op_substitute(phi, 2, Scalar(1));
    MultiDiffOp inv = invert(p1);
    MultiDiffOp conj = p1.insert(0, s0.op.insert(0, inv).insert(1, inv)).truncated(3);
    auto diff = compare_on_basis(conj, s1.op, 4, 3, fam.roster());
    CHECK_MESSAGE(!diff, *diff);
}

TEST_CASE("transport composes over adjacent intervals") {
    Sampler s(5);
    FamilyContext fam(random_setup(s, 1, 1, true), 2);
    ConnectionOneForm a = from_s(fam);
    Scalar x = Scalar::rational(1, 2), y = Scalar::rational(-1, 3);
    MultiDiffOp phi = parallel_transport(a.a[0], fam, 0, 2);
    MultiDiffOp psi = parallel_transport(a.a[0], fam, 0, 2, x);
    MultiDiffOp lhs = compose(op_substitute(psi, 2, x + y), op_substitute(phi, 2, x)).truncated(2);
    CHECK(lhs == op_substitute(phi, 2, x + y));
    CHECK(check_conjugation(fam, phi, 0).passed());
}

TEST_CASE("invert round trip") {
    Sampler s(6);
    for (int k = 0; k < 5; ++k) {
        MultiDiffOp p = MultiDiffOp::identity(2).truncated(3) + random_op(s, 1, 2, 3, 2, 4, 3).shifted(1).truncated(3);
        MultiDiffOp q = invert(p);
        CHECK(compose(p, q).truncated(3) == MultiDiffOp::identity(2));
        CHECK(compose(q, p).truncated(3) == MultiDiffOp::identity(2));
    }
}

TEST_CASE("gauge equivalence of a connection with itself") {
    FamilyContext fam(running_setup(Scalar::rational(2, 3)), 3);
    ConnectionOneForm a = from_s(fam);
    GaugeResult g = gauge_equivalence(a, a, fam);
    CHECK(g.p == MultiDiffOp::identity(2));
    for (const auto& r : g.checks) CHECK_MESSAGE(r.passed(), r.name << ": " << r.witness);
}

TEST_CASE("gauge equivalence to a constant inner connection") {
    Sampler s(7);
    FamilyContext fam(random_setup(s, 1, 1, false), 3);
    MultiDiffOp d = inner(fam, s.poly(0, 2, 3, 3));
    ConnectionOneForm a2;
    a2.a = {d};
    GaugeResult g = gauge_equivalence(zero_connection(fam), a2, fam);
    for (const auto& r : g.checks) CHECK_MESSAGE(r.passed(), r.name << ": " << r.witness);
    // P = sum t^k D^k / k!
    MultiDiffOp expect = MultiDiffOp::identity(2);
    SPoly tk(1L);
    Scalar fact(1);
    for (unsigned k = 1; k <= 3; ++k) {
        tk *= SPoly::var(2);
        fact *= Scalar(static_cast<long>(k));
        expect += power(d, k).map_coeffs([&](const SPoly& c) { return c * tk * fact.inverse(); });
    }
    CHECK(g.p == expect.truncated(3));
}

TEST_CASE("gauge transform by a self-equivalence keeps compatibility and is recovered") {
    Sampler s(8);
    FamilyContext fam(random_setup(s, 1, 1, true), 2);
    ConnectionOneForm a = from_s(fam);
    MultiDiffOp p = exponential(inner(fam, s.poly(0, 2, 3, 2) * SPoly::var(2)));
    CHECK(check_self_equivalence(p, fam.star(), 3, fam.roster()).passed());
    ConnectionOneForm a2 = gauge_transform(a, p, fam);
    for (const auto& r : verify_compatibility(fam, a2)) CHECK_MESSAGE(r.passed(), r.name << ": " << r.witness);
    GaugeResult g = gauge_equivalence(a, a2, fam);
    for (const auto& r : g.checks) CHECK_MESSAGE(r.passed(), r.name << ": " << r.witness);
    CHECK(g.p == p);
}

TEST_CASE("two-parameter gauge equivalence") {
    Sampler s(9);
    FamilyContext fam(random_setup(s, 1, 2, false), 2);
    ConnectionOneForm a = zero_connection(fam);
    SPoly q = s.poly(0, 2, 2, 2) * SPoly::var(2) + s.poly(0, 2, 2, 2) * SPoly::var(3) * SPoly::var(2);
    MultiDiffOp p = exponential(inner(fam, q));
    ConnectionOneForm a2 = gauge_transform(a, p, fam);
    CHECK(connection_curvature(a2, fam, 0, 1).is_zero());
    GaugeResult g = gauge_equivalence(a, a2, fam);
    for (const auto& r : g.checks) CHECK_MESSAGE(r.passed(), r.name << ": " << r.witness);
    CHECK(g.p == p);

    // a curved connection is rejected
    ConnectionOneForm bad = a;
    bad.a[0] = inner(fam, SPoly::var(3) * SPoly::var(0));
    CHECK_THROWS_AS(gauge_equivalence(a, bad, fam), MathError);
    // h^0 terms and incompatible operators are rejected
    ConnectionOneForm h0 = a;
    h0.a[1] = MultiDiffOp::identity(2).truncated(2);
    CHECK_THROWS_AS(gauge_equivalence(a, h0, fam), MathError);
    ConnectionOneForm junk = a;
    junk.a[1] = MultiDiffOp::multiplication(2, SPoly::var(0), 1).truncated(2);
    CHECK_THROWS_AS(gauge_equivalence(a, junk, fam), MathError);
}
