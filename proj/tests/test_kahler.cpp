#include <doctest.h>

#include "starconn/kahler.hpp"
#include "starconn/sampler.hpp"

using namespace starconn;

namespace {

RPoly rp(const SPoly& p, int dim, int m = 0) { return to_rpoly(p, dim, m); }
RPoly x(int v) { return RPoly::var(v); }

LinearKahlerFamily r4_family() { return shear_kahler_family(2, {{1, 0, 2, -1}, {0, 1, 1, 3}}); }

}  // namespace

TEST_CASE("validation of linear Kahler families") {
    auto sd = SymplecticData::standard(1);
    RMatrix std_i = {{ParamRational(0L), ParamRational(-1L)}, {ParamRational(1L), ParamRational(0L)}};
    CHECK_NOTHROW(LinearKahlerFamily(sd, 0, std_i, {{}}));
    RMatrix neg = {{ParamRational(0L), ParamRational(1L)}, {ParamRational(-1L), ParamRational(0L)}};
    CHECK_THROWS_AS(LinearKahlerFamily(sd, 0, neg, {{}}), MathError);
    RMatrix not_cx = {{ParamRational(1L), ParamRational(0L)}, {ParamRational(0L), ParamRational(1L)}};
    CHECK_THROWS_AS(LinearKahlerFamily(sd, 0, not_cx, {{}}), MathError);
    // every complex structure on R^2 is compatible up to sign
    RMatrix other = {{ParamRational(1L), ParamRational(-2L)}, {ParamRational(1L), ParamRational(-1L)}};
    CHECK_NOTHROW(LinearKahlerFamily(sd, 0, other, {{}}));
    // on R^4, I^2 = -Id but omega I is not symmetric
    auto r = [](std::vector<long> v) {
        std::vector<ParamRational> out;
        for (long x : v) out.emplace_back(x);
        return out;
    };
    RMatrix skew = {r({0, -1, 0, -1}), r({1, 0, -1, 0}), r({0, 0, 0, -1}), r({0, 0, 1, 0})};
    CHECK_THROWS_AS(LinearKahlerFamily(SymplecticData::standard(2), 0, skew, {{}}), MathError);
    // running family leaves the positive cone at t = -2
    SPoly one_t = SPoly(1L) + SPoly::var(0);
    RMatrix run = {{ParamRational(0L), ParamRational(-one_t)}, {ParamRational(SPoly(1L), one_t), ParamRational(0L)}};
    CHECK_THROWS_AS(LinearKahlerFamily(sd, 1, run, {{Scalar(-2)}}), MathError);
}

TEST_CASE("G~(V) for the running family") {
    LinearKahlerFamily fam = running_kahler_family();
    SPoly one_t = SPoly(1L) + SPoly::var(0);
    const Bivector& g = gtilde(fam, 0);
    CHECK(g.full[0][0] == ParamRational(1L));
    CHECK(g.full[0][1].is_zero());
    CHECK(g.full[1][1] == ParamRational(SPoly(-1L), one_t * one_t));
    for (const auto& r : check_gtilde(fam, 0)) CHECK_MESSAGE(r.passed(), r.name << ": " << r.witness);
    CHECK(rigidity_check(fam, 0).passed());
}

TEST_CASE("G~(V) on R^4 shear families") {
    LinearKahlerFamily fam = r4_family();
    for (int j = 0; j < 2; ++j)
        for (const auto& r : check_gtilde(fam, j)) CHECK_MESSAGE(r.passed(), r.name << ": " << r.witness);
    LinearKahlerFamily flat = shear_kahler_family(2, {{0, 0, 0, 0}});
    const Bivector& g = gtilde(flat, 0);
    CHECK(g.full == zero_matrix<ParamRational>(4));
}

TEST_CASE("Delta_Z") {
    RPoly f = x(0).pow(3) * x(1) + x(1).pow(2) * ParamRational(Scalar(5));
    RMatrix e11 = zero_matrix<ParamRational>(2);
    e11[0][0] = ParamRational(1L);
    CHECK(delta_Z(e11, f) == x(0) * x(1) * ParamRational(6L));
    CHECK(delta_Z(identity_matrix<ParamRational>(2), f) == x(0) * x(1) * ParamRational(6L) + RPoly(10L));
    CHECK(delta_Z(identity_matrix<ParamRational>(2), RPoly(7L)).is_zero());
}

TEST_CASE("Karabegov c1") {
    LinearKahlerFamily fam = running_kahler_family();
    SymplecticData sd = SymplecticData::standard(1);
    Sampler s(11);
    ParamRational half(Scalar::rational(1, 2)), ihalf(Scalar(mpq_class(0), mpq_class(1, 2)));
    RPoly t(ParamRational(SPoly::var(0)));
    for (int k = 0; k < 10; ++k) {
        SPoly fs = s.poly(0, 2, 3, 3), gs = s.poly(0, 2, 3, 3);
        RPoly f = rp(fs, 2), g = rp(gs, 2);
        // c1(f,g) - c1(g,f) = i{f,g}
        CHECK(c1_karabegov(fam, f, g) - c1_karabegov(fam, g, f) == rp(poisson_bracket(sd, fs, gs), 2) * ParamRational(Scalar::imag_unit()));
        // at t = 0: (f1 g1 + f2 g2)/2 + i (f1 g2 - f2 g1)/2
        RPoly at0 = c1_karabegov(fam, f, g).map_coeffs([](const ParamRational& c) { return ParamRational(c.evaluate({Scalar(0)})); });
        RPoly f1 = f.derivative(0), f2 = f.derivative(1), g1 = g.derivative(0), g2 = g.derivative(1);
        CHECK(at0 == (f1 * g1 + f2 * g2) * half + (f1 * g2 - f2 * g1) * ihalf);
        CHECK(v_c1(fam, 0, f, g) == v_c1(fam, 0, g, f));
        CHECK(v_c1(fam, 0, f, g) == v_c1_direct(fam, 0, f, g));
        // t-dependent arguments are held fixed
        CHECK(v_c1_direct(fam, 0, f * t, g) == v_c1(fam, 0, f, g) * ParamRational(SPoly::var(0)));
    }
    LinearKahlerFamily flat = shear_kahler_family(1, {{0, 0}});
    CHECK(v_c1(flat, 0, x(0) * x(1), x(0).pow(2)).is_zero());
}

TEST_CASE("variation of c1 as a Hochschild coboundary") {
    Sampler s(12);
    for (const auto& fam : {running_kahler_family(), r4_family()}) {
        int dim = fam.dim();
        for (int k = 0; k < 10; ++k) {
            RPoly f = rp(s.poly(0, dim, 3, 3, true), dim), g = rp(s.poly(0, dim, 3, 3, true), dim);
            for (int j = 0; j < fam.nparams(); ++j) {
                CHECK(verify_lemma_vc1(fam, j, f, g).passed());
                CHECK(v_c1(fam, j, f, g) == v_c1_direct(fam, j, f, g));
                CHECK(verify_lemma_vc1(fam, j, f, RPoly(3L)).passed());
                CHECK(v_c1(fam, j, f, RPoly(3L)).is_zero());
            }
        }
        RPoly f = x(0) * x(1), g = x(1).pow(2) + x(0);
        CheckResult bad = verify_lemma_vc1(fam, 0, f, g, Scalar::rational(1, 2));
        CHECK_FALSE(bad.passed());
        CHECK(bad.witness.find("differs") != std::string::npos);
    }
}

TEST_CASE("order-1 Hitchin identities") {
    Sampler s(13);
    for (const auto& fam : {running_kahler_family(), r4_family()}) {
        int dim = fam.dim(), m = fam.nparams();
        unsigned maxdeg = dim == 2 ? 3 : 2;
        std::vector<RPoly> fs{RPoly()};
        for (int k = 0; k < 3; ++k) fs.push_back(rp(s.poly(0, dim, 3, 3, true), dim));
        SPoly ft = s.poly(0, dim, 2, 2);
        for (int j = 0; j < m; ++j) ft += s.poly(0, dim, 2, 2) * SPoly::var(dim + j);
        fs.push_back(to_rpoly(ft, dim, m));
        for (const auto& F : fs)
            for (const auto& r : order1_hitchin_check(fam, F, maxdeg)) CHECK_MESSAGE(r.passed(), r.name << ": " << r.witness);
        auto mutated = order1_hitchin_check(fam, fs[1], maxdeg, Scalar::rational(-1, 2));
        CHECK_FALSE(mutated[0].passed());
        CHECK(mutated[0].witness.find("differs") != std::string::npos);
    }
    LinearKahlerFamily flat = shear_kahler_family(1, {{0, 0}});
    CHECK(hitchin_a1(flat, 0, RPoly(), x(0).pow(3)).is_zero());
}

TEST_CASE("operators E and H") {
    LinearKahlerFamily fam = running_kahler_family();
    RPoly f = x(0).pow(2) * x(1);
    RMatrix z = gtilde(fam, 0).full;
    CHECK(operator_E(fam, 0, RPoly(), f) == delta_Z(z, f) * ParamRational(Scalar::rational(-1, 4)));
    RPoly F = x(0).pow(2) * ParamRational(SPoly::var(0));
    // H = Delta(F)/2 + n V[F]/2 with n = 1
    CHECK(operator_H(fam, 0, F) == delta_Z(z, F) * ParamRational(Scalar::rational(1, 2)) + x(0).pow(2) * ParamRational(Scalar::rational(1, 2)));
}
