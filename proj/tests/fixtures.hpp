#pragma once

// Shared random setups for unit and acceptance tests.

#include "starconn/fedosov.hpp"
#include "starconn/sampler.hpp"

namespace fixtures {

using namespace starconn;

inline std::uint16_t pair_mask(int i, int j) {
    return static_cast<std::uint16_t>((1U << static_cast<unsigned>(i)) | (1U << static_cast<unsigned>(j)));
}

/// Exact 2-form d(theta) for a random polynomial 1-form theta in x (and t).
inline DiffForm random_closed_2form(Sampler& s, int dim, int nparams, unsigned deg) {
    DiffForm theta;
    for (int i = 0; i < dim; ++i) {
        SPoly c = s.poly(0, dim, deg, 2);
        if (nparams > 0) c += s.poly(0, dim, deg, 1) * SPoly::var(dim + static_cast<int>(s.integer(0, nparams - 1)));
        add_to_form(theta, static_cast<std::uint16_t>(1U << static_cast<unsigned>(i)), c);
    }
    DiffForm a = d_form(theta, dim);
    if (a.empty()) add_to_form(a, pair_mask(0, 1), SPoly(s.scalar()));
    return a;
}

/// Symplectic connection with Christoffel symbols of degree <= 1 in x.
inline ConnectionFamily random_connection(Sampler& s, int n, int nparams, bool t_dependent) {
    SymplecticData sd = SymplecticData::standard(n);
    SPoly phi = s.poly(0, 2 * n, 3, 2) + s.poly(0, 2 * n, 4, 2);
    if (t_dependent && nparams > 0)
        for (int j = 0; j < nparams; ++j) phi += s.poly(0, 2 * n, 3, 2) * SPoly::var(2 * n + j);
    return ConnectionFamily::from_potential(sd, nparams, phi);
}

/// Curved setup with one h^1 and one h^2 term in alpha.
inline FedosovSetup random_setup(Sampler& s, int n, int nparams = 0, bool t_dependent = false) {
    int dim = 2 * n;
    std::vector<DiffForm> alpha(3);
    alpha[1] = random_closed_2form(s, dim, t_dependent ? nparams : 0, 2);
    alpha[2] = random_closed_2form(s, dim, t_dependent ? nparams : 0, 1);
    return FedosovSetup(random_connection(s, n, nparams, t_dependent), alpha);
}

// flat connection on R^2, alpha_t = omega + h t c dx1 ^ dx2
inline FedosovSetup running_setup(const Scalar& c) {
    std::vector<DiffForm> alpha(2);
    add_to_form(alpha[1], pair_mask(0, 1), SPoly::var(2) * c);
    return FedosovSetup(ConnectionFamily(SymplecticData::standard(1), 1), alpha);
}

/// Setup with the parameters substituted; nparams is kept.
inline FedosovSetup at_parameters(const FedosovSetup& st, const std::vector<Scalar>& t) {
    int dim = st.dim();
    auto fix = [&](const SPoly& p) {
        SPoly r = p;
        for (std::size_t j = 0; j < t.size(); ++j) r = r.substitute(dim + static_cast<int>(j), t[j]);
        return r;
    };
    std::vector<DiffForm> alpha;
    for (const auto& a : st.alpha()) alpha.push_back(map_form(a, fix));
    return FedosovSetup(st.connection().map(fix), alpha);
}

inline FedosovSetup flat_setup(int n) {
    return FedosovSetup(ConnectionFamily(SymplecticData::standard(n), 0), {});
}

}  // namespace fixtures

namespace fixtures {

/// Random operator with derivative order <= maxd per slot and h-powers <= hmax.
inline MultiDiffOp random_op(Sampler& s, int arity, int dim, unsigned hmax, unsigned maxd, int nterms, int order = kExactOrder) {
    MultiDiffOp op(arity, dim, order);
    for (int k = 0; k < nterms; ++k) {
        std::vector<Monomial> d;
        for (int a = 0; a < arity; ++a) d.push_back(s.monomial(0, dim, maxd));
        op.add_term(static_cast<unsigned>(s.integer(0, static_cast<long>(hmax))), d, s.poly(0, dim, 2, 2, true));
    }
    return op;
}

}  // namespace fixtures
