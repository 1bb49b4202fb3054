#include "starconn/sampler.hpp"

namespace starconn {

Scalar Sampler::scalar(bool complex) {
    auto rational = [this]() {
        long p = integer(1, 3) * (integer(0, 1) ? 1 : -1);
        long q = integer(1, 3);
        return mpq_class(p, q);
    };
    if (!complex) return Scalar(rational());
    if (integer(0, 2) == 0) return Scalar(mpq_class(0), rational());
    return Scalar(rational(), rational());
}

Monomial Sampler::monomial(int first, int count, unsigned maxdeg) {
    Monomial m;
    auto deg = static_cast<unsigned>(integer(0, static_cast<long>(maxdeg)));
    for (unsigned k = 0; k < deg && count > 0; ++k) {
        int v = first + static_cast<int>(integer(0, count - 1));
        m.set(v, m[v] + 1);
    }
    return m;
}

SPoly Sampler::poly(int first, int count, unsigned maxdeg, int nterms, bool complex) {
    SPoly p;
    for (int k = 0; k < nterms; ++k) p.add_term(monomial(first, count, maxdeg), scalar(complex));
    return p;
}

WeylForm Sampler::weyl(int dim, unsigned xdeg, unsigned ydeg, unsigned hmax, int form_degree, int nterms) {
    WeylForm w(dim, kExact);
    for (int k = 0; k < nterms; ++k) {
        WeylKey key;
        key.h = static_cast<unsigned>(integer(0, static_cast<long>(hmax)));
        key.y = monomial(0, dim, ydeg);
        int q = form_degree >= 0 ? form_degree : static_cast<int>(integer(0, 2));
        std::uint16_t mask = 0;
        for (int tries = 0; __builtin_popcount(mask) < q && tries < 64; ++tries)
            mask = static_cast<std::uint16_t>(mask | (1U << static_cast<unsigned>(integer(0, dim - 1))));
        key.forms = mask;
        w.add_term(key, poly(0, dim, xdeg, 2, true));
    }
    return w;
}

}  // namespace starconn
