#include "starconn/symplectic.hpp"

#include <sstream>

namespace starconn {

namespace {

unsigned x_degree(const Monomial& m, int dim) {
    unsigned d = 0;
    for (int v = 0; v < dim; ++v) d += m[v];
    return d;
}

std::uint16_t bit(int i) { return static_cast<std::uint16_t>(1U << static_cast<unsigned>(i)); }

}  // namespace

// ---------------------------------------------------------- SymplecticData

SymplecticData::SymplecticData(Matrix<Scalar> w) : omega_(std::move(w)) {
    int n = static_cast<int>(omega_.size());
    if (n == 0 || n % 2 != 0 || n > kMaxVars) throw MathError("symplectic form must be a nonempty even-dimensional matrix");
    for (const auto& row : omega_)
        if (static_cast<int>(row.size()) != n) throw MathError("symplectic form must be square");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (this->omega(i, j) != -this->omega(j, i)) throw MathError("symplectic form must be antisymmetric");
    pi_ = transpose(invert(omega_));
    algebra_ = std::make_shared<WeylAlgebra>(pi_);
}

SymplecticData SymplecticData::standard(int n) {
    Matrix<Scalar> w = zero_matrix<Scalar>(2 * n);
    for (int k = 0; k < n; ++k) {
        w[static_cast<std::size_t>(2 * k)][static_cast<std::size_t>(2 * k + 1)] = Scalar(1);
        w[static_cast<std::size_t>(2 * k + 1)][static_cast<std::size_t>(2 * k)] = Scalar(-1);
    }
    return SymplecticData(w);
}

// ------------------------------------------------------------------- forms

void add_to_form(DiffForm& f, std::uint16_t mask, const SPoly& c) {
    if (c.is_zero()) return;
    auto [it, ins] = f.emplace(mask, c);
    if (!ins) {
        it->second += c;
        if (it->second.is_zero()) f.erase(it);
    }
}

DiffForm form_add(DiffForm a, const DiffForm& b, const Scalar& scale) {
    for (const auto& [m, c] : b) add_to_form(a, m, c * scale);
    return a;
}

DiffForm d_form(const DiffForm& f, int dim) {
    DiffForm r;
    for (const auto& [mask, c] : f)
        for (int i = 0; i < dim; ++i) {
            if (mask & bit(i)) continue;
            SPoly dc = c.derivative(i);
            if (dc.is_zero()) continue;
            int s = wedge_sign(bit(i), mask);
            add_to_form(r, static_cast<std::uint16_t>(mask | bit(i)), s < 0 ? -dc : dc);
        }
    return r;
}

DiffForm poincare(const DiffForm& f, int dim) {
    DiffForm r;
    for (const auto& [mask, c] : f) {
        int q = __builtin_popcount(mask);
        if (q == 0) continue;
        for (const auto& [m, a] : c.terms()) {
            Scalar w = a / Scalar(static_cast<long>(x_degree(m, dim)) + q);
            int pos = 0;
            for (int j = 0; j < dim; ++j) {
                if (!(mask & bit(j))) continue;
                Monomial mm = m * Monomial::var(j);
                SPoly t = SPoly::term(pos % 2 ? -w : w, mm);
                add_to_form(r, static_cast<std::uint16_t>(mask & ~bit(j)), t);
                ++pos;
            }
        }
    }
    return r;
}

DiffForm map_form(const DiffForm& f, const std::function<SPoly(const SPoly&)>& fn) {
    DiffForm r;
    for (const auto& [m, c] : f) add_to_form(r, m, fn(c));
    return r;
}

std::string form_string(const DiffForm& f, const Roster& roster) {
    std::string out;
    for (const auto& [mask, c] : f) {
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + to_string(c, roster) + ")*";
        bool first = true;
        for (unsigned b = 0; b < 16; ++b)
            if (mask & (1U << b)) {
                out += (first ? "dx" : "^dx") + std::to_string(b + 1);
                first = false;
            }
    }
    return out.empty() ? "0" : out;
}

bool form_is_zero(const DiffForm& f) {
    for (const auto& [m, c] : f)
        if (!c.is_zero()) return false;
    return true;
}

WeylForm form_to_weyl(const DiffForm& f, int dim, unsigned hpow) {
    WeylForm w(dim, kExact);
    for (const auto& [m, c] : f) w.add_term(WeylKey{hpow, Monomial{}, m}, c);
    return w;
}

// -------------------------------------------------------- ConnectionFamily

ConnectionFamily::ConnectionFamily(SymplecticData sd, int nparams)
    : sd_(std::move(sd)), nparams_(nparams), g_(static_cast<std::size_t>(sd_.dim() * sd_.dim() * sd_.dim())) {
    if (nparams < 0 || sd_.dim() + nparams > kMaxVars) throw MathError("too many variables for the polynomial engine");
}

ConnectionFamily ConnectionFamily::from_potential(SymplecticData sd, int nparams, const SPoly& phi) {
    ConnectionFamily c(std::move(sd), nparams);
    int n = c.dim();
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                SPoly v;
                for (int l = 0; l < n; ++l) {
                    const Scalar& p = c.sd_.pi(k, l);
                    if (p.is_zero()) continue;
                    v += phi.derivative(l).derivative(i).derivative(j) * p;
                }
                c.set(k, i, j, v);
            }
    return c;
}

void ConnectionFamily::set(int k, int i, int j, const SPoly& v) {
    int n = dim();
    if (k < 0 || i < 0 || j < 0 || k >= n || i >= n || j >= n) throw MathError("Christoffel index out of range");
    g_[static_cast<std::size_t>((k * n + i) * n + j)] = v;
    g_[static_cast<std::size_t>((k * n + j) * n + i)] = v;
}

Matrix<SPoly> ConnectionFamily::gamma_matrix(int i) const {
    Matrix<SPoly> m = zero_matrix<SPoly>(dim());
    for (int j = 0; j < dim(); ++j)
        for (int k = 0; k < dim(); ++k) m[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = gamma(j, i, k);
    return m;
}

bool ConnectionFamily::is_flat() const {
    for (const auto& g : g_)
        if (!g.is_zero()) return false;
    return true;
}

ConnectionFamily ConnectionFamily::map(const std::function<SPoly(const SPoly&)>& fn) const {
    ConnectionFamily c = *this;
    for (auto& g : c.g_) g = fn(g);
    return c;
}

CheckResult validate_connection(const ConnectionFamily& c) {
    int n = c.dim();
    const auto& sd = c.symplectic();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                // (nabla_i omega)_{jk} = -Gamma^m_{ij} omega_{mk} - Gamma^m_{ik} omega_{jm}
                SPoly v;
                for (int m = 0; m < n; ++m) {
                    v -= c.gamma(m, i, j) * sd.omega(m, k);
                    v -= c.gamma(m, i, k) * sd.omega(j, m);
                }
                if (!v.is_zero()) {
                    std::ostringstream os;
                    os << "(nabla_" << i + 1 << " omega)_" << j + 1 << k + 1 << " = " << to_string(v, c.roster());
                    return make_check("connection preserves omega", "nabla omega = 0", false, os.str());
                }
            }
    return make_check("connection preserves omega", "nabla omega = 0", true);
}

// ------------------------------------------------------- Weyl-level calculus

namespace {

// Adds -dx^i ^ L_M(a) for the fiber action of M to `out`.
void add_fiber_action(WeylForm& out, const WeylForm& a, int i, const Matrix<SPoly>& m, bool wedge_dx) {
    int n = a.dim();
    for (const auto& [k, c] : a.terms()) {
        std::uint16_t forms = k.forms;
        int s = 1;
        if (wedge_dx) {
            s = wedge_sign(bit(i), k.forms);
            if (s == 0) continue;
            forms = static_cast<std::uint16_t>(k.forms | bit(i));
        }
        for (int j = 0; j < n; ++j) {
            unsigned e = k.y[j];
            if (e == 0) continue;
            for (int l = 0; l < n; ++l) {
                const SPoly& mjl = m[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)];
                if (mjl.is_zero()) continue;
                Monomial y = k.y;
                y.set(j, e - 1);
                y.set(l, y[l] + 1);
                SPoly v = c * mjl * Scalar(static_cast<long>(e) * -s);
                out.add_term(WeylKey{k.h, y, forms}, v);
            }
        }
    }
}

}  // namespace

WeylForm cov_deriv(const ConnectionFamily& c, const WeylForm& a) {
    WeylForm r(a.dim(), a.truncation());
    for (int i = 0; i < a.dim(); ++i) {
        for (const auto& [k, coef] : a.terms()) {
            int s = wedge_sign(bit(i), k.forms);
            if (s == 0) continue;
            SPoly d = coef.derivative(i);
            if (d.is_zero()) continue;
            r.add_term(WeylKey{k.h, k.y, static_cast<std::uint16_t>(k.forms | bit(i))}, s < 0 ? -d : d);
        }
        add_fiber_action(r, a, i, c.gamma_matrix(i), true);
    }
    return r;
}

WeylForm quadratic_generator(const SymplecticData& sd, const Matrix<SPoly>& m) {
    int n = sd.dim();
    WeylForm q(n, kExact);
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a) {
            // Q_{ka} = -omega_{kj} M^j_a, q = (1/2) Q_{ka} y^k y^a
            SPoly qka;
            for (int j = 0; j < n; ++j) {
                const Scalar& w = sd.omega(k, j);
                if (!w.is_zero()) qka -= m[static_cast<std::size_t>(j)][static_cast<std::size_t>(a)] * w;
            }
            if (qka.is_zero()) continue;
            q.add_term(WeylKey{0, Monomial::var(k) * Monomial::var(a), 0}, qka * Scalar::rational(1, 2));
        }
    return q;
}

WeylForm curvature_weyl(const ConnectionFamily& c) {
    int n = c.dim();
    const SymplecticData& sd = c.symplectic();
    std::vector<Matrix<SPoly>> g;
    for (int i = 0; i < n; ++i) g.push_back(c.gamma_matrix(i));
    WeylForm r(n, kExact);
    for (int l = 0; l < n; ++l)
        for (int i = l + 1; i < n; ++i) {
            // F_{li} = -d_l Gamma_i + d_i Gamma_l + Gamma_i Gamma_l - Gamma_l Gamma_i
            Matrix<SPoly> f = matadd(matmul(g[static_cast<std::size_t>(i)], g[static_cast<std::size_t>(l)]),
                                     matmul(g[static_cast<std::size_t>(l)], g[static_cast<std::size_t>(i)]), SPoly(-1L));
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    auto& e = f[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
                    e -= g[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)][static_cast<std::size_t>(b)].derivative(l);
                    e += g[static_cast<std::size_t>(l)][static_cast<std::size_t>(a)][static_cast<std::size_t>(b)].derivative(i);
                    e = -e;
                }
            WeylForm q = quadratic_generator(sd, f);
            for (const auto& [k, v] : q.terms())
                r.add_term(WeylKey{k.h, k.y, static_cast<std::uint16_t>(bit(l) | bit(i))}, v);
        }
    return r;
}

WeylForm variation_S(const ConnectionFamily& c, const std::vector<Scalar>& v) {
    int n = c.dim();
    WeylForm s(n, kExact);
    for (int i = 0; i < n; ++i) {
        Matrix<SPoly> m = c.gamma_matrix(i);
        for (auto& row : m)
            for (auto& e : row) {
                SPoly d;
                for (std::size_t j = 0; j < v.size(); ++j)
                    if (!v[j].is_zero()) d += e.derivative(c.tvar(static_cast<int>(j))) * v[j];
                e = d * Scalar(-2);
            }
        WeylForm q = quadratic_generator(c.symplectic(), m);
        for (const auto& [k, val] : q.terms()) s.add_term(WeylKey{k.h, k.y, bit(i)}, val);
    }
    return s;
}

WeylForm omega_tilde(const SymplecticData& sd) {
    WeylForm w(sd.dim(), kExact);
    for (int i = 0; i < sd.dim(); ++i)
        for (int j = 0; j < sd.dim(); ++j)
            if (!sd.omega(i, j).is_zero()) w.add_term(WeylKey{0, Monomial::var(i), bit(j)}, SPoly(sd.omega(i, j)));
    return w;
}

WeylForm vary(const WeylForm& a, int tvar0, const std::vector<Scalar>& v) {
    return a.map_coeffs([&](const SPoly& c) {
        SPoly d;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!v[j].is_zero()) d += c.derivative(tvar0 + static_cast<int>(j)) * v[j];
        return d;
    });
}

SPoly poisson_bracket(const SymplecticData& sd, const SPoly& f, const SPoly& g) {
    SPoly r;
    for (int i = 0; i < sd.dim(); ++i) {
        SPoly fi = f.derivative(i);
        if (fi.is_zero()) continue;
        for (int j = 0; j < sd.dim(); ++j)
            if (!sd.pi(i, j).is_zero()) r += fi * g.derivative(j) * sd.pi(i, j);
    }
    return r;
}

std::vector<SPoly> hamiltonian_vf(const SymplecticData& sd, const SPoly& f) {
    std::vector<SPoly> x(static_cast<std::size_t>(sd.dim()));
    for (int k = 0; k < sd.dim(); ++k)
        for (int j = 0; j < sd.dim(); ++j)
            if (!sd.pi(j, k).is_zero()) x[static_cast<std::size_t>(k)] += f.derivative(j) * sd.pi(j, k);
    return x;
}

SPoly apply_vf(const std::vector<SPoly>& x, const SPoly& g) {
    SPoly r;
    for (std::size_t k = 0; k < x.size(); ++k)
        if (!x[k].is_zero()) r += x[k] * g.derivative(static_cast<int>(k));
    return r;
}

}  // namespace starconn
