#include "starconn/weyl.hpp"

#include <algorithm>
#include <sstream>

namespace starconn {

namespace {

int low_bits_below(std::uint16_t mask, int i) {
    return __builtin_popcount(static_cast<unsigned>(mask) & ((1U << static_cast<unsigned>(i)) - 1U));
}

}  // namespace

int wedge_sign(std::uint16_t a, std::uint16_t b) {
    if (a & b) return 0;
    // Count pairs (j in a, l in b) with j > l.
    int inversions = 0;
    for (int l = 0; l < 16; ++l)
        if (b & (1U << static_cast<unsigned>(l))) inversions += __builtin_popcount(static_cast<unsigned>(a) >> static_cast<unsigned>(l + 1));
    return (inversions % 2) ? -1 : 1;
}

// ---------------------------------------------------------------- WeylForm

WeylForm WeylForm::scalar(int dim, const SPoly& f, int truncation) {
    WeylForm w(dim, truncation);
    w.add_term(WeylKey{}, f);
    return w;
}

WeylForm WeylForm::scalar(int dim, const HSeries& f, int truncation) {
    WeylForm w(dim, truncation);
    for (int k = 0; k <= f.order(); ++k)
        if (2 * k <= truncation) w.add_term(WeylKey{static_cast<unsigned>(k), Monomial{}, 0}, f[k]);
    return w;
}

WeylForm WeylForm::y(int dim, int i) {
    WeylForm w(dim, kExact);
    w.add_term(WeylKey{0, Monomial::var(i), 0}, SPoly(1L));
    return w;
}

WeylForm WeylForm::term(int dim, const WeylKey& key, const SPoly& c, int truncation) {
    WeylForm w(dim, truncation);
    w.add_term(key, c);
    return w;
}

void WeylForm::add_term(const WeylKey& k, const SPoly& c) {
    if (c.is_zero() || static_cast<int>(k.total_degree()) > trunc_) return;
    auto [it, inserted] = terms_.emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

WeylForm WeylForm::truncated(int n) const {
    WeylForm r(dim_, std::min(n, trunc_));
    for (const auto& [k, c] : terms_)
        if (static_cast<int>(k.total_degree()) <= r.trunc_) r.terms_.emplace(k, c);
    return r;
}

WeylForm WeylForm::degree_part(int d) const {
    WeylForm r(dim_, trunc_);
    for (const auto& [k, c] : terms_)
        if (static_cast<int>(k.total_degree()) == d) r.terms_.emplace(k, c);
    return r;
}

WeylForm WeylForm::form_part(int q) const {
    WeylForm r(dim_, trunc_);
    for (const auto& [k, c] : terms_)
        if (k.form_degree() == q) r.terms_.emplace(k, c);
    return r;
}

int WeylForm::min_degree() const { return terms_.empty() ? 0 : static_cast<int>(terms_.begin()->first.total_degree()); }
int WeylForm::max_degree() const { return terms_.empty() ? 0 : static_cast<int>(terms_.rbegin()->first.total_degree()); }

WeylForm& WeylForm::operator+=(const WeylForm& o) {
    if (dim_ == 0) dim_ = o.dim_;
    if (o.dim_ != 0 && o.dim_ != dim_) throw MathError("Weyl form dimension mismatch");
    if (o.trunc_ < trunc_) *this = truncated(o.trunc_);
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

WeylForm& WeylForm::operator-=(const WeylForm& o) { return *this += -o; }

WeylForm& WeylForm::operator*=(const Scalar& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
}

WeylForm WeylForm::times(const SPoly& f) const {
    WeylForm r(dim_, trunc_);
    for (const auto& [k, c] : terms_) r.add_term(k, c * f);
    return r;
}

std::string WeylForm::str(const Roster& roster) const {
    std::ostringstream os;
    for (const auto& [k, c] : terms_) {
        os << "h^" << k.h << " * (" << to_string(c, roster) << ") * y^(";
        for (int i = 0; i < dim_; ++i) os << (i ? "," : "") << k.y[i];
        os << ") * dx{";
        bool first = true;
        for (int j = 0; j < dim_; ++j)
            if (k.forms & (1U << static_cast<unsigned>(j))) {
                os << (first ? "" : ",") << j + 1;
                first = false;
            }
        os << "}\n";
    }
    return os.str();
}

// ------------------------------------------------------------- WeylAlgebra

WeylAlgebra::WeylAlgebra(std::vector<std::vector<Scalar>> pi) : dim_(static_cast<int>(pi.size())), pi_(std::move(pi)) {
    for (const auto& row : pi_)
        if (static_cast<int>(row.size()) != dim_) throw MathError("Poisson tensor must be square");
    if (dim_ % 2 != 0 || dim_ > kMaxVars) throw MathError("unsupported Weyl algebra dimension");
}

const std::vector<WeylAlgebra::Contraction>& WeylAlgebra::monomial_product(const Monomial& a, const Monomial& b) const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto key = std::make_pair(a, b);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;

    // Iterate P = sum pi^{ij} d_i (x) d_j on pairs of monomials; the k-th
    // iterate carries the weight (i/2)^k / k!.
    std::map<std::pair<Monomial, Monomial>, Scalar> layer{{key, Scalar(1)}};
    std::map<std::pair<unsigned, Monomial>, Scalar> out;
    Scalar weight(1);
    Scalar half_i = Scalar(mpq_class(0), mpq_class(1, 2));
    for (unsigned k = 0; !layer.empty(); ++k) {
        for (const auto& [pair, c] : layer) {
            auto [it2, ins] = out.emplace(std::make_pair(k, pair.first * pair.second), c * weight);
            if (!ins) it2->second += c * weight;
        }
        std::map<std::pair<Monomial, Monomial>, Scalar> next;
        for (const auto& [pair, c] : layer) {
            for (int i = 0; i < dim_; ++i) {
                unsigned ei = pair.first[i];
                if (ei == 0) continue;
                for (int j = 0; j < dim_; ++j) {
                    const Scalar& p = pi(i, j);
                    unsigned ej = pair.second[j];
                    if (ej == 0 || p.is_zero()) continue;
                    Monomial l = pair.first, r = pair.second;
                    l.set(i, ei - 1);
                    r.set(j, ej - 1);
                    Scalar v = c * p * Scalar(static_cast<long>(ei) * static_cast<long>(ej));
                    auto [it3, ins] = next.emplace(std::make_pair(l, r), v);
                    if (!ins) it3->second += v;
                }
            }
        }
        layer.clear();
        for (auto& [pair, c] : next)
            if (!c.is_zero()) layer.emplace(pair, c);
        weight = weight * half_i / Scalar(static_cast<long>(k + 1));
    }
    std::vector<Contraction> list;
    for (const auto& [hk, c] : out)
        if (!c.is_zero()) list.push_back({hk.first, hk.second, c});
    return cache_.emplace(key, std::move(list)).first->second;
}

WeylForm WeylAlgebra::combine(const WeylForm& a, const WeylForm& b, Mode mode, int min_out, int max_out,
                              int trunc) const {
    if (a.dim() != b.dim() || a.dim() != dim_) throw MathError("Weyl form dimension mismatch");
    WeylForm result(dim_, trunc);
    if (a.is_zero() || b.is_zero()) return result;
    // Group b's terms by total degree.
    std::vector<std::vector<const WeylForm::Terms::value_type*>> by_degree(static_cast<std::size_t>(b.max_degree() + 1));
    for (const auto& t : b.terms()) by_degree[t.first.total_degree()].push_back(&t);

    std::map<WeylKey, SPoly> acc;
    for (const auto& [ka, ca] : a.terms()) {
        int da = static_cast<int>(ka.total_degree());
        int shift = (mode == Mode::Commutator) ? 2 : 0;
        int lo = std::max(0, min_out + shift - da);
        int hi = std::min(static_cast<int>(by_degree.size()) - 1, max_out + shift - da);
        for (int db = lo; db <= hi; ++db) {
            for (const auto* tb : by_degree[static_cast<std::size_t>(db)]) {
                const auto& [kb, cb] = *tb;
                int sign = wedge_sign(ka.forms, kb.forms);
                if (sign == 0) continue;
                if (mode == Mode::Commutator && (ka.y.is_one() || kb.y.is_one())) continue;
                SPoly cc = ca * cb;
                if (sign < 0) cc = -cc;
                for (const auto& con : monomial_product(ka.y, kb.y)) {
                    if (mode == Mode::Commutator && con.h % 2 == 0) continue;
                    WeylKey key{ka.h + kb.h + con.h, con.y, static_cast<std::uint16_t>(ka.forms | kb.forms)};
                    Scalar f = con.coeff;
                    if (mode == Mode::Commutator) {
                        // (i/h) * 2 * odd part: drop one power of h.
                        key.h -= 1;
                        f *= Scalar(mpq_class(0), mpq_class(2));
                    }
                    int d = static_cast<int>(key.total_degree());
                    if (d < min_out || d > max_out) continue;
                    auto [it, ins] = acc.emplace(key, SPoly());
                    it->second += cc * f;
                }
            }
        }
    }
    for (auto& [k, c] : acc) result.add_term(k, c);
    return result;
}

WeylForm WeylAlgebra::mul(const WeylForm& a, const WeylForm& b) const {
    int n = std::min(a.truncation(), b.truncation());
    return combine(a, b, Mode::Product, 0, n, n);
}

WeylForm WeylAlgebra::ad_over_h(const WeylForm& a, const WeylForm& b) const {
    int n = std::min(a.truncation(), b.truncation());
    if (n < kExact) n -= 1;
    return combine(a, b, Mode::Commutator, 0, n, n);
}

WeylForm WeylAlgebra::commutator(const WeylForm& a, const WeylForm& b) const {
    // [a, b] = (h/i) (i/h)[a, b] = -i h * ad_over_h.
    WeylForm c = ad_over_h(a, b);
    WeylForm r(dim_, std::min(a.truncation(), b.truncation()));
    for (const auto& [k, v] : c.terms()) {
        WeylKey kk = k;
        kk.h += 1;
        r.add_term(kk, v * Scalar(mpq_class(0), mpq_class(-1)));
    }
    return r;
}

WeylForm WeylAlgebra::mul_degree(const WeylForm& a, const WeylForm& b, int degree) const {
    return combine(a, b, Mode::Product, degree, degree, kExact);
}

WeylForm WeylAlgebra::ad_over_h_degree(const WeylForm& a, const WeylForm& b, int degree) const {
    return combine(a, b, Mode::Commutator, degree, degree, kExact);
}

// ---------------------------------------------------------- delta calculus

WeylForm delta(const WeylForm& a) {
    WeylForm r(a.dim(), a.truncation() >= kExact ? kExact : a.truncation() - 1);
    for (const auto& [k, c] : a.terms()) {
        for (int i = 0; i < a.dim(); ++i) {
            unsigned e = k.y[i];
            auto bit = static_cast<std::uint16_t>(1U << static_cast<unsigned>(i));
            if (e == 0 || (k.forms & bit)) continue;
            WeylKey nk = k;
            nk.y.set(i, e - 1);
            nk.forms = static_cast<std::uint16_t>(k.forms | bit);
            Scalar f(static_cast<long>(e));
            if (low_bits_below(k.forms, i) % 2) f = -f;
            r.add_term(nk, c * f);
        }
    }
    return r;
}

WeylForm delta_star(const WeylForm& a) {
    WeylForm r(a.dim(), a.truncation() >= kExact ? kExact : a.truncation() + 1);
    for (const auto& [k, c] : a.terms()) {
        for (int i = 0; i < a.dim(); ++i) {
            auto bit = static_cast<std::uint16_t>(1U << static_cast<unsigned>(i));
            if (!(k.forms & bit)) continue;
            WeylKey nk = k;
            nk.y.set(i, k.y[i] + 1);
            nk.forms = static_cast<std::uint16_t>(k.forms & ~bit);
            Scalar f(1);
            if (low_bits_below(k.forms, i) % 2) f = -f;
            r.add_term(nk, c * f);
        }
    }
    return r;
}

WeylForm delta_inv(const WeylForm& a) {
    WeylForm r(a.dim(), a.truncation() >= kExact ? kExact : a.truncation() + 1);
    for (const auto& [k, c] : a.terms()) {
        int pq = static_cast<int>(k.y.degree()) + k.form_degree();
        if (pq == 0) continue;
        WeylForm single = WeylForm::term(a.dim(), k, c);
        r += delta_star(single) * Scalar::rational(1, pq);
    }
    return r;
}

WeylForm center_part(const WeylForm& a) {
    WeylForm r(a.dim(), a.truncation());
    for (const auto& [k, c] : a.terms())
        if (k.y.is_one() && k.forms == 0) r.add_term(k, c);
    return r;
}

HSeries project_function(const WeylForm& a) {
    int order = a.truncation() >= kExact ? 0 : a.truncation() / 2;
    if (a.truncation() >= kExact)
        for (const auto& [k, c] : a.terms()) order = std::max(order, static_cast<int>(k.h));
    HSeries f(order);
    for (const auto& [k, c] : a.terms()) {
        if (k.forms != 0) throw MathError("project_function requires a form-degree-0 element");
        if (k.y.is_one()) f[static_cast<int>(k.h)] += c;
    }
    return f;
}

}  // namespace starconn
