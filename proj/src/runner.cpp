#include "starconn/runner.hpp"

#include <algorithm>
#include <functional>
#include <regex>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "starconn/family.hpp"
#include "starconn/gauge.hpp"
#include "starconn/sampler.hpp"

namespace starconn {

namespace {

constexpr int kRandomCases = 20;

std::string one_line(const std::string& multiline) {
    std::string out;
    std::istringstream in(multiline);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (!out.empty()) out += " + ";
        out += line;
    }
    return out.empty() ? "0" : out;
}

std::string mono_name(const Monomial& m, const Roster& roster) {
    std::string s = monomial_string(m, roster);
    return s.empty() ? "1" : s;
}

std::string op_key(const OpKey& k, int dim, bool show_h) {
    std::ostringstream os;
    if (show_h) os << "h^" << k.h << " ";
    os << "D[";
    for (std::size_t s = 0; s < k.d.size(); ++s) {
        os << (s ? "," : "") << "(";
        for (int v = 0; v < dim; ++v) os << (v ? "," : "") << k.d[s][v];
        os << ")";
    }
    os << "]";
    return os.str();
}

ReportTable op_table(const std::string& title, const MultiDiffOp& op, const Roster& roster, bool show_h = true) {
    ReportTable t{title, {}};
    for (const auto& [k, c] : op.terms()) t.rows.emplace_back(op_key(k, op.dim(), show_h), to_string(c, roster));
    return t;
}

ReportTable matrix_table(const std::string& title, const RMatrix& m, const Roster& params) {
    ReportTable t{title, {}};
    for (std::size_t a = 0; a < m.size(); ++a)
        for (std::size_t b = 0; b < m.size(); ++b)
            t.rows.emplace_back("[" + std::to_string(a + 1) + "][" + std::to_string(b + 1) + "]", m[a][b].str(params));
    return t;
}

void append(std::vector<CheckResult>& out, const std::vector<CheckResult>& more) {
    out.insert(out.end(), more.begin(), more.end());
}

CheckResult not_applicable(const std::string& name, const std::string& anchor, const std::string& reason) {
    return {name, anchor, Status::NotApplicable, reason};
}

/// Runs fn; a MathError becomes a failing check with the given name.
bool guarded(Report& r, const std::string& name, const std::string& anchor, const std::function<void()>& fn) {
    try {
        fn();
        return true;
    } catch (const MathError& e) {
        r.checks.push_back(make_check(name, anchor, false, e.what()));
        return false;
    }
}

std::string dir(int j) { return "t" + std::to_string(j + 1); }

// ---------------------------------------------------------------- quantize

bool is_flat_moyal(const Scenario& sc) {
    for (const auto& [k, v] : sc.gamma)
        if (!v.is_zero()) return false;
    for (const auto& a : sc.alpha)
        if (!form_is_zero(a)) return false;
    return true;
}

void run_quantize(const Scenario& sc, Report& r) {
    const int k = sc.order;
    Roster roster = sc.roster();
    FedosovSetup setup = sc.setup();
    std::vector<CheckResult> valid = setup.validate();
    append(r.checks, valid);
    if (!all_passed(valid)) return;

    std::unique_ptr<FedosovSolution> sol;
    if (!guarded(r, "Fedosov solution", "D_r^2 = 0", [&] {
            sol = std::make_unique<FedosovSolution>(setup, fedosov_truncation(k));
        }))
        return;
    append(r.checks, check_solution(*sol, sc.basis_degree, roster));

    StarTruncation star = extract_bidiff(*sol, k);
    r.tables.push_back(op_table("star product operator", star.op, roster));
    ReportTable values{"star product on the basis", {}};
    auto basis = monomials_up_to(0, sc.dim, sc.basis_degree);
    for (const auto& fm : basis)
        for (const auto& gm : basis) {
            HSeries v = star.apply(SPoly::term(Scalar(1), fm), SPoly::term(Scalar(1), gm));
            values.rows.emplace_back(mono_name(fm, roster) + " * " + mono_name(gm, roster), v.str(roster));
        }
    r.tables.push_back(std::move(values));

    append(r.checks, check_star_axioms(star, setup.symplectic(), sc.basis_degree, roster));

    Sampler rng(sc.seed);
    std::vector<std::array<SPoly, 3>> triples;
    for (int c = 0; c < kRandomCases; ++c) {
        std::array<SPoly, 3> t;
        for (auto& p : t) p = SPoly::term(Scalar(1), rng.monomial(0, sc.dim, sc.basis_degree + 1));
        triples.push_back(t);
    }
    CheckResult assoc = check_associativity(star, triples, roster);
    assoc.name = "associativity on random triples";
    r.checks.push_back(assoc);

    const std::string moyal_name = "Moyal coefficients";
    const std::string moyal_anchor = "c^k = (i/2)^k/k! pi^{i1j1}...pi^{ikjk} d^k f d^k g";
    if (is_flat_moyal(sc)) {
        auto diff = compare_on_basis(star.op, moyal_operator(setup.symplectic(), k), static_cast<unsigned>(k), k, roster);
        r.checks.push_back(make_check(moyal_name, moyal_anchor, !diff, diff.value_or("")));
    } else {
        r.checks.push_back(not_applicable(moyal_name, moyal_anchor, "connection or alpha is nonzero"));
    }
}

// ------------------------------------------------------------------ family

struct FamilyRun {
    std::unique_ptr<FamilyContext> fam;
    TrivializationBeta beta;
    ConnectionOneForm a;
    std::vector<WeylForm> sigmas;
    bool ok = false;
};

ReportTable beta_table(const std::string& title, const TrivializationBeta& b, const Roster& roster) {
    ReportTable t{title, {}};
    for (std::size_t j = 0; j < b.beta.size(); ++j)
        for (std::size_t h = 0; h < b.beta[j].size(); ++h)
            if (!form_is_zero(b.beta[j][h]))
                t.rows.emplace_back("i_V beta, V = d/d" + dir(static_cast<int>(j)) + ", h^" + std::to_string(h),
                                    form_string(b.beta[j][h], roster));
    return t;
}

TrivializationBeta explicit_beta(const std::vector<std::vector<DiffForm>>& b) { return TrivializationBeta{b}; }

/// Builds the context, beta, s and A; records checks (and tables when asked).
FamilyRun build_family(const Scenario& sc, Report& r, bool tables) {
    FamilyRun run;
    FedosovSetup setup = sc.setup();
    std::vector<CheckResult> valid = setup.validate();
    append(r.checks, valid);
    if (!all_passed(valid)) return run;
    if (!guarded(r, "Fedosov solution", "D_r^2 = 0",
                 [&] { run.fam = std::make_unique<FamilyContext>(setup, sc.order); }))
        return run;
    const FamilyContext& fam = *run.fam;
    Roster roster = fam.roster();

    if (sc.beta_auto) {
        if (!guarded(r, "trivialization", "d_M i_V beta = V[alpha]", [&] {
                run.beta = trivialize_alpha(fam, std::vector<Scalar>(static_cast<std::size_t>(sc.nparams), Scalar(0)));
            }))
            return run;
        if (tables) r.tables.push_back(beta_table("beta (auto)", run.beta, roster));
    } else {
        run.beta = explicit_beta(sc.beta);
        if (tables) r.tables.push_back(beta_table("beta (explicit)", run.beta, roster));
    }
    CheckResult triv = check_trivialization(fam, run.beta);
    r.checks.push_back(triv);
    if (!triv.passed()) return run;

    for (int j = 0; j < sc.nparams; ++j) {
        WeylForm s;
        if (!guarded(r, "s equation, direction " + dir(j), "D_r(i_V s) = V[r] + i_V S/2 + i_V beta",
                     [&] { s = solve_s(fam, run.beta, j); }))
            return run;
        append(r.checks, check_s(fam, run.beta, j, s));
        if (tables) {
            ReportTable t{"i_V s, V = d/d" + dir(j), {}};
            for (int d = std::max(s.min_degree(), 0); d <= s.max_degree(); ++d) {
                WeylForm part = s.degree_part(d);
                if (!part.is_zero()) t.rows.emplace_back("degree " + std::to_string(d), one_line(part.str(roster)));
            }
            r.tables.push_back(std::move(t));
        }
        run.a.a.push_back(connection_operator(fam, s));
        run.sigmas.push_back(std::move(s));
    }
    run.a.provenance = "from-s";
    run.ok = true;
    return run;
}

void run_family(const Scenario& sc, Report& r) {
    if (sc.nparams == 0) {
        r.checks.push_back(not_applicable("family pipeline", "A(V) for V = d/dt_j", "scenario has no parameters"));
        return;
    }
    FamilyRun run = build_family(sc, r, true);
    if (!run.ok) return;
    const FamilyContext& fam = *run.fam;
    Roster roster = fam.roster();
    auto basis = monomials_up_to(0, sc.dim, sc.basis_degree);
    for (int j = 0; j < sc.nparams; ++j) {
        const MultiDiffOp& aj = run.a.a[static_cast<std::size_t>(j)];
        ReportTable t{"A(d/d" + dir(j) + ") on the basis", {}};
        for (const auto& m : basis)
            t.rows.emplace_back(mono_name(m, roster), aj.apply({HSeries(SPoly::term(Scalar(1), m), sc.order)}).str(roster));
        r.tables.push_back(std::move(t));
    }
    append(r.checks, verify_compatibility(fam, run.a));
    for (int j = 0; j < sc.nparams; ++j)
        r.checks.push_back(check_lowest_order(fam, run.beta, run.a.a[static_cast<std::size_t>(j)], j, sc.basis_degree));

    const std::string anchor = "Omega_s(f) = (V[A(W)] - W[A(V)] + [A(V),A(W)])(f)";
    if (sc.nparams == 1) {
        CurvatureResult cr = curvature(fam, run.a, run.sigmas, 0, 0);
        bool ok = cr.direct.is_zero() && cr.from_s.is_zero();
        r.checks.push_back(make_check("curvature vanishes, one parameter", anchor, ok,
                                      cr.direct.is_zero() ? "Omega_s nonzero" : "direct curvature nonzero"));
        return;
    }
    for (int i = 0; i < sc.nparams; ++i)
        for (int j = i + 1; j < sc.nparams; ++j) {
            CurvatureResult cr = curvature(fam, run.a, run.sigmas, i, j);
            r.tables.push_back(op_table("curvature (d/d" + dir(i) + ", d/d" + dir(j) + ")", cr.direct, roster));
            r.checks.push_back(make_check("curvature consistency, " + dir(i) + " " + dir(j), anchor, !cr.mismatch,
                                          cr.mismatch.value_or("")));
        }
}

// ------------------------------------------------------------------- gauge

void run_gauge(const Scenario& sc, Report& r) {
    if (sc.nparams == 0) {
        r.checks.push_back(not_applicable("gauge pipeline", "V[P] = P A'(V) - A(V) P", "scenario has no parameters"));
        return;
    }
    FamilyRun run = build_family(sc, r, false);
    if (!run.ok) return;
    const FamilyContext& fam = *run.fam;
    Roster roster = fam.roster();

    ConnectionOneForm a2 = run.a;
    if (sc.beta2) {
        TrivializationBeta b2 = explicit_beta(*sc.beta2);
        r.tables.push_back(beta_table("second beta", b2, roster));
        CheckResult triv = check_trivialization(fam, b2);
        triv.name = "trivialization of the second beta";
        r.checks.push_back(triv);
        if (!triv.passed()) return;
        if (!guarded(r, "second connection", "D_r(i_V s) = V[r] + i_V S/2 + i_V beta",
                     [&] { a2 = connection_form(fam, b2); }))
            return;
    }

    GaugeResult gr;
    if (guarded(r, "gauge equivalence", "V[P] = P A'(V) - A(V) P", [&] { gr = gauge_equivalence(run.a, a2, fam); })) {
        for (int l = 0; l <= sc.order; ++l)
            r.tables.push_back(op_table("P_" + std::to_string(l), gr.p.h_part(static_cast<unsigned>(l)), roster, false));
        append(r.checks, gr.checks);
    }

    for (int j = 0; j < sc.nparams; ++j) {
        guarded(r, "transport conjugation, direction " + dir(j), "*_t = Phi o *_0 o (Phi^-1 x Phi^-1)", [&] {
            FormalSeriesOp phi = parallel_transport(run.a.a[static_cast<std::size_t>(j)], fam, j, sc.order);
            r.checks.push_back(check_conjugation(fam, phi, j));
        });
    }
}

// ------------------------------------------------------------------ kahler

CheckResult first_failure(std::vector<CheckResult> cs, std::string name, std::string anchor) {
    for (auto& c : cs)
        if (!c.passed()) return make_check(std::move(name), std::move(anchor), false, c.witness);
    return make_check(std::move(name), std::move(anchor), true);
}

void run_kahler(const Scenario& sc, Report& r) {
    if (!sc.complex_structure) {
        r.checks.push_back(
            not_applicable("Kahler pipeline", "g(X, Y) = omega(X, I Y)", "scenario has no complex structure"));
        return;
    }
    LinearKahlerFamily fam = sc.kahler();
    Roster xs = fam.roster(), ps = fam.param_roster();
    RPoly F = to_rpoly(sc.ricci_potential, sc.dim, sc.nparams);
    r.tables.push_back(matrix_table("complex structure I", fam.complex_structure(), ps));
    r.tables.push_back(matrix_table("metric g", fam.metric(), ps));
    r.tables.push_back(matrix_table("inverse metric g~", fam.inverse_metric(), ps));
    r.tables.push_back({"input", {{"F", to_string(F, xs, ps)}, {"basis degree", std::to_string(sc.basis_degree)}}});

    Sampler rng(sc.seed);
    std::vector<std::pair<RPoly, RPoly>> pairs;
    for (int c = 0; c < kRandomCases; ++c) {
        RPoly f = to_rpoly(rng.poly(0, sc.dim, 3, 3, true), sc.dim, sc.nparams);
        RPoly g = to_rpoly(rng.poly(0, sc.dim, 3, 3, true), sc.dim, sc.nparams);
        pairs.emplace_back(std::move(f), std::move(g));
    }

    for (int j = 0; j < sc.nparams; ++j) {
        r.tables.push_back(matrix_table("G~(d/d" + dir(j) + ")", gtilde(fam, j).full, ps));
        r.tables.push_back({"H(d/d" + dir(j) + ")", {{"H", to_string(operator_H(fam, j, F), xs, ps)}}});
        append(r.checks, check_gtilde(fam, j));
        r.checks.push_back(rigidity_check(fam, j));

        std::vector<CheckResult> lemma, direct;
        for (const auto& [f, g] : pairs) {
            lemma.push_back(verify_lemma_vc1(fam, j, f, g));
            RPoly diff = v_c1(fam, j, f, g) - v_c1_direct(fam, j, f, g);
            direct.push_back(make_check("", "", diff.is_zero(), diff.is_zero() ? "" : to_string(diff, xs, ps)));
        }
        r.checks.push_back(first_failure(lemma, "variation of c1 on random pairs, direction " + dir(j),
                                         "V[c1](f,g) = (Delta(fg) - Delta(f) g - f Delta(g)) / 4"));
        r.checks.push_back(first_failure(direct, "variation of c1 against the direct derivative, direction " + dir(j),
                                         "V[c1](f,g) = df G~(V) dg / 2"));
    }
    append(r.checks, order1_hitchin_check(fam, F, sc.basis_degree));
}

using Pipeline = void (*)(const Scenario&, Report&);

const std::vector<std::pair<std::string, Pipeline>>& pipelines() {
    static const std::vector<std::pair<std::string, Pipeline>> p{
        {"quantize", run_quantize}, {"family", run_family}, {"gauge", run_gauge}, {"kahler", run_kahler}};
    return p;
}

}  // namespace

int Report::count(Status s) const {
    return static_cast<int>(std::count_if(checks.begin(), checks.end(), [s](const CheckResult& c) { return c.status == s; }));
}

const std::vector<std::string>& commands() {
    static const std::vector<std::string> c{"quantize", "family", "gauge", "kahler", "verify-all"};
    return c;
}

Report run_command(const std::string& command, const Scenario& sc) {
    Report r;
    r.command = command;
    r.scenario = sc.source;
    r.order = sc.order;
    r.seed = sc.seed;
    bool found = false;
    for (const auto& [name, fn] : pipelines()) {
        if (command == name || command == "verify-all") {
            fn(sc, r);
            found = true;
        }
    }
    if (!found) throw std::invalid_argument("unknown command '" + command + "'");
    return r;
}

std::string report_text(const Report& r) {
    std::ostringstream os;
    os << "command: " << r.command << "\n"
       << "scenario: " << r.scenario << "\n"
       << "order: " << r.order << "\n"
       << "seed: " << r.seed << "\n";
    for (const auto& t : r.tables) {
        os << "\n[" << t.title << "]\n";
        if (t.rows.empty()) os << "  (empty)\n";
        for (const auto& [k, v] : t.rows) os << "  " << k << " = " << v << "\n";
    }
    os << "\n[checks]\n";
    for (const auto& c : r.checks) {
        os << "  " << status_name(c.status) << "  " << c.name << "  {" << c.anchor << "}\n";
        if (!c.witness.empty()) os << "        " << (c.status == Status::Fail ? "witness: " : "note: ") << c.witness << "\n";
    }
    os << "\nsummary: " << r.count(Status::Pass) << " pass, " << r.count(Status::Fail) << " fail, "
       << r.count(Status::NotApplicable) << " n/a\n";
    return os.str();
}

std::string report_json(const Report& r) {
    nlohmann::ordered_json j;
    j["command"] = r.command;
    j["scenario"] = r.scenario;
    j["order"] = r.order;
    j["seed"] = r.seed;
    j["tables"] = nlohmann::ordered_json::array();
    for (const auto& t : r.tables) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& [k, v] : t.rows) rows.push_back({{"key", k}, {"value", v}});
        j["tables"].push_back({{"title", t.title}, {"rows", rows}});
    }
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : r.checks)
        j["checks"].push_back(
            {{"name", c.name}, {"anchor", c.anchor}, {"status", status_name(c.status)}, {"witness", c.witness}});
    j["summary"] = {{"pass", r.count(Status::Pass)},
                    {"fail", r.count(Status::Fail)},
                    {"n/a", r.count(Status::NotApplicable)}};
    return j.dump(2) + "\n";
}

std::string catalog_name(const std::string& name) {
    static const std::regex tdigits(R"(\bt\d+\b)");
    static const std::regex alphadigits(R"(\balpha_\d+\b)");
    return std::regex_replace(std::regex_replace(name, tdigits, "t<j>"), alphadigits, "alpha_<k>");
}

const std::vector<CheckInfo>& check_catalog() {
    static const std::vector<CheckInfo> c{
        {"quantize", "connection preserves omega", "nabla omega = 0"},
        {"quantize", "alpha_<k> closed", "d alpha = 0"},
        {"quantize", "Fedosov solution", "D_r^2 = 0"},
        {"quantize", "normalization of r", "delta* r = 0"},
        {"quantize", "Weyl curvature", "omega + delta r + R - d_nabla r - (i/h) r o r = omega + alpha"},
        {"quantize", "flat sections", "D_r tau(f) = 0, p(tau(f)) = f"},
        {"quantize", "c0 is the pointwise product", "c^0(f, g) = f g"},
        {"quantize", "unit", "f * 1 = f = 1 * f"},
        {"quantize", "first-order commutator", "c^1(f,g) - c^1(g,f) = i{f,g}"},
        {"quantize", "natural differential order", "c^k of order <= k"},
        {"quantize", "associativity", "(f*g)*k = f*(g*k)"},
        {"quantize", "associativity on random triples", "(f*g)*k = f*(g*k)"},
        {"quantize", "Moyal coefficients", "c^k = (i/2)^k/k! pi^{i1j1}...pi^{ikjk} d^k f d^k g"},
        {"family", "family pipeline", "A(V) for V = d/dt_j"},
        {"family", "trivialization", "d_M i_V beta = V[alpha]"},
        {"family", "s equation, direction t<j>", "D_r(i_V s) = V[r] + i_V S/2 + i_V beta"},
        {"family", "s normalization, direction t<j>", "delta*(i_V s) = 0"},
        {"family", "compatibility, direction t<j>", "A(V)(f)*g + f*A(V)(g) - A(V)(f*g) = f V[*] g"},
        {"family", "lowest order of A, direction t<j>", "A(V)(f) = -h i_V i_{X_f} beta_1 mod h^2"},
        {"family", "curvature vanishes, one parameter", "Omega_s(f) = (V[A(W)] - W[A(V)] + [A(V),A(W)])(f)"},
        {"family", "curvature consistency, t<j> t<j>", "Omega_s(f) = (V[A(W)] - W[A(V)] + [A(V),A(W)])(f)"},
        {"gauge", "gauge pipeline", "V[P] = P A'(V) - A(V) P"},
        {"gauge", "trivialization of the second beta", "d_M i_V beta = V[alpha]"},
        {"gauge", "second connection", "D_r(i_V s) = V[r] + i_V S/2 + i_V beta"},
        {"gauge", "gauge equivalence", "V[P] = P A'(V) - A(V) P"},
        {"gauge", "gauge relation, direction t<j>", "V[P] = P A'(V) - A(V) P"},
        {"gauge", "self-equivalence", "P(f * g) = P(f) * P(g)"},
        {"gauge", "transport conjugation, direction t<j>", "*_t = Phi o *_0 o (Phi^-1 x Phi^-1)"},
        {"kahler", "Kahler pipeline", "g(X, Y) = omega(X, I Y)"},
        {"kahler", "G~(V) symmetric, direction t<j>", "G~(V) is a symmetric bivector field"},
        {"kahler", "variation of g~, direction t<j>", "V[g~] = G~(V)"},
        {"kahler", "type decomposition, direction t<j>", "G~(V) = G(V) + G(V)-bar"},
        {"kahler", "pure type, direction t<j>", "pi^{0,1} G(V) = 0, pi^{1,0} G(V)-bar = 0"},
        {"kahler", "rigidity, direction t<j>", "nabla_{X''} G(V) = 0"},
        {"kahler", "variation of c1 on random pairs, direction t<j>",
         "V[c1](f,g) = (Delta(fg) - Delta(f) g - f Delta(g)) / 4"},
        {"kahler", "variation of c1 against the direct derivative, direction t<j>", "V[c1](f,g) = df G~(V) dg / 2"},
        {"kahler", "order-1 derivation identity, direction t<j>", "V[c1](f,g) = -A1(V)(fg) + A1(V)(f) g + f A1(V)(g)"},
        {"kahler", "order-1 flatness, direction t<j>", "V[-P1] = A1(V)"},
        {"kahler", "order-1 closedness", "d_T A1 = 0"},
    };
    return c;
}

}  // namespace starconn
