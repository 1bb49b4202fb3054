#include "starconn/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace starconn {

namespace {

struct Entry {
    int line;
    std::string name;
    std::vector<int> idx;
    std::string value;
};

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

class Parser {
public:
    Parser(const std::string& text, std::string source) : src_(std::move(source)) {
        std::istringstream in(text);
        std::string raw;
        int no = 0;
        while (std::getline(in, raw)) {
            ++no;
            auto hash = raw.find('#');
            std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
            if (line.empty()) continue;
            auto eq = line.find('=');
            if (eq == std::string::npos) fail(no, "expected 'key = value'");
            entries_.push_back(parse_key(no, trim(line.substr(0, eq)), trim(line.substr(eq + 1))));
        }
    }

    Scenario run() {
        Scenario sc;
        sc.source = src_;
        // dimension and parameters fix the roster for everything else
        for (const auto& e : entries_) {
            if (e.name == "dimension") {
                sc.dim = integer(e, 2, kMaxVars);
                if (sc.dim % 2) fail(e.line, "dimension must be even");
            } else if (e.name == "parameters") {
                sc.nparams = integer(e, 0, kMaxVars);
            }
        }
        if (sc.dim + sc.nparams > kMaxVars)
            fail(1, "dimension + parameters exceeds " + std::to_string(kMaxVars) + " variables");
        Roster roster = sc.roster();
        sc.omega = SymplecticData::standard(sc.dim / 2).omega();
        bool custom_omega = false;
        int omega_line = 0;
        sc.beta.assign(static_cast<std::size_t>(sc.nparams), {});
        std::set<std::string> seen;

        for (const auto& e : entries_) {
            std::string full = e.name;
            for (int i : e.idx) full += "[" + std::to_string(i) + "]";
            if (!seen.insert(full).second && e.name != "sample") fail(e.line, "duplicate key '" + full + "'");
            if (e.name == "dimension" || e.name == "parameters") {
                arity(e, 0);
            } else if (e.name == "order") {
                arity(e, 0);
                sc.order = integer(e, 0, 6);
            } else if (e.name == "basis_degree") {
                arity(e, 0);
                sc.basis_degree = static_cast<unsigned>(integer(e, 0, 6));
            } else if (e.name == "seed") {
                arity(e, 0);
                try {
                    std::size_t used = 0;
                    sc.seed = std::stoull(e.value, &used);
                    if (used != e.value.size()) throw std::invalid_argument("");
                } catch (const std::exception&) {
                    fail(e.line, "expected an unsigned integer");
                }
            } else if (e.name == "omega") {
                arity(e, 2);
                int i = index(e, 0, sc.dim), j = index(e, 1, sc.dim);
                if (i == j) fail(e.line, "omega[i][i] is zero by antisymmetry");
                if (!custom_omega) {
                    sc.omega = zero_matrix<Scalar>(sc.dim);
                    omega_line = e.line;
                }
                custom_omega = true;
                SPoly v = poly(e, Roster());
                sc.omega[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v.constant_term();
                sc.omega[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = -v.constant_term();
            } else if (e.name == "Gamma") {
                arity(e, 3);
                sc.gamma[{index(e, 0, sc.dim), index(e, 1, sc.dim), index(e, 2, sc.dim)}] = poly(e, roster);
            } else if (e.name == "alpha") {
                arity(e, 3);
                int h = e.idx[0];
                if (h < 1 || h > 8) fail(e.line, "alpha power must be between 1 and 8");
                int i = index(e, 1, sc.dim), j = index(e, 2, sc.dim);
                if (i == j) fail(e.line, "alpha[h][i][i] is zero by antisymmetry");
                if (static_cast<int>(sc.alpha.size()) <= h) sc.alpha.resize(static_cast<std::size_t>(h + 1));
                SPoly v = poly(e, roster);
                add_to_form(sc.alpha[static_cast<std::size_t>(h)], mask(i, j), i < j ? v : -v);
            } else if (e.name == "beta" && e.idx.empty()) {
                if (e.value == "auto")
                    sc.beta_auto = true;
                else if (e.value == "explicit")
                    sc.beta_auto = false;
                else
                    fail(e.line, "beta must be 'auto' or 'explicit'");
            } else if (e.name == "beta" || e.name == "beta2") {
                arity(e, 3);
                auto& target = e.name == "beta" ? sc.beta : beta2(sc);
                int j = index(e, 0, sc.nparams), h = e.idx[1], i = index(e, 2, sc.dim);
                if (h < 0 || h > 8) fail(e.line, "beta power must be between 0 and 8");
                auto& row = target[static_cast<std::size_t>(j)];
                if (static_cast<int>(row.size()) <= h) row.resize(static_cast<std::size_t>(h + 1));
                add_to_form(row[static_cast<std::size_t>(h)], static_cast<std::uint16_t>(1U << static_cast<unsigned>(i)),
                            poly(e, roster));
            } else if (e.name == "I") {
                arity(e, 2);
                int a = index(e, 0, sc.dim), b = index(e, 1, sc.dim);
                if (!sc.complex_structure) {
                    sc.complex_structure = zero_matrix<ParamRational>(sc.dim);
                    sc.complex_structure_line = e.line;
                }
                try {
                    (*sc.complex_structure)[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                        parse_param_rational(e.value, Roster::standard(0, sc.nparams));
                } catch (const std::exception& ex) {
                    fail(e.line, ex.what());
                }
            } else if (e.name == "sample") {
                arity(e, 0);
                std::vector<Scalar> pt;
                std::stringstream ss(e.value);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    Poly<Scalar> v = poly({e.line, e.name, {}, trim(item)}, Roster());
                    pt.push_back(v.constant_term());
                }
                if (static_cast<int>(pt.size()) != sc.nparams)
                    fail(e.line, "sample needs " + std::to_string(sc.nparams) + " values");
                sc.samples.push_back(pt);
            } else if (e.name == "F") {
                arity(e, 0);
                sc.ricci_potential = poly(e, roster);
            } else {
                fail(e.line, "unknown key '" + e.name + "'");
            }
        }
        if (custom_omega) {
            try {
                SymplecticData check(sc.omega);
            } catch (const MathError& ex) {
                fail(omega_line, ex.what());
            }
        }
        if (!sc.beta_auto)
            for (int j = 0; j < sc.nparams; ++j)
                if (sc.beta[static_cast<std::size_t>(j)].empty())
                    fail(1, "beta = explicit but no beta[" + std::to_string(j + 1) + "][h][i] entries");
        return sc;
    }

private:
    [[noreturn]] void fail(int line, const std::string& msg) const { throw ScenarioError(src_, line, msg); }

    Entry parse_key(int line, const std::string& key, const std::string& value) {
        Entry e{line, "", {}, value};
        auto br = key.find('[');
        e.name = trim(key.substr(0, br));
        if (e.name.empty()) fail(line, "empty key");
        while (br != std::string::npos) {
            auto close = key.find(']', br);
            if (close == std::string::npos) fail(line, "unterminated '[' in key");
            std::string num = trim(key.substr(br + 1, close - br - 1));
            try {
                std::size_t used = 0;
                e.idx.push_back(std::stoi(num, &used));
                if (used != num.size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                fail(line, "bad index '" + num + "'");
            }
            br = key.find_first_not_of(" \t", close + 1);
            if (br != std::string::npos && key[br] != '[') fail(line, "unexpected text after index");
        }
        if (value.empty()) fail(line, "missing value");
        return e;
    }

    void arity(const Entry& e, std::size_t n) const {
        if (e.idx.size() != n) fail(e.line, "'" + e.name + "' takes " + std::to_string(n) + " indices");
    }
    int index(const Entry& e, std::size_t pos, int bound) const {
        int v = e.idx[pos];
        if (v < 1 || v > bound) fail(e.line, "index " + std::to_string(v) + " out of range 1.." + std::to_string(bound));
        return v - 1;
    }
    int integer(const Entry& e, int lo, int hi) const {
        try {
            std::size_t used = 0;
            int v = std::stoi(e.value, &used);
            if (used != e.value.size()) throw std::invalid_argument("");
            if (v < lo || v > hi) fail(e.line, "value out of range " + std::to_string(lo) + ".." + std::to_string(hi));
            return v;
        } catch (const std::invalid_argument&) {
            fail(e.line, "expected an integer");
        } catch (const std::out_of_range&) {
            fail(e.line, "expected an integer");
        }
    }
    SPoly poly(const Entry& e, const Roster& roster) const {
        try {
            return parse_poly(e.value, roster);
        } catch (const ParseError& ex) {
            fail(e.line, ex.what());
        } catch (const MathError& ex) {
            fail(e.line, ex.what());
        }
    }
    static std::uint16_t mask(int i, int j) {
        return static_cast<std::uint16_t>((1U << static_cast<unsigned>(i)) | (1U << static_cast<unsigned>(j)));
    }
    static std::vector<std::vector<DiffForm>>& beta2(Scenario& sc) {
        if (!sc.beta2) sc.beta2.emplace(static_cast<std::size_t>(sc.nparams));
        return *sc.beta2;
    }

    std::string src_;
    std::vector<Entry> entries_;
};

}  // namespace

FedosovSetup Scenario::setup() const {
    ConnectionFamily c(symplectic(), nparams);
    for (const auto& [key, v] : gamma) c.set(key[0], key[1], key[2], v);
    std::vector<DiffForm> a = alpha;
    if (a.empty()) a.resize(1);
    return FedosovSetup(c, a);
}

LinearKahlerFamily Scenario::kahler() const {
    if (!complex_structure) throw ScenarioError(source, 1, "no complex structure I[a][b] given");
    try {
        std::vector<std::vector<Scalar>> pts = samples;
        if (pts.empty()) pts.emplace_back(static_cast<std::size_t>(nparams), Scalar(0));
        return LinearKahlerFamily(symplectic(), nparams, *complex_structure, pts);
    } catch (const MathError& e) {
        throw ScenarioError(source, complex_structure_line, e.what());
    }
}

Scenario parse_scenario(const std::string& text, const std::string& source) { return Parser(text, source).run(); }

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError(path, 0, "cannot read file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), path);
}

}  // namespace starconn
