#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "starconn/fedosov.hpp"
#include "starconn/kahler.hpp"

namespace starconn {

/// Malformed scenario; what() is `<source>:<line>: <message>`.
class ScenarioError : public std::runtime_error {
public:
    ScenarioError(const std::string& source, int line, const std::string& message)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Key-value scenario, one `key = value` per line, `#` starts a comment.
/// Indices are 1-based: Gamma[k][i][j], alpha[h][i][j] (dx^i ^ dx^j),
/// beta[j][h][i] (h^h dx^i component of i_{d/dt_j} beta), omega[i][j],
/// I[a][b]. Expressions use x1..x{dimension}, t1..t{parameters}.
struct Scenario {
    std::string source;
    int dim = 2;
    int nparams = 0;
    Matrix<Scalar> omega;
    std::map<std::array<int, 3>, SPoly> gamma;
    std::vector<DiffForm> alpha;
    bool beta_auto = true;
    std::vector<std::vector<DiffForm>> beta;   // [j][h]
    std::optional<std::vector<std::vector<DiffForm>>> beta2;
    int order = 3;
    unsigned basis_degree = 2;
    std::uint64_t seed = 1;

    std::optional<RMatrix> complex_structure;
    int complex_structure_line = 0;
    std::vector<std::vector<Scalar>> samples;
    SPoly ricci_potential;

    Roster roster() const { return Roster::standard(dim, nparams); }
    SymplecticData symplectic() const { return SymplecticData(omega); }
    FedosovSetup setup() const;
    /// Throws ScenarioError anchored at the first I[a][b] line when the
    /// family is not Kahler.
    LinearKahlerFamily kahler() const;
};

Scenario parse_scenario(const std::string& text, const std::string& source = "<scenario>");
Scenario load_scenario(const std::string& path);

}  // namespace starconn
