#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "starconn/runner.hpp"

using namespace starconn;

namespace {

int list_checks() {
    for (const auto& c : check_catalog()) std::cout << c.command << "\t" << c.name << "\t" << c.anchor << "\n";
    return 0;
}

void write_report_dir(const Report& r, const std::string& scenario_path, const std::string& text, bool json) {
    const char* dir = std::getenv("STARCONN_REPORT_DIR");
    if (!dir || !*dir) return;
    std::filesystem::path out(dir);
    std::filesystem::create_directories(out);
    std::string stem = std::filesystem::path(scenario_path).stem().string();
    out /= stem + "." + r.command + (json ? ".json" : ".txt");
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out.string());
    f << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fedosov star products, their parameter families and connections"};
    app.require_subcommand(0, 1);
    bool list = false;
    app.add_flag("--list-checks", list, "List every check with its anchor and exit");

    std::string scenario_path, format = "text", beta_mode;
    std::optional<int> order;
    std::optional<std::uint64_t> seed;
    std::vector<CLI::App*> subs;
    for (const auto& name : commands()) {
        CLI::App* sub = app.add_subcommand(name, "Run the " + name + " pipeline");
        sub->add_option("--scenario", scenario_path, "Scenario file")->required();
        sub->add_option("--order", order, "Star product order K")->check(CLI::Range(0, 6));
        sub->add_option("--report", format, "Report format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--seed", seed, "Seed for random test inputs");
        sub->add_option("--beta", beta_mode, "auto, or file to use the scenario's beta entries")
            ->check(CLI::IsMember({"auto", "file"}));
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (list) return list_checks();

    CLI::App* chosen = nullptr;
    for (auto* s : subs)
        if (s->parsed()) chosen = s;
    if (!chosen) {
        std::cerr << app.help();
        return 2;
    }

    try {
        Scenario sc = load_scenario(scenario_path);
        if (order) sc.order = *order;
        if (seed) sc.seed = *seed;
        if (beta_mode == "auto") sc.beta_auto = true;
        if (beta_mode == "file") {
            bool any = false;
            for (const auto& b : sc.beta) any = any || !b.empty();
            if (!any) {
                std::cerr << scenario_path << ": --beta file needs beta[j][h][i] entries in the scenario\n";
                return 2;
            }
            sc.beta_auto = false;
        }
        Report r = run_command(chosen->get_name(), sc);
        std::string text = format == "json" ? report_json(r) : report_text(r);
        std::cout << text;
        write_report_dir(r, scenario_path, text, format == "json");
        return r.exit_code();
    } catch (const ScenarioError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
