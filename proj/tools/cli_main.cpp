#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sushchansky/analysis.hpp"
#include "sushchansky/construction.hpp"
#include "sushchansky/growth.hpp"
#include "sushchansky/verification.hpp"

namespace {

using namespace sushchansky;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << text;
}

OrderType resolve_order(int p, const std::string& source) {
    if (source == "lex") return OrderType::lex(p);
    if (source == "lex-swapped") return OrderType::lex_swapped(p);
    OrderType lambda = OrderType::from_json(read_file(source));
    if (lambda.p != p)
        throw std::invalid_argument("order file has p=" + std::to_string(lambda.p) +
                                    " but the command asked for p=" + std::to_string(p));
    return lambda;
}

std::string significant(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

double time_budget_seconds(double fallback) {
    if (const char* env = std::getenv("SUSHCH_BUDGET_SECS")) {
        try {
            return std::stod(env);
        } catch (...) {
            throw std::invalid_argument("SUSHCH_BUDGET_SECS is not a number");
        }
    }
    return fallback;
}

int run_build(const SushchanskySystem& sys, const std::string& format,
              const std::string& output) {
    const MealyMachine& m = sys.automaton_minimized();
    auto names = sys.minimized_state_names();
    std::vector<std::pair<std::string, int>> named;
    for (size_t s = 0; s < names.size(); ++s) named.emplace_back(names[s], static_cast<int>(s));

    nlohmann::ordered_json j = nlohmann::ordered_json::parse(machine_to_json(m, -1, named));
    j["t"] = sys.uv().t;
    j["u"] = word_str(sys.uv().u);
    j["v"] = word_str(sys.uv().v);
    std::string json_text = j.dump(2) + "\n";
    std::string dot_text = export_dot(m, names);
    std::string summary = "states=" + std::to_string(m.states.size()) +
                          " t=" + std::to_string(sys.uv().t) + " u=" + word_str(sys.uv().u) +
                          " v=" + word_str(sys.uv().v) + "\n";

    if (!output.empty()) {
        write_file(output + ".json", json_text);
        write_file(output + ".dot", dot_text);
    }
    if (format == "json")
        std::cout << json_text;
    else if (format == "dot")
        std::cout << dot_text;
    else
        std::cout << summary;
    return kExitOk;
}

int run_verify(const SushchanskySystem& sys, const std::string& suite,
               const std::string& output) {
    auto checks = verify_suite(sys, suite);
    bool all = true;
    nlohmann::ordered_json report;
    report["suite"] = suite;
    report["p"] = sys.p();
    report["order"] = sys.lambda().label;
    report["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        all = all && c.pass;
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.claim;
        if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
        std::cout << "\n";
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["claim"] = c.claim;
        jc["pass"] = c.pass;
        if (!c.detail.empty()) jc["detail"] = c.detail;
        report["checks"].push_back(std::move(jc));
    }
    report["pass"] = all;
    if (!output.empty()) write_file(output, report.dump(2) + "\n");
    std::cout << (all ? "all checks passed" : "some checks FAILED") << "\n";
    return all ? kExitOk : kExitCheckFailed;
}

int run_growth(const SushchanskySystem& sys, const std::string& group, int radius,
               bool with_orders, long long cap, size_t budget, const std::string& format,
               const std::string& output, bool exponents_only) {
    Exponents exp = exponents(sys.p(), sys.p() * sys.p());
    if (exponents_only) {
        std::cout << "alpha=" << significant(exp.alpha) << " beta=" << significant(exp.beta)
                  << " eta_" << exp.r << "=" << significant(exp.eta_r)
                  << " torsion_exponent=" << significant(exp.torsion_exponent) << "\n";
        return kExitOk;
    }

    int k = 1;
    PresetName name = parse_preset_name(group, &k);
    GroupPreset gens = preset(sys, name, k);
    BallBudget ball_budget;
    ball_budget.max_elements = budget;
    ball_budget.max_seconds = time_budget_seconds(120.0);

    GrowthReport report = with_orders ? torsion_table(gens, radius, cap, ball_budget)
                                      : ball_sizes(gens, radius, ball_budget);

    nlohmann::ordered_json j;
    j["preset"] = report.preset;
    j["p"] = sys.p();
    j["order"] = sys.lambda().label;
    j["gamma"] = report.gamma;
    if (!report.pi.empty()) j["pi"] = report.pi;
    j["partial"] = report.partial;
    j["radius_achieved"] = report.radius_achieved;
    j["subexponential_signal"] = report.subexponential_signal;
    if (!report.cap_exceeded.empty()) j["cap_exceeded"] = report.cap_exceeded;
    nlohmann::ordered_json je;
    je["alpha"] = exp.alpha;
    je["beta"] = exp.beta;
    je["eta"] = exp.eta_r;
    je["r"] = exp.r;
    je["torsion_exponent"] = exp.torsion_exponent;
    j["exponents"] = std::move(je);

    std::string text;
    if (format == "csv") {
        std::ostringstream csv;
        csv << "n,gamma,pi\n";
        for (size_t n = 0; n < report.gamma.size(); ++n) {
            csv << n << "," << report.gamma[n] << ",";
            if (n < report.pi.size()) csv << report.pi[n];
            csv << "\n";
        }
        text = csv.str();
    } else {
        text = j.dump(2) + "\n";
    }
    if (!output.empty())
        write_file(output, text);
    else
        std::cout << text;
    if (report.partial)
        std::cerr << "warning: budget exceeded, report truncated at radius "
                  << report.radius_achieved << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"groups of finite-state tree automorphisms of type lambda: "
                 "build automata, verify their structure, measure growth"};
    app.require_subcommand(1);

    int p = 3;
    std::string order_source = "lex";
    app.add_option("--p", p, "alphabet size, an odd prime")->check(CLI::Range(3, 31));
    app.add_option("--order", order_source,
                   "pair order: lex, lex-swapped, or a JSON file {\"p\":..,\"pairs\":[[a,b],..]}");

    auto* build = app.add_subcommand("build", "construct and minimize the union automaton");
    std::string build_format = "text";
    std::string build_output;
    build->add_option("--format", build_format, "text, json or dot")
        ->check(CLI::IsMember({"text", "json", "dot"}));
    build->add_option("--output", build_output, "basename for .json and .dot files");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite = "all";
    std::string verify_output;
    verify->add_option("--suite", suite, "abelian, orders, orbit-tree, branch, ggroup, "
                                         "infinite-order, tableau-agreement, all");
    verify->add_option("--output", verify_output, "write the JSON report here");

    auto* growth = app.add_subcommand("growth", "ball sizes, element orders, exponents");
    std::string group = "G_lambda";
    int radius = 5;
    bool with_orders = false;
    bool exponents_only = false;
    long long cap = 2187;  // p^7 for p = 3
    size_t budget = 1'000'000;
    std::string growth_format = "json";
    std::string growth_output;
    growth->add_option("--group", group, "G_lambda, closure, K, H, H_<k>, L");
    growth->add_option("--radius", radius, "ball radius")->check(CLI::Range(0, 12));
    growth->add_flag("--orders", with_orders, "also compute the period growth table");
    growth->add_flag("--exponents-only", exponents_only, "print the growth exponents and stop");
    growth->add_option("--cap", cap, "order search cap")->check(CLI::Range(1LL, 100000000LL));
    growth->add_option("--budget", budget, "max distinct elements")
        ->check(CLI::Range(static_cast<size_t>(1), static_cast<size_t>(100'000'000)));
    growth->add_option("--format", growth_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    growth->add_option("--output", growth_output, "write the report here");

    CLI11_PARSE(app, argc, argv);

    try {
        SushchanskySystem sys(resolve_order(p, order_source));
        if (build->parsed()) return run_build(sys, build_format, build_output);
        if (verify->parsed()) return run_verify(sys, suite, verify_output);
        if (growth->parsed())
            return run_growth(sys, group, radius, with_orders, cap, budget, growth_format,
                              growth_output, exponents_only);
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}
