#include <algorithm>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "predprey/csv.hpp"
#include "predprey/scenario.hpp"
#include "predprey/stability.hpp"

namespace {

using namespace predprey;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonOptions {
    std::optional<std::string> case_label;
    std::optional<std::string> config_path;
    // flag overrides; only applied when set on the command line
    std::optional<double> a_r, b_r, a_s, b_s, b_phi, c, m1, m2;
    std::optional<std::string> alpha_csv, beta_csv;
    std::optional<std::string> denominator;
    std::optional<double> q;
    std::optional<double> h;
    std::optional<unsigned long long> n;
    std::optional<double> t_end;
    std::optional<double> x0, y0;
    std::optional<std::string> h_list_csv;
    std::optional<std::string> csv_path, svg_path, methods;
    unsigned jobs = 1;
};

void add_common_options(CLI::App* cmd, CommonOptions& opt) {
    // long-only help so the spec'd --h step-size flag does not clash with -h
    cmd->set_help_flag("--help", "print this help and exit");
    cmd->add_option("--case", opt.case_label, "built-in case i..vi (or 1..6); 'all' for sweeps");
    cmd->add_option("--config", opt.config_path, "flat key = value config file");
    cmd->add_option("--a-r", opt.a_r);
    cmd->add_option("--b-r", opt.b_r);
    cmd->add_option("--a-s", opt.a_s);
    cmd->add_option("--b-s", opt.b_s);
    cmd->add_option("--b-phi", opt.b_phi);
    cmd->add_option("--c", opt.c);
    cmd->add_option("--m1", opt.m1);
    cmd->add_option("--m2", opt.m2);
    cmd->add_option("--alpha", opt.alpha_csv, "six comma-separated scheme weights");
    cmd->add_option("--beta", opt.beta_csv, "six comma-separated scheme weights");
    cmd->add_option("--denominator", opt.denominator, "linear | mickens");
    cmd->add_option("--q", opt.q, "Mickens denominator rate");
    cmd->add_option("--h", opt.h, "step size");
    cmd->add_option("--n", opt.n, "number of steps");
    cmd->add_option("--t-end", opt.t_end, "time horizon (alternative to --n)");
    cmd->add_option("--x0", opt.x0);
    cmd->add_option("--y0", opt.y0);
    cmd->add_option("--h-list", opt.h_list_csv, "comma-separated step sizes for sweeps");
    cmd->add_option("--csv", opt.csv_path, "trajectory/comparison CSV output path");
    cmd->add_option("--svg", opt.svg_path, "plot output path");
    cmd->add_option("--methods", opt.methods, "comma list of nsfd,euler,rk4");
    cmd->add_option("--jobs", opt.jobs, "parallel workers for --case all");
}

std::vector<std::string> split_names(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError(std::string("invalid number in ") + what + ": " + item);
        }
    }
    if (out.empty()) throw ConfigError(std::string(what) + " must not be empty");
    return out;
}

// Builds the scenario with precedence defaults < config file < case < flags.
Scenario build_scenario(const CommonOptions& opt) {
    Scenario sc;
    if (opt.config_path) sc = parse_config_file(*opt.config_path);
    if (opt.case_label && *opt.case_label != "all") {
        const auto index = Scenario::parse_case_label(*opt.case_label);
        if (!index) throw ConfigError("unknown case label: " + *opt.case_label);
        Scenario::apply_builtin_case(sc, *index);
    }
    auto set = [](auto& field, const auto& maybe) {
        if (maybe) field = *maybe;
    };
    set(sc.a_r, opt.a_r);
    set(sc.b_r, opt.b_r);
    set(sc.a_s, opt.a_s);
    set(sc.b_s, opt.b_s);
    set(sc.b_phi, opt.b_phi);
    set(sc.c, opt.c);
    set(sc.m1, opt.m1);
    set(sc.m2, opt.m2);
    if (opt.alpha_csv) {
        const auto values = parse_double_list(*opt.alpha_csv, "--alpha");
        if (values.size() != 6) throw ConfigError("--alpha needs exactly six weights");
        std::copy(values.begin(), values.end(), sc.alpha.begin());
    }
    if (opt.beta_csv) {
        const auto values = parse_double_list(*opt.beta_csv, "--beta");
        if (values.size() != 6) throw ConfigError("--beta needs exactly six weights");
        std::copy(values.begin(), values.end(), sc.beta.begin());
    }
    set(sc.denominator, opt.denominator);
    set(sc.q, opt.q);
    set(sc.h, opt.h);
    if (opt.n && opt.t_end) throw ConfigError("give exactly one of --n and --t-end");
    if (opt.n) {
        sc.n = *opt.n;
        sc.t_end.reset();
    }
    if (opt.t_end) {
        sc.t_end = *opt.t_end;
        sc.n.reset();
    }
    set(sc.x0, opt.x0);
    set(sc.y0, opt.y0);
    if (opt.h_list_csv) sc.h_list = parse_double_list(*opt.h_list_csv, "--h-list");
    set(sc.csv_path, opt.csv_path);
    set(sc.svg_path, opt.svg_path);
    if (opt.methods) sc.methods = [&] {
        Scenario probe;
        // reuse the config-file parser for the same syntax
        probe = parse_config_text("methods = " + *opt.methods);
        return probe.methods;
    }();
    sc.jobs = opt.jobs;
    return sc;
}

std::string with_case_suffix(const std::string& path, const char* label) {
    if (path.empty()) return path;
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos || path.find('/', dot) != std::string::npos) {
        return path + "." + label;
    }
    return path.substr(0, dot) + "_" + label + path.substr(dot);
}

int run_simulate(const CommonOptions& opt) {
    if (opt.case_label && *opt.case_label == "all") {
        std::vector<std::future<std::pair<int, std::string>>> futures;
        const unsigned jobs = std::max(1u, opt.jobs);
        for (int index = 1; index <= 6; ++index) {
            auto task = [&opt, index]() -> std::pair<int, std::string> {
                CommonOptions local = opt;
                local.case_label = Scenario::case_label(index);
                if (local.csv_path) {
                    local.csv_path = with_case_suffix(*local.csv_path, Scenario::case_label(index));
                }
                if (local.svg_path) {
                    local.svg_path = with_case_suffix(*local.svg_path, Scenario::case_label(index));
                }
                std::ostringstream out;
                out << "=== case " << Scenario::case_label(index) << " ===\n";
                run_scenario(build_scenario(local), out);
                return {kExitOk, out.str()};
            };
            if (jobs > 1) {
                futures.push_back(std::async(std::launch::async, task));
            } else {
                futures.push_back(std::async(std::launch::deferred, task));
            }
        }
        for (auto& f : futures) {
            const auto [code, text] = f.get();
            std::cout << text;
            if (code != kExitOk) return code;
        }
        return kExitOk;
    }
    run_scenario(build_scenario(opt), std::cout);
    return kExitOk;
}

int run_analyze(const CommonOptions& opt) {
    analyze(build_scenario(opt), std::cout);
    return kExitOk;
}

int run_equilibria(const CommonOptions& opt) {
    Scenario sc = build_scenario(opt);
    sc.validate();
    const auto equilibria = enumerate_equilibria(sc.make_model());
    const std::string csv = equilibria_to_csv(equilibria);
    if (!sc.csv_path.empty()) {
        auto out = open_output_file(sc.csv_path);
        out << csv;
    } else {
        std::cout << csv;
    }
    return kExitOk;
}

int run_check_scheme(const CommonOptions& opt) {
    Scenario sc = build_scenario(opt);
    const SchemeParams scheme = sc.make_scheme();
    auto pf = [](bool b) { return b ? "pass" : "fail"; };
    std::cout << "pairing_constraint = " << pf(scheme.pairing_ok()) << '\n';
    const auto positivity = check_positivity_conditions(scheme);
    for (int j = 0; j < 6; ++j) {
        std::cout << "alpha" << j + 1 << " = " << format_double(scheme.alpha[j]) << " ("
                  << pf(positivity.alpha_ok[j]) << ")\n";
    }
    for (int j = 0; j < 6; ++j) {
        std::cout << "beta" << j + 1 << " = " << format_double(scheme.beta[j]) << " ("
                  << pf(positivity.beta_ok[j]) << ")\n";
    }
    std::cout << "positivity_conditions = " << pf(positivity.pass) << '\n';
    std::cout << "alpha4_plus_beta4 = " << format_double(scheme.alpha[3] + scheme.beta[3])
              << '\n';
    std::cout << "global_stability_condition = " << pf(check_global_stability_condition(scheme))
              << '\n';
    return kExitOk;
}

int run_compare(CommonOptions opt) {
    if (!opt.methods) opt.methods = "nsfd,euler,rk4";
    Scenario sc = build_scenario(opt);
    sc.search_thresholds = true;
    run_scenario(sc, std::cout);
    return kExitOk;
}

int run_order(const CommonOptions& opt, const std::string& methods_csv) {
    Scenario sc = build_scenario(opt);
    sc.validate();
    if (!opt.h_list_csv) sc.h_list = {0.1, 0.05, 0.025, 0.0125};
    const double t_end = sc.t_end ? *sc.t_end : 10.0;
    const PreyPredatorModel model = sc.make_model();
    for (const auto& name : split_names(methods_csv)) {
        Method method;
        if (name == "nsfd") method = Method::Nsfd;
        else if (name == "euler") method = Method::Euler;
        else if (name == "rk4") method = Method::Rk4;
        else throw ConfigError("unknown method: " + name);
        const auto estimate = estimate_order(method, model, sc.make_scheme(),
                                             sc.make_denominator(), {sc.x0, sc.y0}, t_end,
                                             sc.h_list);
        std::cout << name << ".p = " << format_double(estimate.p) << '\n';
        for (std::size_t i = 0; i < estimate.h.size(); ++i) {
            std::cout << name << ".error[h=" << format_double(estimate.h[i])
                      << "] = " << format_double(estimate.error[i]) << '\n';
        }
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"structure-preserving integrator toolkit for a general predator-prey system"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string order_methods = "nsfd,euler,rk4";

    auto* simulate = app.add_subcommand("simulate", "run a scenario and write CSV/SVG artifacts");
    add_common_options(simulate, opt);
    auto* analyze_cmd = app.add_subcommand("analyze", "equilibria, verdicts and certificates");
    add_common_options(analyze_cmd, opt);
    auto* equilibria_cmd = app.add_subcommand("equilibria", "list equilibria as CSV");
    add_common_options(equilibria_cmd, opt);
    auto* check = app.add_subcommand("check-scheme", "verify scheme weight conditions");
    add_common_options(check, opt);
    auto* compare = app.add_subcommand("compare", "side-by-side NSFD/Euler/RK4 run");
    add_common_options(compare, opt);
    auto* order = app.add_subcommand("order", "empirical convergence order");
    add_common_options(order, opt);
    order->add_option("--order-methods", order_methods, "methods to estimate (default all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (simulate->parsed()) return run_simulate(opt);
        if (analyze_cmd->parsed()) return run_analyze(opt);
        if (equilibria_cmd->parsed()) return run_equilibria(opt);
        if (check->parsed()) return run_check_scheme(opt);
        if (compare->parsed()) return run_compare(opt);
        if (order->parsed()) return run_order(opt, order_methods);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}
