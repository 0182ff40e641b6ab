#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "predprey/integrators.hpp"
#include "predprey/scheme.hpp"

namespace predprey {

/// A complete run description: model parameters, scheme weights, denominator
/// choice, run length, initial state and output destinations. Serializable to
/// and from flat "key = value" text.
struct Scenario {
    // model
    double a_r = 15.0, b_r = 10.0, a_s = 5.0, b_s = 10.0, b_phi = 30.0;
    double c = 0.003, m1 = 1.0, m2 = 1.0;
    // scheme
    std::array<double, 6> alpha = SchemeParams::defaults().alpha;
    std::array<double, 6> beta = SchemeParams::defaults().beta;
    std::string denominator = "linear"; ///< "linear" or "mickens"
    double q = 1.0;
    // run
    double h = 1.0;
    std::optional<unsigned long long> n;
    std::optional<double> t_end;
    double x0 = 10.0, y0 = 10.0;
    std::vector<double> h_list = {0.1, 1.0, 10.0, 100.0}; ///< analyze sweep
    // outputs
    std::string csv_path;
    std::string svg_path;
    MethodSelection methods;
    bool search_thresholds = false; ///< doubling search report in the summary
    unsigned jobs = 1;

    /// The six built-in mortality pairs with the rational rates they belong
    /// to; index 1..6 (labels i..vi). Sets model parameters only.
    static void apply_builtin_case(Scenario& scenario, int index);
    static std::optional<int> parse_case_label(const std::string& label);
    static const char* case_label(int index);

    void validate() const; ///< throws ConfigError
    PreyPredatorModel make_model() const;
    SchemeParams make_scheme() const;
    Denominator make_denominator() const;
    unsigned long long step_count() const;
};

Scenario parse_config_text(const std::string& text);
Scenario parse_config_file(const std::filesystem::path& path);
std::string to_config_text(const Scenario& scenario);

/// Writes the trajectory/comparison CSV and the SVG when paths are set,
/// echoes the effective config and prints the consistency ledger and the
/// run summary. Throws ConfigError (exit 2) or Error (exit 3).
void run_scenario(const Scenario& scenario, std::ostream& out);

/// Prints equilibria with continuous and discrete verdicts, eigenvalue
/// moduli at each step size in scenario.h_list, the certificate values for
/// every equilibrium that exists, and the Lyapunov certificate with a
/// decrease spot check when the extinction regime applies.
void analyze(const Scenario& scenario, std::ostream& out);

} // namespace predprey
