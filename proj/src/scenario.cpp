#include "predprey/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "predprey/csv.hpp"
#include "predprey/stability.hpp"
#include "predprey/svg.hpp"

namespace predprey {

namespace {

constexpr std::array<std::pair<double, double>, 6> kBuiltinMortalities = {{
    {1.53, 0.622},
    {1.53, 0.4789},
    {1.4925, 0.4789},
    {1.38, 0.4789},
    {0.3, 0.501},
    {1.38, 0.622},
}};

constexpr std::array<const char*, 6> kCaseLabels = {"i", "ii", "iii", "iv", "v", "vi"};

double parse_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    const char* begin = value.data();
    const char* end = value.data() + value.size();
    const auto result = std::from_chars(begin, end, out);
    if (result.ec != std::errc{} || result.ptr != end) {
        throw ConfigError("invalid numeric value for '" + key + "': " + value);
    }
    return out;
}

unsigned long long parse_count(const std::string& key, const std::string& value) {
    unsigned long long out = 0;
    const char* begin = value.data();
    const char* end = value.data() + value.size();
    const auto result = std::from_chars(begin, end, out);
    if (result.ec != std::errc{} || result.ptr != end) {
        throw ConfigError("invalid count for '" + key + "': " + value);
    }
    return out;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) parts.push_back(trim(item));
    return parts;
}

MethodSelection parse_methods(const std::string& value) {
    MethodSelection sel{false, false, false};
    for (const auto& name : split(value, ',')) {
        if (name == "nsfd") {
            sel.nsfd = true;
        } else if (name == "euler") {
            sel.euler = true;
        } else if (name == "rk4") {
            sel.rk4 = true;
        } else if (!name.empty()) {
            throw ConfigError("unknown method '" + name + "' (expected nsfd, euler, rk4)");
        }
    }
    if (!sel.nsfd && !sel.euler && !sel.rk4) throw ConfigError("empty method selection");
    return sel;
}

std::string methods_to_string(const MethodSelection& sel) {
    std::string out;
    auto add = [&](const char* name) {
        if (!out.empty()) out += ',';
        out += name;
    };
    if (sel.nsfd) add("nsfd");
    if (sel.euler) add("euler");
    if (sel.rk4) add("rk4");
    return out;
}

} // namespace

void Scenario::apply_builtin_case(Scenario& scenario, int index) {
    if (index < 1 || index > 6) throw ConfigError("case index out of range (1..6)");
    scenario.a_r = 15.0;
    scenario.b_r = 10.0;
    scenario.a_s = 5.0;
    scenario.b_s = 10.0;
    scenario.b_phi = 30.0;
    scenario.c = 0.003;
    scenario.m1 = kBuiltinMortalities[index - 1].first;
    scenario.m2 = kBuiltinMortalities[index - 1].second;
}

std::optional<int> Scenario::parse_case_label(const std::string& label) {
    for (int i = 0; i < 6; ++i) {
        if (label == kCaseLabels[i] || label == std::to_string(i + 1)) return i + 1;
    }
    return std::nullopt;
}

const char* Scenario::case_label(int index) {
    return (index >= 1 && index <= 6) ? kCaseLabels[index - 1] : "?";
}

void Scenario::validate() const {
    if (!(a_r > 0 && b_r > 0 && a_s > 0 && b_s > 0 && b_phi > 0)) {
        throw ConfigError("rate parameters a_r, b_r, a_s, b_s, b_phi must be > 0");
    }
    if (!(c > 0.0 && c < 1.0)) throw ConfigError("conversion efficiency c must be in (0,1)");
    if (!(m1 > 0.0 && m2 > 0.0)) throw ConfigError("mortalities m1, m2 must be > 0");
    if (!(h > 0.0)) throw ConfigError("step size h must be > 0");
    if (n && t_end) throw ConfigError("give exactly one of n and t_end, not both");
    if (!(x0 >= 0.0 && y0 >= 0.0)) throw ConfigError("initial state must be nonnegative");
    if (denominator != "linear" && denominator != "mickens") {
        throw ConfigError("denominator must be 'linear' or 'mickens'");
    }
    if (denominator == "mickens" && !(q > 0.0)) throw ConfigError("q must be > 0");
    if (!make_scheme().pairing_ok()) {
        throw ConfigError("scheme weights violate the pairing constraint "
                          "(alpha1+alpha2 = alpha3+alpha4 = alpha5+alpha6 = 1, same for beta)");
    }
    if (h_list.empty()) throw ConfigError("h_list must not be empty");
    for (double hv : h_list) {
        if (!(hv > 0.0)) throw ConfigError("h_list entries must be > 0");
    }
}

PreyPredatorModel Scenario::make_model() const {
    return PreyPredatorModel(std::make_shared<RationalVitalRates>(a_r, b_r, a_s, b_s, b_phi),
                             MortalityParams{m1, m2, c});
}

SchemeParams Scenario::make_scheme() const { return SchemeParams{alpha, beta}; }

Denominator Scenario::make_denominator() const {
    return denominator == "mickens" ? Denominator::mickens(q) : Denominator::linear();
}

unsigned long long Scenario::step_count() const {
    if (n) return *n;
    if (t_end) return static_cast<unsigned long long>(std::floor(*t_end / h + 1e-9));
    return 1000; // default horizon
}

Scenario parse_config_text(const std::string& text) {
    Scenario sc;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "a_r") sc.a_r = parse_double(key, value);
        else if (key == "b_r") sc.b_r = parse_double(key, value);
        else if (key == "a_s") sc.a_s = parse_double(key, value);
        else if (key == "b_s") sc.b_s = parse_double(key, value);
        else if (key == "b_phi") sc.b_phi = parse_double(key, value);
        else if (key == "c") sc.c = parse_double(key, value);
        else if (key == "m1") sc.m1 = parse_double(key, value);
        else if (key == "m2") sc.m2 = parse_double(key, value);
        else if (key.size() == 6 && key.starts_with("alpha") && key[5] >= '1' && key[5] <= '6')
            sc.alpha[key[5] - '1'] = parse_double(key, value);
        else if (key.size() == 5 && key.starts_with("beta") && key[4] >= '1' && key[4] <= '6')
            sc.beta[key[4] - '1'] = parse_double(key, value);
        else if (key == "denominator") sc.denominator = value;
        else if (key == "q") sc.q = parse_double(key, value);
        else if (key == "h") sc.h = parse_double(key, value);
        else if (key == "n") sc.n = parse_count(key, value);
        else if (key == "t_end") sc.t_end = parse_double(key, value);
        else if (key == "x0") sc.x0 = parse_double(key, value);
        else if (key == "y0") sc.y0 = parse_double(key, value);
        else if (key == "csv") sc.csv_path = value;
        else if (key == "svg") sc.svg_path = value;
        else if (key == "methods") sc.methods = parse_methods(value);
        else if (key == "h_list") {
            sc.h_list.clear();
            for (const auto& item : split(value, ',')) {
                sc.h_list.push_back(parse_double(key, item));
            }
        }
        else if (key == "jobs") sc.jobs = static_cast<unsigned>(parse_count(key, value));
        else throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    return sc;
}

Scenario parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

std::string to_config_text(const Scenario& sc) {
    std::ostringstream out;
    auto kv = [&](const char* key, double value) {
        out << key << " = " << format_double(value) << '\n';
    };
    kv("a_r", sc.a_r);
    kv("b_r", sc.b_r);
    kv("a_s", sc.a_s);
    kv("b_s", sc.b_s);
    kv("b_phi", sc.b_phi);
    kv("c", sc.c);
    kv("m1", sc.m1);
    kv("m2", sc.m2);
    for (int j = 0; j < 6; ++j) {
        out << "alpha" << j + 1 << " = " << format_double(sc.alpha[j]) << '\n';
    }
    for (int j = 0; j < 6; ++j) {
        out << "beta" << j + 1 << " = " << format_double(sc.beta[j]) << '\n';
    }
    out << "denominator = " << sc.denominator << '\n';
    if (sc.denominator == "mickens") kv("q", sc.q);
    kv("h", sc.h);
    if (sc.t_end) {
        kv("t_end", *sc.t_end);
    } else {
        out << "n = " << (sc.n ? *sc.n : 1000ULL) << '\n';
    }
    kv("x0", sc.x0);
    kv("y0", sc.y0);
    out << "methods = " << methods_to_string(sc.methods) << '\n';
    if (!sc.csv_path.empty()) out << "csv = " << sc.csv_path << '\n';
    if (!sc.svg_path.empty()) out << "svg = " << sc.svg_path << '\n';
    return out.str();
}

namespace {

// Decimates a trajectory column to at most 2000 plot points.
template <typename Container, typename Get>
std::vector<Vec2> sample_series(const Container& rows, Get get) {
    std::vector<Vec2> pts;
    const std::size_t stride = std::max<std::size_t>(1, rows.size() / 2000);
    for (std::size_t i = 0; i < rows.size(); i += stride) {
        if (auto p = get(rows[i])) pts.push_back(*p);
    }
    if (!rows.empty() && (rows.size() - 1) % stride != 0) {
        if (auto p = get(rows.back())) pts.push_back(*p);
    }
    return pts;
}

void emit_svg(const Scenario& sc, const Comparison& cmp,
              const std::vector<Equilibrium>& equilibria) {
    std::vector<PlotSeries> time_series;
    std::vector<PlotSeries> phase_series;
    // keep diverging methods from stretching the axes into uselessness
    constexpr double kPlotCap = 1e9;
    auto plottable = [](const Vec2& v) {
        return std::isfinite(v.x) && std::isfinite(v.y) && std::abs(v.x) <= kPlotCap &&
               std::abs(v.y) <= kPlotCap;
    };
    auto add_method = [&](bool on, const char* name, const char* cx, const char* cy,
                          auto get) {
        if (!on) return;
        PlotSeries xs{std::string(name) + " x", cx, {}};
        PlotSeries ys{std::string(name) + " y", cy, {}};
        PlotSeries ph{name, cx, {}};
        xs.points = sample_series(cmp.rows, [&](const ComparisonRow& r) -> std::optional<Vec2> {
            auto v = get(r);
            if (!v || !plottable(*v)) return std::nullopt;
            return Vec2{r.t, v->x};
        });
        ys.points = sample_series(cmp.rows, [&](const ComparisonRow& r) -> std::optional<Vec2> {
            auto v = get(r);
            if (!v || !plottable(*v)) return std::nullopt;
            return Vec2{r.t, v->y};
        });
        ph.points = sample_series(cmp.rows, [&](const ComparisonRow& r) -> std::optional<Vec2> {
            auto v = get(r);
            if (!v || !plottable(*v)) return std::nullopt;
            return Vec2{v->x, v->y};
        });
        time_series.push_back(std::move(xs));
        time_series.push_back(std::move(ys));
        phase_series.push_back(std::move(ph));
    };
    add_method(sc.methods.nsfd, "nsfd", "#1f77b4", "#d62728",
               [](const ComparisonRow& r) -> std::optional<Vec2> {
                   if (!r.nsfd) return std::nullopt;
                   return Vec2{r.nsfd->x, r.nsfd->y};
               });
    add_method(sc.methods.euler, "euler", "#2ca02c", "#9467bd",
               [](const ComparisonRow& r) { return r.euler; });
    add_method(sc.methods.rk4, "rk4", "#ff7f0e", "#8c564b",
               [](const ComparisonRow& r) { return r.rk4; });

    std::vector<PlotMarker> markers;
    static constexpr std::array<const char*, 4> kShort = {"P0", "P1", "P2", "P3"};
    for (const auto& eq : equilibria) {
        markers.push_back(PlotMarker{{eq.location.x, eq.location.y},
                                     kShort[static_cast<int>(eq.kind)]});
    }

    auto svg = open_output_file(sc.svg_path);
    write_scenario_svg(svg, "predator-prey trajectories (h = " + format_double(sc.h) + ")",
                       time_series, phase_series, markers);
}

void print_method_summary(std::ostream& out, const char* name, const MethodSummary& s) {
    if (!s.ran) return;
    out << name << ".first_violation = "
        << (s.first_violation ? std::to_string(*s.first_violation) : std::string("none")) << '\n';
    if (s.diverged) out << name << ".diverged = yes\n";
    if (s.terminal_distance) {
        out << name << ".terminal_distance = " << format_double(*s.terminal_distance) << '\n';
    }
}

} // namespace

void run_scenario(const Scenario& scenario, std::ostream& out) {
    scenario.validate();
    const PreyPredatorModel model = scenario.make_model();
    const SchemeParams scheme = scenario.make_scheme();
    const DiscreteMap map(model, scheme, scenario.make_denominator(), scenario.h);
    const auto n = static_cast<std::size_t>(scenario.step_count());
    const PopulationState start{scenario.x0, scenario.y0};

    out << "# scenario\n" << to_config_text(scenario) << '\n';

    const auto equilibria = enumerate_equilibria(model);
    const bool comparison_run = scenario.methods.euler || scenario.methods.rk4;

    Comparison cmp;
    if (comparison_run) {
        cmp = compare_trajectories(map, start, n, scenario.methods);
        if (!scenario.csv_path.empty()) {
            auto csv = open_output_file(scenario.csv_path);
            write_comparison_csv(csv, cmp, scenario.methods);
        }
    } else {
        const Trajectory traj = map.iterate(start, n);
        if (!scenario.csv_path.empty()) {
            auto csv = open_output_file(scenario.csv_path);
            write_trajectory_csv(csv, traj);
        }
        cmp.rows.resize(traj.states.size());
        for (std::size_t k = 0; k < traj.states.size(); ++k) {
            cmp.rows[k] = ComparisonRow{k, static_cast<double>(k) * scenario.h, traj.states[k],
                                        std::nullopt, std::nullopt};
        }
        cmp.summary.nsfd.ran = true;
        cmp.summary.attractor = stable_attractor(model);
        if (cmp.summary.attractor) {
            cmp.summary.nsfd.terminal_distance =
                linf_dist(traj.states.back(), *cmp.summary.attractor);
        }
    }

    if (!scenario.svg_path.empty()) emit_svg(scenario, cmp, equilibria);

    out << "# consistency\n" << format_report(consistency_report(model, scheme)) << '\n';

    out << "# summary\n";
    print_method_summary(out, "nsfd", cmp.summary.nsfd);
    print_method_summary(out, "euler", cmp.summary.euler);
    print_method_summary(out, "rk4", cmp.summary.rk4);
    if (!cmp.rows.empty()) {
        const auto& last = cmp.rows.back();
        if (last.nsfd) {
            out << "nsfd.final = (" << format_double(last.nsfd->x) << ", "
                << format_double(last.nsfd->y) << ")\n";
        }
    }

    if (scenario.search_thresholds) {
        out << "# positivity-failure thresholds (doubling search from h = 0.1, " << n
            << " steps)\n";
        for (Method method : {Method::Nsfd, Method::Euler, Method::Rk4}) {
            const auto search = find_positivity_failure_threshold(
                method, model, scheme, scenario.make_denominator(), {scenario.x0, scenario.y0},
                n == 0 ? 200 : n);
            out << to_string(method) << ".failure_h = "
                << (search.h ? format_double(*search.h) : std::string("none")) << '\n';
            if (search.violation_index) {
                out << to_string(method) << ".failure_index = " << *search.violation_index
                    << '\n';
            }
        }
    }
}

void analyze(const Scenario& scenario, std::ostream& out) {
    scenario.validate();
    const PreyPredatorModel model = scenario.make_model();
    const SchemeParams scheme = scenario.make_scheme();

    out << "# scenario\n" << to_config_text(scenario) << '\n';

    if (!model.verified()) {
        out << "warning: vital rates failed biological verification\n";
        for (const auto& check : model.verification().checks) {
            if (!check.pass) {
                out << "  failed: " << check.name << " (worst "
                    << format_double(check.worst_value) << " at "
                    << format_double(check.worst_at) << ")\n";
            }
        }
    }

    const auto equilibria = enumerate_equilibria(model);
    const auto interior = find_interior_detailed(model);
    out << "# equilibria\n" << equilibria_to_csv(equilibria);
    if (interior.bracket_count > 1) {
        out << "note: interior root scan found " << interior.bracket_count
            << " brackets; the leftmost root is used\n";
    }
    out << '\n';

    out << "# discrete verdicts\n";
    for (double hv : scenario.h_list) {
        const DiscreteMap map(model, scheme, scenario.make_denominator(), hv);
        for (const auto& eq : equilibria) {
            const auto cls = classify_discrete(map, eq);
            out << "h = " << format_double(hv) << "  " << to_string(eq.kind) << ": |lambda| = ("
                << format_double(cls.modulus1) << ", " << format_double(cls.modulus2) << ") "
                << (cls.non_hyperbolic ? "non_hyperbolic"
                    : cls.jury.stable  ? "stable"
                    : cls.jury.unstable ? "unstable"
                                        : "inconclusive")
                << "  continuous: " << to_string(eq.continuous_verdict) << '\n';
        }
    }
    out << '\n';

    out << "# consistency\n" << format_report(consistency_report(model, scheme)) << '\n';

    const MortalityParams& p = model.params();
    if (p.m1 >= model.r0() && p.m2 >= model.s0()) {
        out << "# lyapunov certificate\n";
        try {
            const auto params = select_lyapunov_params(model, scheme);
            out << "a = " << format_double(params.a_V) << ", b = " << format_double(params.b_V)
                << ", g = " << format_double(params.g_V) << ", d = " << format_double(params.d_V)
                << '\n';
            const DiscreteMap map(model, scheme, scenario.make_denominator(),
                                  scenario.h_list.front());
            const auto report = verify_lyapunov_decrease(map, params,
                                                         {scenario.x0, scenario.y0}, 1000);
            out << "spot check (" << report.steps_taken
                << " steps): min dV = " << format_double(report.min_dV)
                << ", max dV = " << format_double(report.max_dV)
                << ", strictly decreasing = " << (report.ok() ? "yes" : "no") << '\n';
            if (!scenario.csv_path.empty()) {
                const auto trace =
                    lyapunov_trace(map, params, {scenario.x0, scenario.y0}, 1000);
                auto csv = open_output_file(scenario.csv_path);
                write_lyapunov_csv(csv, trace);
                out << "trace written to " << scenario.csv_path << '\n';
            }
        } catch (const InfeasibleSchemeError& e) {
            out << "infeasible: " << e.what() << '\n';
        }
    }
}

} // namespace predprey
