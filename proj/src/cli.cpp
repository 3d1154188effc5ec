#include "uhlmann/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <charconv>
#include <cmath>
#include <fstream>
#include <locale>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <variant>

#include "uhlmann/chebyshev_phase.hpp"
#include "uhlmann/errors.hpp"
#include "uhlmann/parallel.hpp"
#include "uhlmann/topology.hpp"
#include "uhlmann/uhlmann_core.hpp"
#include "uhlmann/validation.hpp"

namespace uhlmann::cli {

namespace {

using json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

// ---------------------------------------------------------------------------
// Tables

using Cell = std::variant<std::monostate, double, long, bool, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string csv_cell(const Cell& cell) {
    struct {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(double v) const { return format_real(v); }
        std::string operator()(long v) const { return std::to_string(v); }
        std::string operator()(bool v) const { return v ? "1" : "0"; }
        std::string operator()(const std::string& v) const { return v; }
    } visitor;
    return std::visit(visitor, cell);
}

json json_cell(const Cell& cell) {
    struct {
        json operator()(std::monostate) const { return nullptr; }
        json operator()(double v) const { return std::isfinite(v) ? json(v) : json(nullptr); }
        json operator()(long v) const { return v; }
        json operator()(bool v) const { return v; }
        json operator()(const std::string& v) const { return v; }
    } visitor;
    return std::visit(visitor, cell);
}

void write_csv(std::ostream& os, const Table& table) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) os << (c ? "," : "") << table.columns[c];
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_cell(row[c]);
        os << '\n';
    }
}

json rows_to_json(const Table& table) {
    json rows = json::array();
    for (const auto& row : table.rows) {
        json obj = json::object();
        for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = json_cell(row[c]);
        rows.push_back(std::move(obj));
    }
    return rows;
}

struct Emission {
    json spec;
    Table table;
    json extra = json::object();  // additional top-level JSON members
};

struct OutputOptions {
    std::string format = "csv";
    std::string path;
};

int emit(const Emission& e, const OutputOptions& opts, std::ostream& out, std::ostream& err) {
    std::ostringstream buffer;
    buffer.imbue(std::locale::classic());
    if (opts.format == "json") {
        json doc = json::object();
        doc["spec"] = e.spec;
        doc["rows"] = rows_to_json(e.table);
        for (auto it = e.extra.begin(); it != e.extra.end(); ++it) doc[it.key()] = it.value();
        buffer << doc.dump(2) << '\n';
    } else {
        write_csv(buffer, e.table);
    }

    if (opts.path.empty()) {
        out << buffer.str();
        out.flush();
        return kSuccess;
    }
    std::ofstream file(opts.path, std::ios::binary | std::ios::trunc);
    if (!file) {
        err << "error: cannot open output file '" << opts.path << "'\n";
        return kComputationFailure;
    }
    file << buffer.str();
    if (!file) {
        err << "error: failed writing '" << opts.path << "'\n";
        return kComputationFailure;
    }
    return kSuccess;
}

// ---------------------------------------------------------------------------
// Commands

enum class Engine { chebyshev, trace_closed, trace_path_ordered };

Engine parse_engine(const std::string& name) {
    if (name == "chebyshev") return Engine::chebyshev;
    if (name == "trace_closed") return Engine::trace_closed;
    if (name == "trace_path_ordered") return Engine::trace_path_ordered;
    throw InvalidInput("unknown engine '" + name + "'");
}

PhaseResult evaluate(Engine engine, SpinNumber j, const LoopConfig& cfg, int steps) {
    switch (engine) {
        case Engine::chebyshev:
            return uhlmann_phase_closed(j, cfg);
        case Engine::trace_closed:
            return uhlmann_phase_trace(j, cfg, HolonomyMethod::closed);
        case Engine::trace_path_ordered:
            return uhlmann_phase_trace(j, cfg, HolonomyMethod::path_ordered, steps);
    }
    return {};
}

std::vector<double> beta_b_values(const std::string& text) {
    std::vector<double> values = parse_values(text, false);
    for (double b : values) LoopConfig(b, 0.0);  // validates finiteness and sign
    return values;
}

std::vector<double> theta_values(const std::string& text) {
    std::vector<double> values = parse_values(text, true);
    for (double t : values) LoopConfig(1.0, t);
    return values;
}

struct ScanOptions {
    std::string j;
    std::string theta = "pi/2";
    std::string beta_b;
    std::string engine = "chebyshev";
    int steps = kDefaultOracleSteps;
    CLI::Option* steps_option = nullptr;
    OutputOptions output;
};

int checked_steps(const ScanOptions& o, Engine engine) {
    if (o.steps_option && o.steps_option->count() > 0) {
        if (engine != Engine::trace_path_ordered) {
            throw InvalidInput("--steps only applies to --engine trace_path_ordered");
        }
        if (o.steps < kMinOracleSteps) {
            throw InvalidInput("--steps must be >= " + std::to_string(kMinOracleSteps));
        }
    }
    return o.steps;
}

json scan_spec(const char* command, const ScanOptions& o, SpinNumber j, Engine engine, int steps) {
    json spec = json::object();
    spec["command"] = command;
    spec["j"] = j.to_string();
    spec["theta"] = o.theta;
    spec["beta_b"] = o.beta_b;
    spec["engine"] = o.engine;
    if (engine == Engine::trace_path_ordered) spec["steps"] = steps;
    return spec;
}

int cmd_phase_scan(const ScanOptions& o, std::ostream& out, std::ostream& err) {
    const SpinNumber j = SpinNumber::parse(o.j);
    const Engine engine = parse_engine(o.engine);
    const int steps = checked_steps(o, engine);
    if (is_range(o.theta)) throw InvalidInput("phase-scan takes a single --theta; use grid for theta ranges");
    const std::vector<double> thetas = theta_values(o.theta);
    if (thetas.size() != 1) throw InvalidInput("phase-scan takes a single --theta");
    const std::vector<double> betas = beta_b_values(o.beta_b);

    std::vector<PhaseResult> results(betas.size());
    parallel_for(betas.size(), [&](std::size_t i) {
        results[i] = evaluate(engine, j, LoopConfig(betas[i], thetas[0]), steps);
    });

    Emission e{scan_spec("phase-scan", o, j, engine, steps), {{"beta_b", "phase", "trace_magnitude", "singular"}, {}}};
    for (std::size_t i = 0; i < betas.size(); ++i) {
        e.table.rows.push_back({betas[i], results[i].phase, results[i].trace_magnitude, results[i].singular});
    }
    return emit(e, o.output, out, err);
}

int cmd_grid(const ScanOptions& o, std::ostream& out, std::ostream& err) {
    const SpinNumber j = SpinNumber::parse(o.j);
    const Engine engine = parse_engine(o.engine);
    const int steps = checked_steps(o, engine);
    if (!is_range(o.theta) || !is_range(o.beta_b)) {
        throw InvalidInput("grid needs --theta and --beta-b as start:stop:count ranges");
    }
    const std::vector<double> thetas = theta_values(o.theta);
    const std::vector<double> betas = beta_b_values(o.beta_b);

    const std::size_t n = thetas.size() * betas.size();
    std::vector<PhaseResult> results(n);
    parallel_for(n, [&](std::size_t i) {
        results[i] = evaluate(engine, j, LoopConfig(betas[i % betas.size()], thetas[i / betas.size()]), steps);
    });

    Emission e{scan_spec("grid", o, j, engine, steps), {{"theta", "beta_b", "phase", "singular"}, {}}};
    e.table.rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        e.table.rows.push_back(
            {thetas[i / betas.size()], betas[i % betas.size()], results[i].phase, results[i].singular});
    }
    return emit(e, o.output, out, err);
}

struct CriticalOptions {
    std::string j;
    double scan_min = ScanWindow{}.lo;
    double scan_max = ScanWindow{}.hi;
    int scan_steps = kDefaultScanSteps;
    OutputOptions output;
};

int cmd_critical_temps(const CriticalOptions& o, std::ostream& out, std::ostream& err) {
    const SpinNumber j = SpinNumber::parse(o.j);
    const ScanWindow window{o.scan_min, o.scan_max};
    if (!(window.lo > 0.0) || !(window.hi > window.lo)) throw InvalidInput("need 0 < --scan-min < --scan-max");
    if (o.scan_steps < 2) throw InvalidInput("--scan-steps must be >= 2");

    const CriticalTable table = critical_temperatures(j, window, o.scan_steps);

    Emission e;
    e.spec = json::object();
    e.spec["command"] = "critical-temps";
    e.spec["j"] = j.to_string();
    e.spec["scan_min"] = window.lo;
    e.spec["scan_max"] = window.hi;
    e.spec["scan_steps"] = o.scan_steps;
    e.table.columns = {"k", "beta_b", "chebyshev_root", "residual"};
    for (const CriticalEntry& entry : table.entries) {
        const double residual = std::abs(critical_condition(entry.beta_b) - entry.chebyshev_root);
        e.table.rows.push_back({static_cast<long>(entry.k), entry.beta_b, entry.chebyshev_root, residual});
    }
    for (const std::string& w : table.warnings) err << "warning: " << w << '\n';
    e.extra["warnings"] = table.warnings;
    return emit(e, o.output, out, err);
}

struct WindingOptions {
    std::string j;
    std::string beta_b;
    int grid = kDefaultWindingGrid;
    int max_refine = kDefaultMaxRefine;
    OutputOptions output;
};

int cmd_winding(const WindingOptions& o, std::ostream& out, std::ostream& err) {
    const SpinNumber j = SpinNumber::parse(o.j);
    const std::vector<double> betas = beta_b_values(o.beta_b);
    if (o.grid < 2) throw InvalidInput("--grid must be >= 2");
    if (o.max_refine < 0) throw InvalidInput("--max-refine must be >= 0");

    const CriticalTable table = critical_temperatures(j);
    std::vector<std::optional<WindingResult>> results(betas.size());
    parallel_for(betas.size(), [&](std::size_t i) {
        try {
            results[i] = winding_number(table, betas[i], o.grid, o.max_refine);
        } catch (const SingularInput&) {
            results[i].reset();
        }
    });

    Emission e;
    e.spec = json::object();
    e.spec["command"] = "winding";
    e.spec["j"] = j.to_string();
    e.spec["beta_b"] = o.beta_b;
    e.spec["grid"] = o.grid;
    e.spec["max_refine"] = o.max_refine;
    e.table.columns = {"beta_b", "n_u", "raw_integral", "max_step_jump", "singular"};
    for (std::size_t i = 0; i < betas.size(); ++i) {
        if (results[i]) {
            e.table.rows.push_back({betas[i], static_cast<long>(results[i]->n_u), results[i]->raw_integral,
                                    results[i]->max_step_jump, false});
        } else {
            err << "warning: beta_b = " << format_real(betas[i]) << " is at a critical value; row flagged\n";
            e.table.rows.push_back({betas[i], std::monostate{}, std::monostate{}, std::monostate{}, true});
        }
    }
    return emit(e, o.output, out, err);
}

struct ArgandOptions {
    std::string j;
    std::string beta_b;
    int grid = 181;
    OutputOptions output;
};

int cmd_argand(const ArgandOptions& o, std::ostream& out, std::ostream& err) {
    const SpinNumber j = SpinNumber::parse(o.j);
    const std::vector<double> betas = beta_b_values(o.beta_b);
    if (o.grid < 2) throw InvalidInput("--grid must be >= 2");

    Emission e;
    e.spec = json::object();
    e.spec["command"] = "argand";
    e.spec["j"] = j.to_string();
    e.spec["beta_b"] = o.beta_b;
    e.spec["grid"] = o.grid;
    e.table.columns = {"kind", "index", "beta_b", "theta", "re_z", "im_z"};
    for (double b : betas) {
        for (int i = 0; i < o.grid; ++i) {
            const double theta = i + 1 == o.grid ? std::numbers::pi : i * std::numbers::pi / (o.grid - 1);
            const Complex z = z_variable(LoopConfig(b, theta)).value;
            e.table.rows.push_back({std::string("curve"), static_cast<long>(i), b, theta, z.real(), z.imag()});
        }
    }
    const std::vector<double> roots = chebyshev_roots(j);
    json root_list = json::array();
    for (std::size_t k = 0; k < roots.size(); ++k) {
        if (o.output.format == "csv") {
            e.table.rows.push_back({std::string("root"), static_cast<long>(k + 1), std::monostate{},
                                    std::monostate{}, roots[k], 0.0});
        }
        root_list.push_back({{"k", k + 1}, {"value", roots[k]}});
    }
    e.extra["roots"] = root_list;
    return emit(e, o.output, out, err);
}

struct ValidateOptions {
    std::string level = "quick";
    bool inject_pauli_fault = false;
};

int cmd_validate(const ValidateOptions& o, std::ostream& out) {
    ValidationOptions options;
    options.level = o.level == "full" ? ValidationLevel::full : ValidationLevel::quick;
    options.inject_pauli_fault = o.inject_pauli_fault;

    const auto start = std::chrono::steady_clock::now();
    const ValidationReport report = run_validation(options);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    for (const SuiteResult& s : report.suites) {
        out << s.name << ": max_error=" << format_real(s.max_error) << " tolerance=" << format_real(s.tolerance)
            << " points=" << s.points << " skipped=" << s.skipped << ' ' << (s.passed ? "PASS" : "FAIL") << '\n';
        if (!s.passed) out << "  failing point: " << s.failing_point << '\n';
    }
    out << "validate (" << o.level << "): " << (report.passed() ? "PASS" : "FAIL") << " in " << seconds << " s\n";
    return report.passed() ? kSuccess : kComputationFailure;
}

void add_output_options(CLI::App* cmd, OutputOptions& o) {
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output,-o", o.path, "Output file (default: standard output)");
}

void add_scan_options(CLI::App* cmd, ScanOptions& o, bool theta_required) {
    cmd->add_option("--j", o.j, "Spin j, e.g. 1/2, 1, 3/2")->required();
    auto* theta = cmd->add_option("--theta", o.theta, "Polar angle: value or start:stop:count (pi forms allowed)");
    if (theta_required) theta->required();
    cmd->add_option("--beta-b", o.beta_b, "beta*B: value, list a,b,c or start:stop:count")->required();
    cmd->add_option("--engine", o.engine, "chebyshev | trace_closed | trace_path_ordered")
        ->check(CLI::IsMember({"chebyshev", "trace_closed", "trace_path_ordered"}));
    o.steps_option = cmd->add_option("--steps", o.steps, "Integration steps (trace_path_ordered only)");
    add_output_options(cmd, o.output);
}

}  // namespace

// ---------------------------------------------------------------------------
// Parsing helpers

double parse_real(std::string_view text) {
    const std::string_view t = trim(text);
    double value = 0.0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last || !std::isfinite(value)) {
        throw InvalidInput("cannot parse number '" + std::string(text) + "'");
    }
    return value;
}

double parse_angle(std::string_view text) {
    const std::string_view t = trim(text);
    const std::size_t pi_pos = t.find("pi");
    if (pi_pos == std::string_view::npos) return parse_real(t);

    std::string_view coeff = t.substr(0, pi_pos);
    std::string_view rest = t.substr(pi_pos + 2);
    if (!coeff.empty() && coeff.back() == '*') coeff.remove_suffix(1);
    double factor = 1.0;
    if (coeff == "-") {
        factor = -1.0;
    } else if (!coeff.empty() && coeff != "+") {
        factor = parse_real(coeff);
    }
    double divisor = 1.0;
    if (!rest.empty()) {
        if (rest.front() != '/') throw InvalidInput("cannot parse angle '" + std::string(text) + "'");
        divisor = parse_real(rest.substr(1));
        if (divisor == 0.0) throw InvalidInput("division by zero in angle '" + std::string(text) + "'");
    }
    return factor * std::numbers::pi / divisor;
}

bool is_range(std::string_view text) { return text.find(':') != std::string_view::npos; }

std::vector<double> parse_values(std::string_view text, bool angles) {
    const auto scalar = [angles](std::string_view s) { return angles ? parse_angle(s) : parse_real(s); };
    if (trim(text).empty()) throw InvalidInput("empty value");

    if (is_range(text)) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) throw InvalidInput("range must be start:stop:count (got '" + std::string(text) + "')");
        const double start = scalar(parts[0]);
        const double stop = scalar(parts[1]);
        const double count_real = parse_real(parts[2]);
        if (count_real != std::floor(count_real) || count_real < 2 || count_real > 1e8) {
            throw InvalidInput("range count must be an integer >= 2 (got '" + std::string(parts[2]) + "')");
        }
        if (!(start < stop)) throw InvalidInput("range needs start < stop (got '" + std::string(text) + "')");
        const int count = static_cast<int>(count_real);
        std::vector<double> values(count);
        for (int i = 0; i < count; ++i) {
            values[i] = i + 1 == count ? stop : start + (stop - start) * i / (count - 1);
        }
        return values;
    }

    std::vector<double> values;
    for (std::string_view part : split(text, ',')) values.push_back(scalar(part));
    return values;
}

std::string format_real(double value) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << value;
    return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Uhlmann phase of a thermal spin-j particle in a rotating magnetic field"};
    app.name("uhlmann");
    app.require_subcommand(1);

    ScanOptions phase_scan_opts;
    auto* phase_scan = app.add_subcommand("phase-scan", "Phase versus beta*B at fixed theta");
    add_scan_options(phase_scan, phase_scan_opts, false);

    ScanOptions grid_opts;
    auto* grid = app.add_subcommand("grid", "Phase over a (theta, beta*B) grid, row-major in theta");
    add_scan_options(grid, grid_opts, true);

    CriticalOptions critical_opts;
    auto* critical = app.add_subcommand("critical-temps", "Critical beta*B values, one per Chebyshev root");
    critical->add_option("--j", critical_opts.j, "Spin j")->required();
    critical->add_option("--scan-min", critical_opts.scan_min, "Lower end of the beta*B scan");
    critical->add_option("--scan-max", critical_opts.scan_max, "Upper end of the beta*B scan");
    critical->add_option("--scan-steps", critical_opts.scan_steps, "Scan grid intervals");
    add_output_options(critical, critical_opts.output);

    WindingOptions winding_opts;
    auto* winding = app.add_subcommand("winding", "Uhlmann winding numbers");
    winding->add_option("--j", winding_opts.j, "Spin j")->required();
    winding->add_option("--beta-b", winding_opts.beta_b, "beta*B: value, list or start:stop:count")->required();
    winding->add_option("--grid", winding_opts.grid, "Initial theta intervals");
    winding->add_option("--max-refine", winding_opts.max_refine, "Maximum bisection depth per interval");
    add_output_options(winding, winding_opts.output);

    ArgandOptions argand_opts;
    auto* argand = app.add_subcommand("argand", "The z(theta) curves and the Chebyshev roots");
    argand->add_option("--j", argand_opts.j, "Spin j")->required();
    argand->add_option("--beta-b", argand_opts.beta_b, "beta*B: value, list or start:stop:count")->required();
    argand->add_option("--grid", argand_opts.grid, "Number of theta samples on [0, pi]");
    add_output_options(argand, argand_opts.output);

    ValidateOptions validate_opts;
    auto* validate = app.add_subcommand("validate", "Run the cross-engine oracle suites");
    validate->add_option("--level", validate_opts.level, "quick | full")->check(CLI::IsMember({"quick", "full"}));
    validate->add_flag("--inject-pauli-fault", validate_opts.inject_pauli_fault)->group("");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    try {
        if (*phase_scan) return cmd_phase_scan(phase_scan_opts, out, err);
        if (*grid) return cmd_grid(grid_opts, out, err);
        if (*critical) return cmd_critical_temps(critical_opts, out, err);
        if (*winding) return cmd_winding(winding_opts, out, err);
        if (*argand) return cmd_argand(argand_opts, out, err);
        if (*validate) return cmd_validate(validate_opts, out);
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kComputationFailure;
    }
    return kUsageError;
}

}  // namespace uhlmann::cli
