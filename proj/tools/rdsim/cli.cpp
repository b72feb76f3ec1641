#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <variant>

#include <CLI11.hpp>

#include "rds/attractor.hpp"
#include "rds/cocycle.hpp"
#include "rds/ensemble.hpp"
#include "rds/lyapunov.hpp"
#include "rds/maps.hpp"
#include "rds/noise.hpp"
#include "rds/oracle.hpp"
#include "rds/selftest.hpp"
#include "rds/version.hpp"

namespace rds::cli {

namespace {

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct Report {
    Table table;
    Json summary = Json::object();
    bool passed = true;
};

std::string format_double(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

Json number(double v)
{
    if (std::isfinite(v)) return v;
    return format_double(v);
}

Json cell_json(const Cell& c)
{
    if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
    if (const auto* d = std::get_if<double>(&c)) return number(*d);
    return std::get<std::string>(c);
}

std::string cell_csv(const Cell& c)
{
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
    return std::get<std::string>(c);
}

// Escaped states print as the "escaped" sentinel; their sign has its own column.
Cell state_cell(const ExtReal& z)
{
    if (z.is_escaped()) return std::string("escaped");
    return z.to_double();
}

std::string render(const Json& config, const Report& report)
{
    const std::string format = config.value("format", "csv");
    if (format == "json") {
        Json doc;
        doc["config"] = config;
        doc["seed"] = config.contains("seed") ? config["seed"] : Json(nullptr);
        doc["version"] = version();
        Json rows = Json::array();
        for (const auto& row : report.table.rows) {
            Json obj = Json::object();
            for (std::size_t c = 0; c < row.size(); ++c) {
                obj[report.table.columns[c]] = cell_json(row[c]);
            }
            rows.push_back(std::move(obj));
        }
        doc["rows"] = std::move(rows);
        if (!report.summary.empty()) {
            doc["summary"] = report.summary;
        }
        return doc.dump(2) + "\n";
    }
    if (format != "csv") {
        throw std::invalid_argument("format must be csv or json");
    }
    std::ostringstream os;
    os << "# rdsim " << version() << " seed="
       << (config.contains("seed") ? config["seed"].dump() : std::string("none"))
       << " config=" << config.dump() << "\n";
    if (!report.summary.empty()) {
        os << "# summary=" << report.summary.dump() << "\n";
    }
    for (std::size_t c = 0; c < report.table.columns.size(); ++c) {
        os << (c ? "," : "") << report.table.columns[c];
    }
    os << "\n";
    for (const auto& row : report.table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            os << (c ? "," : "") << cell_csv(row[c]);
        }
        os << "\n";
    }
    return os.str();
}

template <class T>
T get(const Json& config, const char* key)
{
    if (!config.contains(key)) {
        throw std::invalid_argument(std::string("missing config key '") + key + "'");
    }
    try {
        return config.at(key).get<T>();
    } catch (const Json::exception&) {
        throw std::invalid_argument(std::string("config key '") + key + "' has the wrong type");
    }
}

std::uint64_t get_seed(const Json& config)
{
    return get<std::uint64_t>(config, "seed");
}

std::int64_t positive(const Json& config, const char* key)
{
    const auto v = get<std::int64_t>(config, key);
    if (v < 1) {
        throw std::invalid_argument(std::string(key) + " must be >= 1");
    }
    return v;
}

Report run_orbit(const Json& config)
{
    const Family family = parse_family(get<std::string>(config, "family"));
    const double z0 = get<double>(config, "z0");
    const auto steps = get<std::int64_t>(config, "steps");
    if (steps < 0) throw std::invalid_argument("steps must be >= 0");
    const NoisePath path(get_seed(config));
    const Orbit orbit = forward_orbit(family, path, z0, steps);

    Report report;
    report.table.columns = {"m", "exponent", "state", "sign", "log_deriv_sum"};
    // Running log-derivative, reproduced step by step for the table.
    std::int64_t log2_sum = 0;
    for (std::int64_t m = 0; m <= steps; ++m) {
        const ExtReal& z = orbit.states[static_cast<std::size_t>(m)];
        std::int64_t exponent = 0;
        if (m > 0) {
            exponent = path.at(m).exponent;
            const ExtReal& prev = orbit.states[static_cast<std::size_t>(m - 1)];
            if (prev.is_finite()) {
                log2_sum += derivative(family, prev, path.at(m)).log2;
            }
        }
        report.table.rows.push_back({m, exponent, state_cell(z), std::int64_t{z.sign()},
                                     static_cast<double>(log2_sum) * std::numbers::ln2});
    }
    report.summary["escaped_at"] = orbit.escaped_at ? Json(*orbit.escaped_at) : Json(nullptr);
    report.summary["log_deriv_sum"] = number(orbit.log_deriv_sum());
    return report;
}

Report run_lyapunov(const Json& config, int workers)
{
    const Family family = parse_family(get<std::string>(config, "family"));
    const auto summary = lyapunov_ensemble(family, get<double>(config, "z0"), positive(config, "steps"),
                                           positive(config, "paths"), get_seed(config), workers);
    Report report;
    report.table.columns = {"sample", "value"};
    for (std::size_t i = 0; i < summary.samples.size(); ++i) {
        report.table.rows.push_back({static_cast<std::int64_t>(i), summary.samples[i].value()});
    }
    report.summary["value"] = number(summary.mean);
    report.summary["std_error"] = number(summary.std_error);
    report.summary["min"] = number(summary.min);
    report.summary["max"] = number(summary.max);
    report.summary["spread"] = number(summary.max - summary.min);
    report.summary["exact"] = number(exact_exponent(family));
    return report;
}

Report run_survival(const Json& config, int workers)
{
    const auto k = get<std::int64_t>(config, "k");
    const auto checkpoints = get<std::vector<std::int64_t>>(config, "n");
    const auto curve = survival_curve(k, get<double>(config, "z0"), checkpoints, positive(config, "samples"),
                                      get_seed(config), workers);
    Report report;
    report.table.columns = {"n", "p_hat", "half_width", "bound"};
    Json exact = Json::array();
    for (const auto& row : curve.rows) {
        report.table.rows.push_back({row.n, row.p_below_one.value, row.p_below_one.half_width(), row.bound.value()});
        exact.push_back(row.bound.to_string());
    }
    report.summary["bound_exact"] = std::move(exact);
    report.summary["confidence_sigmas"] = kConfidenceSigmas;
    return report;
}

Report run_pullback(const Json& config, int workers)
{
    const double radius = get<double>(config, "R");
    const double epsilon = get<double>(config, "eps");
    const auto checkpoints = get<std::vector<std::int64_t>>(config, "n");
    const auto samples = positive(config, "samples");
    const auto seed = get_seed(config);
    const auto curve = pullback_diameter_curve(radius, epsilon, checkpoints, samples, seed, workers);
    const bool dual = config.value("dual", false);

    Report report;
    report.table.columns = {"n", "p_exceed", "half_width", "median_diameter"};
    std::vector<Estimate> dual_rows;
    if (dual) {
        report.table.columns.insert(report.table.columns.end(), {"p_dual", "dual_half_width"});
        dual_rows = dual_forward_curve(radius, epsilon, checkpoints, samples, seed + 1, workers);
    }
    for (std::size_t c = 0; c < curve.rows.size(); ++c) {
        const auto& row = curve.rows[c];
        std::vector<Cell> cells{row.n, row.p_exceed.value, row.p_exceed.half_width(), row.median_diameter};
        if (dual) {
            cells.emplace_back(dual_rows[c].value);
            cells.emplace_back(dual_rows[c].half_width());
        }
        report.table.rows.push_back(std::move(cells));
    }
    report.summary["confidence_sigmas"] = kConfidenceSigmas;
    return report;
}

Report run_integrability(const Json& config, int workers)
{
    const Family family = parse_family(get<std::string>(config, "family"));
    const auto diag = integrability_diagnostic(family, positive(config, "samples"), get<std::int64_t>(config, "K0"),
                                               get_seed(config), workers);
    Report report;
    report.table.columns = {"samples", "running_mean", "truncated_mean", "truncated_std_error", "analytic_truncated"};
    for (const auto& cp : diag.checkpoints) {
        report.table.rows.push_back({cp.samples, cp.running_mean, cp.truncated_mean, cp.truncated_std_error,
                                     diag.analytic_truncated});
    }
    report.summary["fixed_point_log_moment"] = number(diag.fixed_point_log_moment);
    report.summary["analytic_untruncated"] = number(family == Family::G ? truncated_log_moment(std::nullopt)
                                                                       : std::numbers::ln2);
    return report;
}

Report run_probe_stable(const Json& config, int workers)
{
    const Family family = parse_family(get<std::string>(config, "family"));
    const double x = get<double>(config, "x");
    const double y = get<double>(config, "y");
    const double mu = get<double>(config, "mu");
    const double beta = get<double>(config, "beta");
    const auto steps = positive(config, "steps");
    const auto paths = positive(config, "paths");
    const auto seed = get_seed(config);
    const auto results = parallel_ensemble(paths, workers, [&](std::int64_t i) {
        return stable_set_probe(family, NoisePath(sample_seed(seed, static_cast<std::uint64_t>(i))), x, y, mu, beta,
                                steps);
    });
    Report report;
    report.table.columns = {"sample", "holds", "failed_at"};
    std::int64_t holding = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        holding += results[i].holds ? 1 : 0;
        report.table.rows.push_back({static_cast<std::int64_t>(i), std::int64_t{results[i].holds ? 1 : 0},
                                     results[i].failed_at.value_or(-1)});
    }
    const auto frac = Estimate::binomial(holding, paths);
    report.summary["fraction_holding"] = number(frac.value);
    report.summary["half_width"] = number(frac.half_width());
    return report;
}

Report run_probe_unstable(const Json& config, int workers)
{
    const Family family = parse_family(get<std::string>(config, "family"));
    const double x0 = get<double>(config, "x0");
    const double mu = get<double>(config, "mu");
    const double beta = get<double>(config, "beta");
    const auto steps = positive(config, "steps");
    const auto paths = positive(config, "paths");
    const auto seed = get_seed(config);
    const auto results = parallel_ensemble(paths, workers, [&](std::int64_t i) {
        return unstable_set_probe(family, NoisePath(sample_seed(seed, static_cast<std::uint64_t>(i))), x0, mu, beta,
                                  steps);
    });
    Report report;
    report.table.columns = {"sample", "exited", "exit_step"};
    std::int64_t exited = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        exited += results[i].exited ? 1 : 0;
        report.table.rows.push_back({static_cast<std::int64_t>(i), std::int64_t{results[i].exited ? 1 : 0},
                                     results[i].exit_step.value_or(-1)});
    }
    const auto frac = Estimate::binomial(exited, paths);
    report.summary["fraction_exited"] = number(frac.value);
    report.summary["half_width"] = number(frac.half_width());
    return report;
}

Report run_oracle(const Json& config)
{
    const auto name = get<std::string>(config, "oracle");
    Report report;
    report.table.columns = {"name", "value", "exact"};
    Cell value;
    std::string exact;
    if (name == "survival-bound") {
        const auto r = survival_bound(get<std::int64_t>(config, "k"), get<std::int64_t>(config, "n"));
        value = r.value();
        exact = r.to_string();
    } else if (name == "exact-exponent") {
        value = exact_exponent(parse_family(get<std::string>(config, "family")));
    } else if (name == "truncated-log-moment") {
        std::optional<std::int64_t> k0;
        if (config.contains("K0") && !config["K0"].is_null()) {
            k0 = get<std::int64_t>(config, "K0");
        }
        value = truncated_log_moment(k0);
    } else if (name == "tail-probability") {
        const auto r = tail_probability(get<std::int64_t>(config, "k"));
        value = r.value();
        exact = r.to_string();
    } else if (name == "atom-mass") {
        const auto r = atom_mass(get<std::int64_t>(config, "k"));
        value = r.value();
        exact = r.to_string();
    } else {
        throw std::invalid_argument("unknown oracle '" + name + "'");
    }
    report.table.rows.push_back({name, value, exact});
    report.summary["value"] = cell_json(value);
    if (!exact.empty()) report.summary["exact"] = exact;
    return report;
}

Report run_selftest_report(const Json& config)
{
    Report report;
    report.table.columns = {"check", "passed", "detail"};
    std::int64_t failures = 0;
    for (const auto& r : run_selftest(get_seed(config))) {
        failures += r.passed ? 0 : 1;
        report.table.rows.push_back({r.name, std::int64_t{r.passed ? 1 : 0}, r.detail});
    }
    report.summary["failures"] = failures;
    report.passed = failures == 0;
    return report;
}

std::uint64_t default_seed()
{
    if (const char* env = std::getenv("RDS_SEED")) {
        std::uint64_t v = 0;
        const std::string_view s(env);
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
            throw std::invalid_argument("RDS_SEED is not an unsigned integer");
        }
        return v;
    }
    return 1;
}

Json load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open config file '" + path + "'");
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    // CSV reports echo their config on the first comment line.
    if (text.rfind("# rdsim ", 0) == 0) {
        const auto at = text.find(" config=");
        const auto eol = text.find('\n');
        if (at == std::string::npos || at > eol) {
            throw std::invalid_argument("CSV report has no config echo");
        }
        text = text.substr(at + 8, eol - at - 8);
    }
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::exception& e) {
        throw std::invalid_argument("config file is not valid JSON: " + std::string(e.what()));
    }
    if (doc.contains("config")) {
        return doc["config"];
    }
    return doc;
}

}  // namespace

Rendered execute(const Json& config, int workers)
{
    const auto command = get<std::string>(config, "command");
    Report report;
    if (command == "orbit") {
        report = run_orbit(config);
    } else if (command == "lyapunov") {
        report = run_lyapunov(config, workers);
    } else if (command == "survival") {
        report = run_survival(config, workers);
    } else if (command == "pullback") {
        report = run_pullback(config, workers);
    } else if (command == "integrability") {
        report = run_integrability(config, workers);
    } else if (command == "probe-stable") {
        report = run_probe_stable(config, workers);
    } else if (command == "probe-unstable") {
        report = run_probe_unstable(config, workers);
    } else if (command == "oracle") {
        report = run_oracle(config);
    } else if (command == "selftest") {
        report = run_selftest_report(config);
    } else {
        throw std::invalid_argument("unknown command '" + command + "'");
    }
    return {render(config, report), report.passed};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Simulation and verification toolkit for random monotone maps on the real line", "rdsim"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version()));

    int workers = 1;
    std::string output;
    std::string format;
    std::optional<std::uint64_t> seed;

    auto common = [&](CLI::App* sub, const char* default_format) {
        sub->add_option("--seed", seed, "Noise seed (default: $RDS_SEED or 1)");
        sub->add_option("--workers", workers, "Worker threads; output does not depend on it")
            ->check(CLI::PositiveNumber);
        sub->add_option("--output,-o", output, "Write the report here instead of stdout");
        sub->add_option("--format", format, std::string("csv or json (default ") + default_format + ")")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->final_callback([&format, default_format] {
            if (format.empty()) format = default_format;
        });
    };

    Json params = Json::object();
    std::string family = "G";
    double z0 = 0.0;
    std::int64_t steps = 0;
    std::int64_t paths = 100;
    std::int64_t samples = 0;
    std::int64_t k = 4;
    std::optional<double> survival_z0;
    std::vector<std::int64_t> checkpoints{10, 100, 1000, 10000};
    double radius = 10.0;
    double epsilon = 1e-6;
    bool dual = false;
    std::int64_t truncation = 20;
    double x = 0.0, y = 0.0, x0 = 0.0, mu = 0.0, beta = 0.5;
    std::string config_path;

    auto* orbit = app.add_subcommand("orbit", "Forward orbit Z_0..Z_n with log-derivative sums");
    orbit->add_option("--family", family, "G or F")->required();
    orbit->add_option("--z0", z0, "Initial state")->required();
    orbit->add_option("--steps", steps, "Number of steps")->required();
    common(orbit, "csv");

    auto* lyap = app.add_subcommand("lyapunov", "Finite-time Lyapunov exponents over independent paths");
    lyap->add_option("--family", family, "G or F")->required();
    lyap->add_option("--z0", z0, "Initial state")->capture_default_str();
    lyap->add_option("--steps", steps, "Horizon n")->required();
    lyap->add_option("--seeds,--paths", paths, "Number of independent paths")->capture_default_str();
    common(lyap, "json");

    auto* surv = app.add_subcommand("survival", "P(|Z_n| < 1) for G against the bound k/(k+n)");
    surv->add_option("--k", k, "Dyadic level with |z0| > 2^-k")->capture_default_str();
    surv->add_option("--z0", survival_z0, "Initial state (default 2^-(k-1))");
    surv->add_option("--n", checkpoints, "Comma-separated checkpoints")->delimiter(',')->capture_default_str();
    surv->add_option("--samples", samples, "Monte Carlo samples")->required();
    common(surv, "csv");

    auto* pull = app.add_subcommand("pullback", "Pullback diameter of [-R, R] under F");
    pull->add_option("--R", radius, "Radius of the compact set")->capture_default_str();
    pull->add_option("--eps", epsilon, "Synchronization threshold")->capture_default_str();
    pull->add_option("--n", checkpoints, "Comma-separated checkpoints")->delimiter(',')->capture_default_str();
    pull->add_option("--samples", samples, "Monte Carlo samples")->required();
    pull->add_flag("--dual", dual, "Add the forward-G dual curve (seed + 1)");
    common(pull, "csv");

    auto* integ = app.add_subcommand("integrability", "Running means of ln+ sup|Dmap| on [-1, 1]");
    integ->add_option("--family", family, "G or F")->capture_default_str();
    integ->add_option("--samples", samples, "Number of atoms N")->required();
    integ->add_option("--K0", truncation, "Truncation exponent")->capture_default_str();
    common(integ, "csv");

    auto* pstable = app.add_subcommand("probe-stable", "Stable-set inequality |phi_n(y) - phi_n(x)| <= beta e^(mu n)");
    pstable->add_option("--family", family, "G or F")->required();
    pstable->add_option("--x", x, "Reference point")->capture_default_str();
    pstable->add_option("--y", y, "Probed point")->required();
    pstable->add_option("--mu", mu, "Rate (< 0)")->required();
    pstable->add_option("--beta", beta, "Prefactor in (0, 1)")->capture_default_str();
    pstable->add_option("--steps", steps, "Horizon n")->required();
    pstable->add_option("--seeds,--paths", paths, "Number of independent paths")->capture_default_str();
    common(pstable, "csv");

    auto* punstable = app.add_subcommand("probe-unstable", "Backward-orbit decay test against the fixed point 0");
    punstable->add_option("--family", family, "G or F")->required();
    punstable->add_option("--x0", x0, "Probed point")->required();
    punstable->add_option("--mu", mu, "Rate (> 0)")->required();
    punstable->add_option("--beta", beta, "Prefactor in (0, 1)")->capture_default_str();
    punstable->add_option("--steps", steps, "Horizon n")->required();
    punstable->add_option("--seeds,--paths", paths, "Number of independent paths")->capture_default_str();
    common(punstable, "csv");

    auto* oracle = app.add_subcommand("oracle", "Closed-form reference values (JSON)");
    oracle->require_subcommand(1);
    std::optional<std::int64_t> oracle_k0;
    std::int64_t oracle_n = 0;
    auto* o_surv = oracle->add_subcommand("survival-bound", "k/(k+n)");
    o_surv->add_option("--k", k)->required();
    o_surv->add_option("--n", oracle_n)->required();
    auto* o_exp = oracle->add_subcommand("exact-exponent", "-ln 2 for G, +ln 2 for F");
    o_exp->add_option("--family", family)->required();
    auto* o_tlm = oracle->add_subcommand("truncated-log-moment", "ln 2 * H_{K0-1}; inf without --K0");
    o_tlm->add_option("--K0", oracle_k0);
    auto* o_tail = oracle->add_subcommand("tail-probability", "1/(k-1)");
    o_tail->add_option("--k", k)->required();
    auto* o_mass = oracle->add_subcommand("atom-mass", "1/(k(k-1))");
    o_mass->add_option("--k", k)->required();
    common(oracle, "json");
    for (auto* sub : {o_surv, o_exp, o_tlm, o_tail, o_mass}) {
        sub->fallthrough();
    }

    auto* self = app.add_subcommand("selftest", "Run the invariant sweep; nonzero exit on any violation");
    common(self, "json");

    auto* replay = app.add_subcommand("replay", "Re-run the config echoed in an earlier report");
    replay->add_option("--config", config_path, "Report or config JSON file")->required();
    replay->add_option("--workers", workers)->check(CLI::PositiveNumber);
    replay->add_option("--output,-o", output);

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("rdsim");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e, out, err);
        }
        err << "config-error: " << e.what() << "\n";
        return kConfigError;
    }

    Json config;
    try {
        if (replay->parsed()) {
            config = load_config(config_path);
        } else {
            config["command"] = app.get_subcommands().front()->get_name();
            const std::string cmd = config["command"].get<std::string>();
            if (cmd == "orbit") {
                config["family"] = family;
                config["z0"] = z0;
                config["steps"] = steps;
            } else if (cmd == "lyapunov") {
                config["family"] = family;
                config["z0"] = z0;
                config["steps"] = steps;
                config["paths"] = paths;
            } else if (cmd == "survival") {
                config["k"] = k;
                config["z0"] = survival_z0 ? *survival_z0 : std::ldexp(1.0, static_cast<int>(std::clamp<std::int64_t>(1 - k, -2000, 0)));
                config["n"] = checkpoints;
                config["samples"] = samples;
            } else if (cmd == "pullback") {
                config["R"] = radius;
                config["eps"] = epsilon;
                config["n"] = checkpoints;
                config["samples"] = samples;
                config["dual"] = dual;
            } else if (cmd == "integrability") {
                config["family"] = family;
                config["samples"] = samples;
                config["K0"] = truncation;
            } else if (cmd == "probe-stable") {
                config["family"] = family;
                config["x"] = x;
                config["y"] = y;
                config["mu"] = mu;
                config["beta"] = beta;
                config["steps"] = steps;
                config["paths"] = paths;
            } else if (cmd == "probe-unstable") {
                config["family"] = family;
                config["x0"] = x0;
                config["mu"] = mu;
                config["beta"] = beta;
                config["steps"] = steps;
                config["paths"] = paths;
            } else if (cmd == "oracle") {
                const auto* which = oracle->get_subcommands().front();
                config["oracle"] = which->get_name();
                if (which == o_surv) {
                    config["k"] = k;
                    config["n"] = oracle_n;
                } else if (which == o_exp) {
                    config["family"] = family;
                } else if (which == o_tlm) {
                    config["K0"] = oracle_k0 ? Json(*oracle_k0) : Json(nullptr);
                } else {
                    config["k"] = k;
                }
            }
            if (cmd != "oracle") {
                config["seed"] = seed ? *seed : default_seed();
            }
            config["format"] = format;
        }
    } catch (const std::invalid_argument& e) {
        err << "config-error: " << e.what() << "\n";
        return kConfigError;
    }

    Rendered rendered;
    try {
        rendered = execute(config, workers);
    } catch (const std::invalid_argument& e) {
        err << "config-error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        err << "runtime-error: " << e.what() << "\n";
        return kRuntimeError;
    }

    if (output.empty()) {
        out << rendered.text;
    } else {
        std::ofstream file(output, std::ios::binary);
        if (!file) {
            err << "runtime-error: cannot write '" << output << "'\n";
            return kRuntimeError;
        }
        file << rendered.text;
    }
    if (!rendered.passed) {
        err << "selftest: invariant violations detected\n";
        return kRuntimeError;
    }
    return kOk;
}

}  // namespace rds::cli
