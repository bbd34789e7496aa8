// Copyright 2026 The randbasis Authors.
// SPDX-License-Identifier: Apache-2.0
#include "randbasis/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>

#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "randbasis/analytics.hpp"
#include "randbasis/counting.hpp"
#include "randbasis/coupling.hpp"
#include "randbasis/error.hpp"
#include "randbasis/experiments.hpp"

namespace randbasis {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Cell big_cell(BigInt const& value)
{
    return BigNumber{value.str()};
}

Cell optional_cell(std::optional<double> const& v)
{
    return v ? Cell{*v} : Cell{};
}

std::string error_record(ErrorKind kind, std::string const& field,
                         std::string const& message)
{
    static char const* const names[] = {"validation", "resource", "io"};
    nlohmann::ordered_json record;
    record["error"] = names[static_cast<int>(kind)];
    record["field"] = field;
    record["message"] = message;
    return record.dump() + "\n";
}

int exit_code_for(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Validation:
        return kExitValidation;
    case ErrorKind::Resource:
        return kExitResource;
    case ErrorKind::Io:
        return kExitIo;
    }
    return 1;
}

// Threshold p for the first (n, k, alpha, a_n, mode) unless p was given.
double resolve_p(RunConfig const& c, double& a_n)
{
    if (c.p) {
        a_n = kNaN;
        return *c.p;
    }
    a_n = c.a_n.front();
    return threshold_p(c.n.front(), c.k.front(), c.alpha.front(), a_n,
                       c.mode.front());
}

Table simulate(RunConfig const& c)
{
    double a_n;
    double const p = resolve_p(c, a_n);
    Sampling sampling = Bernoulli{};
    if (c.fixed_size)
        sampling = FixedSize{*c.fixed_size};
    auto const model = make_model(c.n.front(), c.k.front(), c.alpha.front(), p,
                                  c.mode.front(), sampling);
    auto const stats = run_trials(model, c.trials, c.seed, {c.workers, 0});
    if (!c.histogram)
        return sweep_table({summarize(model, stats, a_n)});

    Table table{{"x", "count", "frequency", "seed"}, {}};
    for (auto const& [x, count] : stats.x_histogram)
        table.rows.push_back({x, count,
                              static_cast<double>(count) / stats.trials,
                              stats.seed});
    return table;
}

Table exact(RunConfig const& c)
{
    auto const n = c.n.front();
    auto const k = c.k.front();
    auto const alpha = c.alpha.front();
    auto const mode = c.mode.front();

    if (c.per_target) {
        if (k != 2)
            throw ValidationError("k", "per-target probabilities need k = 2");
        double a_n;
        double const p = resolve_p(c, a_n);
        Table table{{"j", "missing_prob"}, {}};
        auto const window = target_window(n, 2, alpha, mode);
        for (auto j = window.lo; j <= window.hi; ++j)
            table.rows.push_back({j, exact_missing_prob_k2(j, n, p, mode)});
        return table;
    }

    std::vector<double> ps = c.p_grid;
    if (ps.empty()) {
        double a_n;
        ps.push_back(resolve_p(c, a_n));
    }
    Table table{{"n", "k", "alpha", "p", "mode", "exact_lambda",
                 "asympt_lambda", "poisson_basis_prob"},
                {}};
    for (double p : ps) {
        std::optional<double> exact_lambda;
        std::optional<double> asympt_lambda;
        if (k == 2)
            exact_lambda = exact_mean_missing_k2(n, p, alpha, mode);
        if (p > 0.0)
            asympt_lambda = asympt_mean_missing(n, p, alpha, k, mode);
        std::optional<double> basis;
        if (exact_lambda)
            basis = std::exp(-*exact_lambda);
        table.rows.push_back({n, std::uint64_t{k}, alpha, p, to_string(mode),
                              optional_cell(exact_lambda),
                              optional_cell(asympt_lambda),
                              optional_cell(basis)});
    }
    return table;
}

Table run_sweep(RunConfig const& c, std::ostream* log)
{
    std::vector<GridPoint> grid;
    for (auto n : c.n)
        for (auto k : c.k)
            for (auto alpha : c.alpha)
                for (auto mode : c.mode)
                    for (auto a_n : c.a_n)
                        grid.push_back({n, a_n, mode, k, alpha});
    std::size_t done = 0;
    auto const rows = sweep(grid, c.trials, c.seed, {c.workers, 0},
                            [&](SweepRow const& row) {
                                if (!log)
                                    return;
                                *log << "row " << done++ << ": n=" << row.n
                                     << " k=" << row.k << " a_n=" << row.a_n
                                     << " p_hat=" << row.basis_prob_hat
                                     << (row.error.empty() ? ""
                                                           : " error=" + row.error)
                                     << '\n';
                            });
    return sweep_table(rows);
}

Table counts(RunConfig const& c)
{
    auto const n = c.n.front();
    auto const k = c.k.front();
    Table table{{"j", "count"}, {}};
    if (c.distinct)
        for (unsigned d = 1; d <= k; ++d)
            table.columns.push_back("c_" + std::to_string(d));

    auto add_row = [&](std::int64_t j, BigInt const& total) {
        std::vector<Cell> row{j, big_cell(total)};
        if (c.distinct) {
            auto const strata = count_by_distinct(j, k, n);
            for (auto const& value : strata.by_distinct)
                row.push_back(big_cell(value));
        }
        table.rows.push_back(std::move(row));
    };

    if (c.j) {
        add_row(*c.j, count_sumtuples(*c.j, k, n));
        return table;
    }
    auto const q = gaussian_binomial(n, k);
    for (std::size_t j = 0; j < q.coefficients.size(); ++j)
        add_row(static_cast<std::int64_t>(j), q.coefficients[j]);
    return table;
}

Table couple(RunConfig const& c)
{
    if (!c.p)
        throw ValidationError("p", "couple needs --p");
    if (!c.j || *c.j < 0)
        throw ValidationError("j", "couple needs a non-negative --j");
    auto const n = c.n.front();
    auto const j = static_cast<std::uint64_t>(*c.j);
    auto const check = coupling_tv_check(n, *c.p, j, c.samples, c.seed,
                                         resolve_options({c.workers, 0})
                                             .workers);
    Table table{{"n", "p", "j", "samples", "tv", "one_sided_violations",
                 "seed"},
                {}};
    table.rows.push_back({n, *c.p, j, check.samples, check.tv,
                          check.one_sided_violations, c.seed});
    return table;
}

Table diagnose(RunConfig const& c)
{
    auto const n = c.n.front();
    auto const alpha = c.alpha.front();
    double p;
    if (c.p) {
        p = *c.p;
    } else if (c.delta) {
        p = poisson_window_p(n, alpha, *c.delta);
    } else {
        double a_n;
        p = resolve_p(c, a_n);
    }
    auto const d = stein_chen_diagnostics(n, p, alpha);
    Table table{{"n", "alpha", "p", "c_p", "sigma1", "sigma2", "max_term",
                 "tv_bound", "sigma_reduction"},
                {}};
    table.rows.push_back({n, alpha, p, d.c_p, d.sigma1, d.sigma2, d.max_term,
                          d.tv_bound, std::string("window_sum")});
    return table;
}

}  // namespace

DispatchResult dispatch(RunConfig const& config, std::ostream* log)
{
    try {
        if (config.n.empty() || config.k.empty() || config.alpha.empty()
            || config.a_n.empty() || config.mode.empty())
            throw ValidationError("args", "empty parameter list");
        Table table;
        switch (config.subcommand) {
        case Subcommand::Simulate:
            table = simulate(config);
            break;
        case Subcommand::Exact:
            table = exact(config);
            break;
        case Subcommand::Sweep:
            table = run_sweep(config, log);
            break;
        case Subcommand::Counts:
            table = counts(config);
            break;
        case Subcommand::Couple:
            table = couple(config);
            break;
        case Subcommand::Diagnose:
            table = diagnose(config);
            break;
        }
        return {0, serialize(table, config.format)};
    } catch (ValidationError const& e) {
        return {kExitValidation,
                error_record(e.kind(), e.field(), e.what())};
    } catch (Error const& e) {
        return {exit_code_for(e.kind()), error_record(e.kind(), "", e.what())};
    }
}

std::optional<RunConfig> parse_args(std::vector<std::string> const& args,
                                    std::ostream& out)
{
    RunConfig config;
    CLI::App app{"Random additive bases: simulation, exact analytics and "
                 "counting",
                 "randbasis"};
    app.set_config("--config", "",
                   "TOML/INI file of default flag values; flags on the "
                   "command line take precedence");
    app.require_subcommand(1, 1);

    std::vector<std::string> modes{"truncated"};
    std::string format = "csv";

    auto common = [&](CLI::App* sub) {
        sub->add_option("--seed", config.seed, "Master seed")
            ->capture_default_str();
        sub->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        sub->add_option("--output", config.output_path,
                        "Write the report here instead of stdout");
        sub->add_option("--workers", config.workers,
                        "Worker threads (default: RANDBASIS_WORKERS or 1)");
    };
    auto single = [](CLI::Option* opt) { return opt->expected(1); };
    auto model_flags = [&](CLI::App* sub, bool lists) {
        auto shape = [&](CLI::Option* opt) {
            return lists ? opt->delimiter(',') : opt->expected(1);
        };
        shape(sub->add_option("--n", config.n, "Ground-set bound n"));
        shape(sub->add_option("--k", config.k, "Basis order k"));
        shape(sub->add_option("--alpha", config.alpha, "Window parameter"));
        shape(sub->add_option("--a-n", config.a_n,
                              "Threshold shift A_n (used when --p is absent)"));
        shape(sub->add_option("--mode", modes, "truncated or modular"))
            ->check(CLI::IsMember({"truncated", "modular"}));
    };

    auto* sim = app.add_subcommand("simulate", "Monte Carlo trials of one model");
    model_flags(sim, false);
    sim->add_option("--p", config.p, "Selection probability");
    sim->add_option("--fixed-size", config.fixed_size,
                    "Draw uniform subsets of this size instead");
    sim->add_option("--trials", config.trials)->capture_default_str();
    sim->add_flag("--histogram", config.histogram,
                  "Emit the histogram of X instead of the summary row");
    common(sim);

    auto* ex = app.add_subcommand("exact", "Exact and asymptotic E(X)");
    model_flags(ex, false);
    ex->add_option("--p", config.p, "Selection probability");
    ex->add_option("--p-grid", config.p_grid, "Several probabilities")
        ->delimiter(',');
    ex->add_flag("--per-target", config.per_target,
                 "Emit P(I_j = 1) for each target instead (k = 2)");
    common(ex);

    auto* sw = app.add_subcommand("sweep", "Monte Carlo over a parameter grid");
    model_flags(sw, true);
    sw->add_option("--trials", config.trials)->capture_default_str();
    common(sw);

    auto* ct = app.add_subcommand("counts", "k-tuple and q-binomial counts");
    single(ct->add_option("--n", config.n, "Ground-set bound n"));
    single(ct->add_option("--k", config.k, "Tuple size k"));
    ct->add_option("--j", config.j, "Single target sum");
    ct->add_flag("--distinct", config.distinct,
                 "Add counts by number of distinct values");
    common(ct);

    auto* cp = app.add_subcommand("couple", "Check the k = 2 coupling law");
    single(cp->add_option("--n", config.n, "Ground-set bound n (<= 16)"));
    cp->add_option("--p", config.p, "Selection probability")->required();
    cp->add_option("--j", config.j, "Conditioned target")->required();
    cp->add_option("--samples", config.samples)->capture_default_str();
    common(cp);

    auto* dg = app.add_subcommand("diagnose", "Total-variation bound terms");
    single(dg->add_option("--n", config.n, "Ground-set bound n"));
    single(dg->add_option("--alpha", config.alpha, "Window parameter"));
    dg->add_option("--p", config.p, "Selection probability");
    dg->add_option("--delta", config.delta,
                   "Use p = sqrt((1/alpha + delta) log n / n)");
    single(dg->add_option("--a-n", config.a_n, "Threshold shift A_n"));
    common(dg);

    std::vector<char const*> argv;
    for (auto const& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (CLI::CallForHelp const&) {
        out << app.help();
        return std::nullopt;
    } catch (CLI::CallForAllHelp const&) {
        out << app.help("", CLI::AppFormatMode::All);
        return std::nullopt;
    } catch (CLI::ParseError const& e) {
        throw ValidationError("args", e.what());
    }

    auto* chosen = app.get_subcommands().front();
    static std::pair<char const*, Subcommand> const names[] = {
        {"simulate", Subcommand::Simulate}, {"exact", Subcommand::Exact},
        {"sweep", Subcommand::Sweep},       {"counts", Subcommand::Counts},
        {"couple", Subcommand::Couple},     {"diagnose", Subcommand::Diagnose}};
    for (auto const& [name, value] : names)
        if (chosen->get_name() == name)
            config.subcommand = value;

    config.mode.clear();
    for (auto const& m : modes)
        config.mode.push_back(parse_mode(m));
    config.format = parse_format(format);
    return config;
}

void write_atomically(std::string const& path, std::string const& contents)
{
    namespace fs = std::filesystem;
    fs::path const target(path);
    fs::path temp = target;
    temp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream file(temp, std::ios::binary | std::ios::trunc);
        if (!file)
            throw IoError("cannot open " + temp.string() + " for writing");
        file << contents;
        file.flush();
        if (!file)
            throw IoError("write to " + temp.string() + " failed");
    }
    std::error_code ec;
    fs::rename(temp, target, ec);
    if (ec) {
        fs::remove(temp, ec);
        throw IoError("cannot move report into " + path);
    }
}

int run_cli(std::vector<std::string> const& args, std::ostream& out,
            std::ostream& err)
{
    std::optional<RunConfig> config;
    try {
        config = parse_args(args, out);
    } catch (ValidationError const& e) {
        out << error_record(e.kind(), e.field(), e.what());
        return kExitValidation;
    }
    if (!config)
        return 0;

    auto const result = dispatch(*config, &err);
    if (result.exit_code != 0 || config->output_path.empty()) {
        out << result.report;
        return result.exit_code;
    }
    try {
        write_atomically(config->output_path, result.report);
    } catch (IoError const& e) {
        out << error_record(e.kind(), "output", e.what());
        return kExitIo;
    }
    return 0;
}

}  // namespace randbasis
