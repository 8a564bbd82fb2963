// mbfts: command-line front end for mean-based-partition fuzzy time series
// forecasting.  Each subcommand exposes one stage; `all` chains them.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <mbfts/mbfts.hpp>

namespace fs = std::filesystem;
using namespace mbfts;

namespace {

struct Options {
    std::string config_path;
    std::string input_path = std::string(MBFTS_DATA_DIR) + "/belgium_accidents.csv";
    std::string output_path;
    std::vector<std::string> overrides;
    std::string format;
    std::string partition_path;
    std::string fuzzified_path;
    std::string comparison_path;
    std::vector<std::string> references;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    return in;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << content;
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

template <class Fn>
std::string render(Fn&& fn) {
    std::ostringstream out;
    fn(out);
    return out.str();
}

RunConfig load_config(const Options& opt) {
    RunConfig cfg;
    if (!opt.config_path.empty()) {
        auto in = open_input(opt.config_path);
        cfg = read_config(in, cfg);
    }
    for (const auto& o : opt.overrides) apply_override(cfg, o);
    cfg.validate();
    return cfg;
}

TimeSeries load_series(const Options& opt) {
    auto in = open_input(opt.input_path);
    try {
        return csv::read_series_csv(in);
    } catch (const Error& e) {
        throw DataError(opt.input_path + ": " + e.what());
    }
}

/// The state every stage may need, built from files where given and from
/// the configuration otherwise.
struct Context {
    RunConfig cfg;
    TimeSeries series;
    std::optional<BasePartition> base;
    Partition partition;
    FuzzifiedSeries fuzzified;
};

Context partition_stage(const Options& opt) {
    Context ctx;
    ctx.cfg = load_config(opt);
    if (!opt.partition_path.empty()) {
        auto in = open_input(opt.partition_path);
        ctx.partition = csv::read_partition_csv(in);
        if (opt.fuzzified_path.empty()) ctx.series = load_series(opt);
        return ctx;
    }
    ctx.series = load_series(opt);
    auto stage = build_partition(ctx.series, ctx.cfg);
    ctx.base = std::move(stage.base);
    ctx.partition = std::move(stage.partition);
    return ctx;
}

Context fuzzify_stage(const Options& opt) {
    if (!opt.fuzzified_path.empty() && opt.partition_path.empty())
        throw UsageError("--fuzzified requires --partition");
    auto ctx = partition_stage(opt);
    if (!opt.fuzzified_path.empty()) {
        auto in = open_input(opt.fuzzified_path);
        auto file = csv::read_fuzzified_csv(in, ctx.partition);
        ctx.series = std::move(file.series);
        ctx.fuzzified = std::move(file.fuzzified);
    } else {
        ctx.fuzzified = fuzzify_series(ctx.partition, ctx.series, ctx.cfg.boundary_mode);
    }
    return ctx;
}

std::vector<MethodForecasts> load_references(const Options& opt) {
    std::vector<std::string> specs = opt.references;
    if (specs.empty())
        specs = {"Jilani=" + std::string(MBFTS_DATA_DIR) + "/reference_jilani.csv",
                 "Lee=" + std::string(MBFTS_DATA_DIR) + "/reference_lee.csv"};
    std::vector<MethodForecasts> out;
    for (const auto& spec : specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("--reference expects NAME=PATH, got '" + spec + "'");
        const std::string path = spec.substr(eq + 1);
        auto in = open_input(path);
        TimeSeries ref;
        try {
            ref = csv::read_series_csv(in);
        } catch (const Error& e) {
            throw DataError(path + ": " + e.what());
        }
        out.push_back({spec.substr(0, eq), {ref.begin(), ref.end()}});
    }
    return out;
}

void print_comparison(const ComparisonReport& c, std::ostream& out) {
    out << "method              MSE         AFER (%)\n";
    for (const auto& m : c.methods) {
        std::string name = m.name;
        name.resize(std::max<std::size_t>(name.size(), 16), ' ');
        out << name << "  " << fmt::fixed(m.mse, 2) << "    " << fmt::fixed(m.afer, 6) << '\n';
    }
    out << "smallest MSE: " << c.methods[c.best_by([](const MethodResult& m) { return m.mse; })].name
        << ", smallest AFER: " << c.methods[c.best_by([](const MethodResult& m) { return m.afer; })].name << '\n';
}

PlotFormat plot_format(const Options& opt) { return parse_plot_format(opt.format.empty() ? "svg" : opt.format); }

void check_table_format(const Options& opt) {
    if (!opt.format.empty() && opt.format != "csv")
        throw UsageError("--format " + opt.format + " is only valid for plot (tables are csv)");
}

void emit(const Options& opt, const std::string& content) {
    if (!opt.output_path.empty()) write_file(opt.output_path, content);
}

// --- subcommands -----------------------------------------------------------

void cmd_partition(const Options& opt) {
    check_table_format(opt);
    const auto ctx = partition_stage(opt);
    emit(opt, render([&](std::ostream& o) { csv::write_partition_csv(ctx.partition, o); }));
    const auto& u = ctx.partition.universe();
    std::cout << "universe: [" << fmt::exact(u.lo) << ", " << fmt::exact(u.hi) << "]\n";
    if (ctx.base) {
        std::cout << "base intervals:";
        for (std::size_t i = 0; i < ctx.base->intervals.size(); ++i)
            std::cout << " [" << fmt::exact(ctx.base->intervals[i].lo) << ", " << fmt::exact(ctx.base->intervals[i].hi)
                      << "] n=" << ctx.base->frequencies[i] << " split=" << ctx.base->subdivision_counts[i] << ';';
        std::cout << '\n';
    }
    std::cout << "intervals: " << ctx.partition.size() << '\n';
}

void cmd_fuzzify(const Options& opt) {
    check_table_format(opt);
    const auto ctx = fuzzify_stage(opt);
    emit(opt, render([&](std::ostream& o) { csv::write_fuzzified_csv(ctx.series, ctx.partition, ctx.fuzzified, o); }));
    std::set<Label> distinct;
    for (const auto& l : ctx.fuzzified.labels) distinct.insert(l.label);
    std::cout << "observations: " << ctx.fuzzified.size() << '\n'
              << "intervals: " << ctx.partition.size() << '\n'
              << "distinct labels used: " << distinct.size() << '\n';
}

void cmd_model(const Options& opt) {
    check_table_format(opt);
    const auto ctx = fuzzify_stage(opt);
    const auto model = build_flrg_model(ctx.fuzzified, ctx.cfg.order_k, ctx.cfg.series_direction);
    emit(opt, render([&](std::ostream& o) { csv::write_model_listing(model, o); }));
    std::cout << "order: " << model.k << '\n'
              << "relationships: " << model.relationships.size() << '\n'
              << "groups: " << model.groups.size() << '\n';

    // Out-of-sample step from the most recent k labels (chronological).
    const auto labels = ctx.fuzzified.label_sequence();
    const std::vector<Label> recent(labels.end() - model.k, labels.end());
    const auto table = build_defuzz_table(ctx.partition);
    const auto next = forecast_next(model, table, recent, ctx.cfg.fallback);
    std::cout << "next forecast: " << fmt::fixed(next.value, 4) << (next.matched ? " (matched)" : " (fallback)")
              << '\n';
}

EvaluationReport evaluation_of(const Context& ctx) {
    return evaluate(ctx.series, ctx.partition, build_defuzz_table(ctx.partition), ctx.fuzzified);
}

void cmd_evaluate(const Options& opt) {
    check_table_format(opt);
    const auto ctx = fuzzify_stage(opt);
    const auto report = evaluation_of(ctx);
    emit(opt, render([&](std::ostream& o) { csv::write_evaluation_csv(report, o); }));
    std::cout << "rows: " << report.rows.size() << '\n'
              << "MSE = " << fmt::fixed(report.mse, 2) << '\n'
              << "AFER = " << fmt::fixed(report.afer, 6) << "%\n";
}

ComparisonReport comparison_of(const Options& opt, const Context& ctx) {
    auto methods = load_references(opt);
    methods.push_back(to_method("Proposed", evaluation_of(ctx)));
    return compare(ctx.series, methods);
}

void cmd_compare(const Options& opt) {
    check_table_format(opt);
    const auto ctx = fuzzify_stage(opt);
    const auto report = comparison_of(opt, ctx);
    emit(opt, render([&](std::ostream& o) { csv::write_comparison_csv(report, o); }));
    print_comparison(report, std::cout);
}

void cmd_plot(const Options& opt) {
    const auto format = plot_format(opt);
    ComparisonReport report;
    if (!opt.comparison_path.empty()) {
        auto in = open_input(opt.comparison_path);
        report = csv::read_comparison_csv(in);
    } else {
        // Route through the comparison CSV so the chart is identical to one
        // drawn from a saved comparison file.
        std::istringstream in(render([&](std::ostream& o) {
            csv::write_comparison_csv(comparison_of(opt, fuzzify_stage(opt)), o);
        }));
        report = csv::read_comparison_csv(in);
    }
    const auto content = emit_plot_data(report, format);
    if (opt.output_path.empty()) std::cout << content;
    else write_file(opt.output_path, content);
    std::cerr << "plotted " << report.methods.size() << " methods over " << report.years.size() << " years\n";
}

void cmd_all(const Options& opt) {
    const auto format = plot_format(opt);
    const auto ctx = fuzzify_stage(opt);
    const auto table = build_defuzz_table(ctx.partition);
    const auto model = build_flrg_model(ctx.fuzzified, ctx.cfg.order_k, ctx.cfg.series_direction);
    const auto evaluation = evaluate(ctx.series, ctx.partition, table, ctx.fuzzified);
    auto methods = load_references(opt);
    methods.push_back(to_method("Proposed", evaluation));
    const auto comparison = compare(ctx.series, methods);
    const auto comparison_csv = render([&](std::ostream& o) { csv::write_comparison_csv(comparison, o); });
    std::istringstream reread(comparison_csv);
    const auto plot = emit_plot_data(csv::read_comparison_csv(reread), format);

    if (!opt.output_path.empty()) {
        const fs::path dir(opt.output_path);
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
        write_file((dir / "partition.csv").string(), render([&](std::ostream& o) { csv::write_partition_csv(ctx.partition, o); }));
        write_file((dir / "fuzzified.csv").string(),
                   render([&](std::ostream& o) { csv::write_fuzzified_csv(ctx.series, ctx.partition, ctx.fuzzified, o); }));
        write_file((dir / "model.txt").string(), render([&](std::ostream& o) { csv::write_model_listing(model, o); }));
        write_file((dir / "evaluation.csv").string(), render([&](std::ostream& o) { csv::write_evaluation_csv(evaluation, o); }));
        write_file((dir / "comparison.csv").string(), comparison_csv);
        write_file((dir / (format == PlotFormat::svg ? "plot.svg" : "plot.tsv")).string(), plot);
    }

    std::cout << "intervals: " << ctx.partition.size() << '\n'
              << "groups: " << model.groups.size() << " (order " << model.k << ", " << model.relationships.size()
              << " relationships)\n"
              << "MSE = " << fmt::fixed(evaluation.mse, 2) << '\n'
              << "AFER = " << fmt::fixed(evaluation.afer, 6) << "%\n";
    print_comparison(comparison, std::cout);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mean-based-partition fuzzy time series forecasting"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "Config file (key = value lines)");
        sub->add_option("--input", opt.input_path, "Series CSV with header year,value");
        sub->add_option("--output", opt.output_path, "Output file (directory for 'all')");
        sub->add_option("--set", opt.overrides, "Override a config key (key=value), repeatable");
        sub->add_option("--format", opt.format, "csv for tables; svg or tsv for plot/all");
    };
    auto add_partition = [&](CLI::App* sub) {
        sub->add_option("--partition", opt.partition_path, "Partition CSV from the 'partition' stage");
    };
    auto add_fuzzified = [&](CLI::App* sub) {
        sub->add_option("--fuzzified", opt.fuzzified_path, "Fuzzified CSV from the 'fuzzify' stage");
    };
    auto add_references = [&](CLI::App* sub) {
        sub->add_option("--reference", opt.references, "Reference forecasts NAME=PATH, repeatable");
    };

    struct Entry {
        CLI::App* app;
        void (*run)(const Options&);
    };
    std::vector<Entry> entries;

    auto* partition = app.add_subcommand("partition", "Build and export the refined partition");
    add_common(partition);
    entries.push_back({partition, cmd_partition});

    auto* fuzzify = app.add_subcommand("fuzzify", "Label every observation");
    add_common(fuzzify);
    add_partition(fuzzify);
    entries.push_back({fuzzify, cmd_fuzzify});

    auto* model = app.add_subcommand("model", "Build the relationship groups");
    add_common(model);
    add_partition(model);
    add_fuzzified(model);
    entries.push_back({model, cmd_model});

    auto* evaluate_cmd = app.add_subcommand("evaluate", "In-sample forecasts with MSE and AFER");
    add_common(evaluate_cmd);
    add_partition(evaluate_cmd);
    add_fuzzified(evaluate_cmd);
    entries.push_back({evaluate_cmd, cmd_evaluate});

    auto* compare_cmd = app.add_subcommand("compare", "Score against reference forecasts");
    add_common(compare_cmd);
    add_partition(compare_cmd);
    add_fuzzified(compare_cmd);
    add_references(compare_cmd);
    entries.push_back({compare_cmd, cmd_compare});

    auto* plot = app.add_subcommand("plot", "Chart actuals and forecasts (svg or tsv)");
    add_common(plot);
    add_partition(plot);
    add_fuzzified(plot);
    add_references(plot);
    plot->add_option("--comparison", opt.comparison_path, "Comparison CSV from the 'compare' stage");
    entries.push_back({plot, cmd_plot});

    auto* all = app.add_subcommand("all", "Run every stage with the published preset by default");
    add_common(all);
    add_references(all);
    entries.push_back({all, cmd_all});

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    for (const auto& entry : entries) {
        if (!entry.app->parsed()) continue;
        const std::string stage = entry.app->get_name();
        try {
            entry.run(opt);
            return 0;
        } catch (const UsageError& e) {
            std::cerr << "mbfts " << stage << ": " << e.what() << '\n';
            return 1;
        } catch (const Error& e) {
            std::cerr << "mbfts " << stage << ": " << e.what() << '\n';
            return 2;
        } catch (const std::exception& e) {
            std::cerr << "mbfts " << stage << ": " << e.what() << '\n';
            return 2;
        }
    }
    return 1;
}
