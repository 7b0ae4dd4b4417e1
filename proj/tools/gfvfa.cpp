// gfvfa: command-line front end for graph fractional vertex-frequency analysis.

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <gfvfa/gfvfa.hpp>

namespace fs = std::filesystem;
using namespace gfvfa;

namespace {

std::string dashed(std::string key) {
    std::replace(key.begin(), key.end(), '_', '-');
    return key;
}

/// Shared options: a config file plus one flag per config key.
struct CommonOptions {
    std::string config_file;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    std::optional<Index> cycle;

    void attach(CLI::App* app) {
        app->add_option("--config", config_file, "key = value configuration file")->check(CLI::ExistingFile);
        app->add_option("--cycle", cycle, "shortcut for --graph cycle --n N");
        for (const auto& key : config_keys())
            options[key] = app->add_option("--" + dashed(key), values[key], "config key '" + key + "'");
    }

    /// defaults < GFVFA_SEED < config file < flags
    [[nodiscard]] ExperimentConfig resolve() const {
        ExperimentConfig cfg;
        apply_seed_environment(cfg);
        if (!config_file.empty()) parse_config(cfg, io::read_text(config_file));
        if (cycle) {
            cfg.graph = GraphSource::cycle;
            cfg.n = *cycle;
        }
        for (const auto& key : config_keys())
            if (options.at(key)->count() > 0) apply_config_value(cfg, key, values.at(key));
        cfg.validate();
        return cfg;
    }
};

fs::path out_path(const ExperimentConfig& cfg, const std::string& name) { return fs::path(cfg.outdir) / name; }

double single_order(const ExperimentConfig& cfg, const std::optional<double>& a) { return a.value_or(cfg.orders.front()); }

/// Signal for the single-shot commands: an explicit CSV or the configured clean signal.
ComplexVector load_signal(const Workspace& ws, const std::string& path) {
    if (path.empty()) return ws.signal.x;
    ComplexVector x = io::read_complex_vector(path);
    require_same_size(ws.basis.size(), x.size(), "signal vs graph");
    return x;
}

void print_written(const fs::path& p) { std::cout << "wrote " << p.string() << "\n"; }

int cmd_graph(const CommonOptions& common) {
    const ExperimentConfig cfg = common.resolve();
    const Graph g = build_graph(cfg);
    const EigenBasis basis = build_basis(cfg, g);
    const auto edges = out_path(cfg, "graph.edges");
    io::write_text(edges, to_edge_list(g));
    print_written(edges);
    std::string lambda = "index,lambda\n";
    for (Index i = 0; i < basis.lambda.size(); ++i)
        lambda += std::to_string(i + 1) + "," + io::format_double(basis.lambda(i)) + "\n";
    const auto lp = out_path(cfg, "eigenvalues.csv");
    io::write_text(lp, lambda);
    print_written(lp);
    io::write_complex_matrix(out_path(cfg, "eigenvectors"), basis.u, "u");
    print_written(out_path(cfg, "eigenvectors.re.csv"));
    print_written(out_path(cfg, "eigenvectors.im.csv"));
    std::cout << "vertices " << g.size() << " edges " << g.edge_count() << " connected "
              << (is_connected(g) ? "yes" : "no") << "\n";
    return 0;
}

int cmd_chirp(const CommonOptions& common, Index k, const std::optional<double>& a_flag, const std::string& out) {
    const ExperimentConfig cfg = common.resolve();
    const double a = single_order(cfg, a_flag);
    require(a != 0.0, "a must be nonzero");
    const Graph g = build_graph(cfg);
    const EigenBasis basis = build_basis(cfg, g);
    const ChirpSignal c = chirp(basis, k, a);
    const fs::path p = out.empty() ? out_path(cfg, "chirp.csv") : fs::path(out);
    io::write_text(p, io::complex_vector_csv(c.values));
    print_written(p);
    return 0;
}

int cmd_distribution(const CommonOptions& common, const std::optional<double>& a_flag, const std::string& signal,
                     bool generalized) {
    const ExperimentConfig cfg = common.resolve();
    const double a = single_order(cfg, a_flag);
    const Workspace ws = prepare(cfg, signal.empty());
    const ComplexVector x = load_signal(ws, signal);
    const FrftOperator op = gfrft_matrix(ws.basis, a);
    const EnergyDistribution d = generalized ? gfgd(x, op, config_kernel(cfg, ws.basis)) : gfed(x, op);
    const std::string name = generalized ? "gfgd" : "gfed";
    io::write_distribution(out_path(cfg, name), d.matrix);
    for (const char* ext : {".re.csv", ".im.csv", ".abs.csv", ".pgm"}) print_written(out_path(cfg, name + ext));
    return 0;
}

int cmd_entropy(const CommonOptions& common, const std::optional<double>& a_flag, const std::string& signal,
                const std::string& distribution, bool quadratic) {
    const EntropyForm form = quadratic ? EntropyForm::quadratic : EntropyForm::linear;
    double value = 0.0;
    if (!distribution.empty()) {
        value = shannon_entropy(io::read_complex_matrix(distribution), form);
    } else {
        const ExperimentConfig cfg = common.resolve();
        const Workspace ws = prepare(cfg, signal.empty());
        const ComplexVector x = load_signal(ws, signal);
        const FrftOperator op = gfrft_matrix(ws.basis, single_order(cfg, a_flag));
        const EnergyDistribution d = cfg.kernel == "delta" ? gfed(x, op) : gfgd(x, op, config_kernel(cfg, ws.basis));
        value = shannon_entropy(d, form);
    }
    std::cout << io::format_double(value) << "\n";
    return 0;
}

int cmd_filter(const CommonOptions& common, const std::optional<double>& a_flag, std::size_t trial) {
    const ExperimentConfig cfg = common.resolve();
    const double a = single_order(cfg, a_flag);
    const double sigma = cfg.sigmas.front();
    const Workspace ws = prepare(cfg);
    const FrftOperator op = gfrft_matrix(ws.basis, a);
    const FilterTransfer t = optimal_transfer(ws.signal.x, ws.basis, op, sigma, cfg.epsilon, cfg.moment_form);
    const TrialOutcome o = run_trial(ws, op, t, sigma, trial);

    io::write_text(out_path(cfg, "clean.csv"), io::complex_vector_csv(ws.signal.x));
    io::write_text(out_path(cfg, "noisy.csv"), io::complex_vector_csv(o.y));
    io::write_text(out_path(cfg, "reconstructed.csv"), io::complex_vector_csv(o.reconstructed));
    io::write_distribution(out_path(cfg, "gfed_clean"), gfed(ws.signal.x, op).matrix);
    io::write_distribution(out_path(cfg, "gfed_noisy"), o.noisy.matrix);
    io::write_distribution(out_path(cfg, "gfed_filtered"), o.filtered.matrix);
    io::write_complex_matrix(out_path(cfg, "transfer_hat"), t.h_hat, "k");
    io::write_complex_matrix(out_path(cfg, "transfer_vertex"), t.h_vertex, "k");
    std::string report = "quantity,value\n";
    report += "mse," + io::format_double(o.filtered_metrics.mse) + "\n";
    report += "snr_db," + io::format_double(o.filtered_metrics.snr_db) + "\n";
    report += "input_snr_db," + io::format_double(o.noisy_metrics.snr_db) + "\n";
    report += "entropy_noisy," + io::format_double(shannon_entropy(o.noisy)) + "\n";
    report += "entropy_filtered," + io::format_double(shannon_entropy(o.filtered)) + "\n";
    io::write_text(out_path(cfg, "filter.csv"), report);
    std::cout << report;
    return 0;
}

int cmd_denoise(const CommonOptions& common) {
    const ExperimentConfig cfg = common.resolve();
    const SweepResult r = run_denoise(prepare(cfg));
    const auto p = out_path(cfg, "denoise.csv");
    io::write_text(p, r.csv());
    print_written(p);
    return 0;
}

int cmd_sweep(const CommonOptions& common) {
    const ExperimentConfig cfg = common.resolve();
    const SweepResult r = run_denoise(prepare(cfg));
    const auto summary = summarize(r);
    const auto trials = out_path(cfg, "sweep_trials.csv");
    const auto p = out_path(cfg, "sweep.csv");
    io::write_text(trials, r.csv());
    io::write_text(p, summary_csv(summary));
    print_written(trials);
    print_written(p);
    return 0;
}

int cmd_detect(const CommonOptions& common) {
    const ExperimentConfig cfg = common.resolve();
    const Workspace ws = prepare(cfg);
    const DetectReport report = run_detect(ws);
    io::write_text(out_path(cfg, "detect.csv"), report.csv());
    io::write_text(out_path(cfg, "detect_summary.csv"), report.summary_csv());

    // heatmaps for trial 0 of the first (a, sigma) pair
    const double a = cfg.orders.front();
    const double sigma = cfg.sigmas.front();
    const FrftOperator op = gfrft_matrix(ws.basis, a);
    const FilterTransfer t = optimal_transfer(ws.signal.x, ws.basis, op, sigma, cfg.epsilon, cfg.moment_form);
    const TrialOutcome o = run_trial(ws, op, t, sigma, 0);
    io::write_distribution(out_path(cfg, "detect_clean"), gfed(ws.signal.x, op).matrix);
    io::write_distribution(out_path(cfg, "detect_noisy"), o.noisy.matrix);
    io::write_distribution(out_path(cfg, "detect_filtered"), o.filtered.matrix);
    std::cout << report.summary_csv();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph fractional vertex-frequency analysis"};
    app.require_subcommand(1);

    std::optional<double> a;
    Index k = 1;
    std::string signal, distribution, out;
    bool quadratic = false;
    std::size_t trial = 0;

    auto* graph = app.add_subcommand("graph", "build a graph; write edges and eigenbasis");
    auto* chirp_cmd = app.add_subcommand("chirp", "write the graph chirp u_k^a");
    auto* gfed_cmd = app.add_subcommand("gfed", "vertex-fractional-frequency energy distribution");
    auto* gfgd_cmd = app.add_subcommand("gfgd", "kernel-generalized distribution");
    auto* entropy = app.add_subcommand("entropy", "Shannon entropy of a distribution");
    auto* filter = app.add_subcommand("filter", "one noisy realization through the optimal filter");
    auto* denoise = app.add_subcommand("denoise", "per-trial denoising scores");
    auto* detect = app.add_subcommand("detect", "planted chirp detection from filtered marginals");
    auto* sweep = app.add_subcommand("sweep", "denoising means per (a, sigma)");
    const std::array subs{graph, chirp_cmd, gfed_cmd, gfgd_cmd, entropy, filter, denoise, detect, sweep};
    // one option set per subcommand so count() reflects the subcommand that ran
    std::array<CommonOptions, subs.size()> common;
    for (std::size_t i = 0; i < subs.size(); ++i) common[i].attach(subs[i]);

    chirp_cmd->add_option("--k", k, "initial frequency (1-based)")->required();
    for (auto* sub : {chirp_cmd, gfed_cmd, gfgd_cmd, entropy, filter}) sub->add_option("--a", a, "fractional order");
    chirp_cmd->add_option("--out", out, "output CSV (default <outdir>/chirp.csv)");
    for (auto* sub : {gfed_cmd, gfgd_cmd, entropy})
        sub->add_option("--signal", signal, "signal CSV (real,imag or one column)")->check(CLI::ExistingFile);
    entropy->add_option("--distribution", distribution, "stem of <stem>.re.csv/<stem>.im.csv");
    entropy->add_flag("--quadratic", quadratic, "use |D|^2 weights instead of |D|");
    filter->add_option("--trial", trial, "noise realization index");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.get_exit_code() ? e.get_exit_code() : 2;
    }

    try {
        if (graph->parsed()) return cmd_graph(common[0]);
        if (chirp_cmd->parsed()) return cmd_chirp(common[1], k, a, out);
        if (gfed_cmd->parsed()) return cmd_distribution(common[2], a, signal, false);
        if (gfgd_cmd->parsed()) return cmd_distribution(common[3], a, signal, true);
        if (entropy->parsed()) return cmd_entropy(common[4], a, signal, distribution, quadratic);
        if (filter->parsed()) return cmd_filter(common[5], a, trial);
        if (denoise->parsed()) return cmd_denoise(common[6]);
        if (detect->parsed()) return cmd_detect(common[7]);
        if (sweep->parsed()) return cmd_sweep(common[8]);
    } catch (const std::exception& e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        std::cerr << "error: " << msg << "\n";
        return 1;
    }
    return 1;
}
