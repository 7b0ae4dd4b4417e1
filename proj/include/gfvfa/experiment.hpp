#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iterator>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "chirp.hpp"
#include "filtering.hpp"
#include "io.hpp"

namespace gfvfa {

enum class GraphSource { sensor, community, cycle, points, edges };

inline std::string to_string(GraphSource s) {
    switch (s) {
        case GraphSource::sensor: return "sensor";
        case GraphSource::community: return "community";
        case GraphSource::cycle: return "cycle";
        case GraphSource::points: return "points";
        case GraphSource::edges: return "edges";
    }
    return "?";
}

inline GraphSource parse_graph_source(std::string_view s) {
    if (s == "sensor") return GraphSource::sensor;
    if (s == "community") return GraphSource::community;
    if (s == "cycle") return GraphSource::cycle;
    if (s == "points") return GraphSource::points;
    if (s == "edges") return GraphSource::edges;
    throw InvalidArgument("unknown graph source '" + std::string(s) + "'");
}

struct ExperimentConfig {
    GraphSource graph = GraphSource::sensor;
    /// Coordinates CSV (points) or edge list (edges).
    std::string graph_file;
    Index n = 64;
    Index knn = 6;
    std::uint64_t graph_seed = 1;
    ShiftKind shift = ShiftKind::laplacian;
    /// Use the DFT eigenbasis on cycle graphs.
    bool dft = false;

    /// Planted signal: "sensor" or "community" multichirp layouts, ignored when signal_file is set.
    std::string layout = "sensor";
    /// Overrides the layout's synthesis rate.
    std::optional<double> rate;
    /// false: every planted chirp over all vertices instead of on its segment.
    bool mask = true;
    std::string signal_file;
    Index signal_column = 1;

    std::vector<double> orders{0.7};
    std::vector<double> sigmas{0.3};
    std::uint64_t seed = 0;
    std::size_t trials = 10;
    NoiseKind noise = NoiseKind::complex_circular;

    std::string kernel = "delta";
    double gamma = 1.0;
    std::optional<double> epsilon;
    MomentForm moment_form = MomentForm::exact;
    bool mse_raw = false;
    /// Peaks reported by detect; 0 means the number of planted chirps.
    Index top_m = 0;
    unsigned threads = 0;
    std::string outdir = "out";

    void validate() const {
        require(n >= 3, "n must be at least 3");
        require(!orders.empty(), "at least one order is required");
        for (double a : orders) require(std::isfinite(a), "orders must be finite");
        require(!sigmas.empty(), "at least one sigma is required");
        for (double s : sigmas) require(std::isfinite(s) && s >= 0.0, "sigma must be non-negative");
        require(trials >= 1, "trials must be at least 1");
        require(gamma > 0.0, "gamma must be positive");
        if (epsilon) require(*epsilon > 0.0, "epsilon must be positive");
        require(signal_column >= 1, "signal column is 1-based");
        require(kernel == "delta" || kernel == "cw", "kernel must be 'delta' or 'cw'");
        require(layout == "sensor" || layout == "community", "layout must be 'sensor' or 'community'");
        if (graph == GraphSource::points || graph == GraphSource::edges)
            require(!graph_file.empty(), "graph source '" + to_string(graph) + "' needs graph_file");
    }
};

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline std::string unquote(std::string s) {
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) return s.substr(1, s.size() - 2);
    return s;
}

inline double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    if (!io::detail::parse_number(v, out)) throw ParseError(key + ": expected a number, got '" + v + "'");
    return out;
}

inline long long to_integer(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const long long out = std::stoll(v, &used);
        if (used == v.size()) return out;
    } catch (const std::logic_error&) {
    }
    throw ParseError(key + ": expected an integer, got '" + v + "'");
}

inline std::uint64_t to_unsigned(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        if (!v.empty() && v.front() != '-') {
            const unsigned long long out = std::stoull(v, &used, 0);
            if (used == v.size()) return out;
        }
    } catch (const std::logic_error&) {
    }
    throw ParseError(key + ": expected a non-negative integer, got '" + v + "'");
}

inline bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ParseError(key + ": expected true or false, got '" + v + "'");
}

/// "[0.1, 0.2]", "0.1,0.2" or an inclusive range "start:stop:step".
inline std::vector<double> to_list(const std::string& key, std::string v) {
    v = trim(v);
    if (!v.empty() && v.front() == '[') {
        if (v.back() != ']') throw ParseError(key + ": unterminated list");
        v = v.substr(1, v.size() - 2);
    }
    std::vector<double> out;
    if (v.find(':') != std::string::npos) {
        std::vector<double> parts;
        std::size_t pos = 0;
        while (true) {
            const auto next = v.find(':', pos);
            parts.push_back(to_double(key, trim(v.substr(pos, next - pos))));
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0])
            throw ParseError(key + ": range must be start:stop:step with step > 0");
        const auto count = static_cast<long long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
        // grid points are rounded to 12 decimals so 0.1:2:0.1 yields 0.3, not 0.30000000000000004
        for (long long i = 0; i <= count; ++i) out.push_back(std::round((parts[0] + i * parts[2]) * 1e12) / 1e12);
        return out;
    }
    std::size_t pos = 0;
    while (pos <= v.size()) {
        const auto next = v.find(',', pos);
        const std::string item = trim(v.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
        if (!item.empty()) out.push_back(to_double(key, item));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (out.empty()) throw ParseError(key + ": empty list");
    return out;
}

}  // namespace detail

/// Keys accepted by config files and, with '-' for '_', by command-line flags.
inline const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{
        "graph",  "graph_file", "n",      "knn",     "graph_seed", "shift",       "dft",     "layout",
        "rate",   "mask",       "signal_file", "signal_column", "orders", "sigmas", "seed",   "trials",
        "noise",  "kernel",     "gamma",  "epsilon", "moment_form", "mse_raw",    "top_m",   "threads",
        "outdir"};
    return keys;
}

inline void apply_config_value(ExperimentConfig& cfg, const std::string& raw_key, const std::string& raw_value) {
    std::string key = raw_key;
    std::replace(key.begin(), key.end(), '-', '_');
    const std::string v = detail::unquote(detail::trim(raw_value));
    using namespace detail;
    if (key == "graph") cfg.graph = parse_graph_source(v);
    else if (key == "graph_file") cfg.graph_file = v;
    else if (key == "n") cfg.n = to_integer(key, v);
    else if (key == "knn") cfg.knn = to_integer(key, v);
    else if (key == "graph_seed") cfg.graph_seed = to_unsigned(key, v);
    else if (key == "shift") cfg.shift = parse_shift_kind(v);
    else if (key == "dft") cfg.dft = to_bool(key, v);
    else if (key == "layout") cfg.layout = v;
    else if (key == "rate") cfg.rate = to_double(key, v);
    else if (key == "mask") cfg.mask = to_bool(key, v);
    else if (key == "signal_file") cfg.signal_file = v;
    else if (key == "signal_column") cfg.signal_column = to_integer(key, v);
    else if (key == "orders") cfg.orders = to_list(key, v);
    else if (key == "sigmas") cfg.sigmas = to_list(key, v);
    else if (key == "seed") cfg.seed = to_unsigned(key, v);
    else if (key == "trials") {
        const long long t = to_integer(key, v);
        if (t < 1) throw InvalidArgument("trials must be at least 1");
        cfg.trials = static_cast<std::size_t>(t);
    } else if (key == "noise") {
        if (v == "complex") cfg.noise = NoiseKind::complex_circular;
        else if (v == "real") cfg.noise = NoiseKind::real_gaussian;
        else throw ParseError("noise: expected 'complex' or 'real'");
    } else if (key == "kernel") cfg.kernel = v;
    else if (key == "gamma") cfg.gamma = to_double(key, v);
    else if (key == "epsilon") cfg.epsilon = to_double(key, v);
    else if (key == "moment_form") {
        if (v == "exact") cfg.moment_form = MomentForm::exact;
        else if (v == "published") cfg.moment_form = MomentForm::published;
        else throw ParseError("moment_form: expected 'exact' or 'published'");
    } else if (key == "mse_raw") cfg.mse_raw = to_bool(key, v);
    else if (key == "top_m") cfg.top_m = to_integer(key, v);
    else if (key == "threads") cfg.threads = static_cast<unsigned>(to_unsigned(key, v));
    else if (key == "outdir") cfg.outdir = v;
    else throw ParseError("unknown config key '" + raw_key + "'");
}

/// key = value lines; '#' comments and [section] headers are ignored.
inline void parse_config(ExperimentConfig& cfg, std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        // strip comments that are not inside quotes
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') quoted = !quoted;
            if (line[i] == '#' && !quoted) {
                line.erase(i);
                break;
            }
        }
        const std::string t = detail::trim(line);
        if (t.empty() || t.front() == '[') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ParseError("config line " + std::to_string(line_no) + ": expected key = value");
        try {
            apply_config_value(cfg, detail::trim(t.substr(0, eq)), t.substr(eq + 1));
        } catch (const std::exception& e) {
            throw ParseError("config line " + std::to_string(line_no) + ": " + e.what());
        }
    }
}

/// GFVFA_SEED, when set, replaces the default seed; explicit settings win.
inline void apply_seed_environment(ExperimentConfig& cfg) {
    if (const char* env = std::getenv("GFVFA_SEED"); env && *env) cfg.seed = detail::to_unsigned("GFVFA_SEED", env);
}

inline Graph build_graph(const ExperimentConfig& cfg) {
    switch (cfg.graph) {
        case GraphSource::sensor: return sensor_graph(cfg.n, cfg.graph_seed, cfg.knn, cfg.shift);
        case GraphSource::community: return community_graph(cfg.n, cfg.graph_seed, cfg.knn, cfg.shift);
        case GraphSource::cycle: return cycle_graph(cfg.n, cfg.shift);
        case GraphSource::points: return knn_graph(io::read_csv_matrix(cfg.graph_file), cfg.knn, std::nullopt, cfg.shift);
        case GraphSource::edges: {
            const std::string text = io::read_text(cfg.graph_file);
            return from_edge_list(text, edge_list_vertex_hint(text), cfg.shift);
        }
    }
    throw InvalidArgument("unknown graph source");
}

inline EigenBasis build_basis(const ExperimentConfig& cfg, const Graph& g) {
    if (cfg.dft) {
        require(cfg.graph == GraphSource::cycle, "the DFT basis applies to cycle graphs only");
        return dft_basis(g.size(), cfg.shift);
    }
    return eig_decompose(g);
}

inline ChirpLayout config_layout(const ExperimentConfig& cfg) {
    ChirpLayout layout = cfg.layout == "community" ? community_example_layout() : sensor_example_layout();
    if (cfg.rate) layout.rate = *cfg.rate;
    if (!cfg.mask) layout = layout.unmasked();
    return layout;
}

struct CleanSignal {
    ComplexVector x;
    /// 1-based initial frequencies of the planted chirps; empty for file signals.
    std::vector<Index> planted;
};

inline CleanSignal clean_signal(const ExperimentConfig& cfg, const EigenBasis& basis) {
    if (!cfg.signal_file.empty()) {
        ComplexVector x = io::ingest_matrix_csv(cfg.signal_file, cfg.signal_column).values;
        require_same_size(basis.size(), x.size(), "signal file vs graph");
        return {std::move(x), {}};
    }
    const ChirpLayout layout = config_layout(cfg);
    for (const auto& s : layout.segments)
        require(s.last <= basis.size(), "layout needs at least " + std::to_string(s.last) + " vertices");
    for (Index k : layout.extras) require(k <= basis.size(), "layout needs at least " + std::to_string(k) + " vertices");
    return {compose_multichirp(basis, layout.rate, layout.segments, layout.extras), layout.planted()};
}

inline SpectralKernel config_kernel(const ExperimentConfig& cfg, const EigenBasis& basis) {
    if (cfg.kernel == "cw") return choi_williams_kernel(basis.lambda, cfg.gamma);
    return delta_kernel();
}

/// Everything a run needs that does not depend on the order or noise level.
struct Workspace {
    ExperimentConfig cfg;
    Graph graph;
    EigenBasis basis;
    CleanSignal signal;
};

/// `with_signal = false` skips the clean signal, for callers that bring their own.
inline Workspace prepare(const ExperimentConfig& cfg, bool with_signal = true) {
    cfg.validate();
    Graph g = build_graph(cfg);
    EigenBasis basis = build_basis(cfg, g);
    CleanSignal s = with_signal ? clean_signal(cfg, basis) : CleanSignal{};
    return {cfg, std::move(g), std::move(basis), std::move(s)};
}

/// Fixed-precision text for configuration values such as a and sigma.
inline std::string format_param(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

/// One noisy realization: noisy and filtered distributions plus scores.
///
/// Reconstruction from the vertex marginal recovers |x(n)| only, so every
/// method is scored on magnitudes: |x~| against |x|.
struct TrialOutcome {
    EnergyDistribution noisy;
    EnergyDistribution filtered;
    ComplexVector y;
    ComplexVector reconstructed;
    ComplexVector wiener;
    Metrics filtered_metrics;
    Metrics wiener_metrics;
    Metrics noisy_metrics;
};

inline ComplexVector magnitudes(const ComplexVector& v) { return v.cwiseAbs().cast<Complex>(); }

inline TrialOutcome run_trial(const Workspace& ws, const FrftOperator& op, const FilterTransfer& transfer, double sigma,
                              std::size_t trial) {
    const NoiseModel noise{sigma, ws.cfg.noise, ws.cfg.seed};
    const ComplexVector& x = ws.signal.x;
    TrialOutcome out;
    out.y = x + noise.draw(x.size(), trial);
    out.noisy = gfed(out.y, op);
    out.filtered = apply_filter(out.noisy, transfer, ws.basis);
    out.reconstructed = reconstruct_from_marginal(out.filtered).signal;
    out.wiener = wiener_baseline(x, out.y, sigma);
    const ComplexVector target = magnitudes(x);
    out.filtered_metrics = metrics(target, out.reconstructed, ws.cfg.mse_raw);
    out.wiener_metrics = metrics(target, magnitudes(out.wiener), ws.cfg.mse_raw);
    out.noisy_metrics = metrics(target, magnitudes(out.y), ws.cfg.mse_raw);
    return out;
}

struct SweepRow {
    std::string method;
    double a = 0.0;
    double sigma = 0.0;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    double mse = 0.0;
    double snr_db = 0.0;
    double entropy = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;

    static constexpr std::string_view header = "method,a,sigma,trial,seed,mse,snr_db,entropy";

    [[nodiscard]] std::string csv() const {
        std::string out(header);
        out += '\n';
        for (const auto& r : rows)
            out += r.method + "," + format_param(r.a) + "," + format_param(r.sigma) + "," + std::to_string(r.trial) + "," +
                   std::to_string(r.seed) + "," + io::format_double(r.mse) + "," + io::format_double(r.snr_db) + "," +
                   io::format_double(r.entropy) + "\n";
        return out;
    }
};

/// GFED filter, ideal Wiener and unfiltered rows for every (a, sigma, trial).
inline SweepResult run_denoise(const Workspace& ws) {
    const auto& cfg = ws.cfg;
    SweepResult result;
    for (double a : cfg.orders) {
        const FrftOperator op = gfrft_matrix(ws.basis, a);
        const double clean_entropy = shannon_entropy(gfed(ws.signal.x, op));
        for (double sigma : cfg.sigmas) {
            const FilterTransfer transfer = optimal_transfer(ws.signal.x, ws.basis, op, sigma, cfg.epsilon, cfg.moment_form);
            std::vector<std::array<SweepRow, 3>> rows(cfg.trials);
            parallel_for(
                cfg.trials,
                [&](std::size_t t) {
                    const TrialOutcome o = run_trial(ws, op, transfer, sigma, t);
                    const std::uint64_t s = derive_seed(cfg.seed, t);
                    // the Wiener output is a multiple of x, so its GFED entropy is that of x
                    rows[t] = {SweepRow{"gfed-f", a, sigma, t, s, o.filtered_metrics.mse, o.filtered_metrics.snr_db,
                                        shannon_entropy(o.filtered)},
                               SweepRow{"wiener", a, sigma, t, s, o.wiener_metrics.mse, o.wiener_metrics.snr_db,
                                        o.wiener.squaredNorm() > 0.0 ? clean_entropy : 0.0},
                               SweepRow{"noisy", a, sigma, t, s, o.noisy_metrics.mse, o.noisy_metrics.snr_db,
                                        shannon_entropy(o.noisy)}};
                },
                cfg.threads);
            for (const auto& r : rows) result.rows.insert(result.rows.end(), r.begin(), r.end());
        }
    }
    return result;
}

struct SweepSummaryRow {
    std::string method;
    double a = 0.0;
    double sigma = 0.0;
    std::size_t trials = 0;
    double mean_mse = 0.0;
    double mean_snr_db = 0.0;
    double mean_entropy = 0.0;
};

/// Per-(method, a, sigma) means, in the row order of the sweep.
inline std::vector<SweepSummaryRow> summarize(const SweepResult& r) {
    std::vector<SweepSummaryRow> out;
    for (const auto& row : r.rows) {
        auto it = std::find_if(out.begin(), out.end(), [&](const SweepSummaryRow& s) {
            return s.method == row.method && s.a == row.a && s.sigma == row.sigma;
        });
        if (it == out.end()) {
            out.push_back({row.method, row.a, row.sigma, 0, 0.0, 0.0, 0.0});
            it = std::prev(out.end());
        }
        ++it->trials;
        it->mean_mse += row.mse;
        it->mean_snr_db += row.snr_db;
        it->mean_entropy += row.entropy;
    }
    for (auto& s : out) {
        const double m = static_cast<double>(s.trials);
        s.mean_mse /= m;
        s.mean_snr_db /= m;
        s.mean_entropy /= m;
    }
    return out;
}

inline std::string summary_csv(const std::vector<SweepSummaryRow>& rows) {
    std::string out = "method,a,sigma,trials,mean_mse,mean_snr_db,mean_entropy\n";
    for (const auto& s : rows)
        out += s.method + "," + format_param(s.a) + "," + format_param(s.sigma) + "," + std::to_string(s.trials) + "," +
               io::format_double(s.mean_mse) + "," + io::format_double(s.mean_snr_db) + "," +
               io::format_double(s.mean_entropy) + "\n";
    return out;
}

/// 1-based indices of the m largest entries; equal values go to the lower index.
inline std::vector<Index> top_peaks(const RealVector& values, Index m) {
    require(m >= 1 && m <= values.size(), "peak count out of range");
    std::vector<Index> order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) { return values(i) > values(j); });
    std::vector<Index> out;
    for (Index i = 0; i < m; ++i) out.push_back(order[static_cast<std::size_t>(i)] + 1);
    return out;
}

inline bool contains_all(const std::vector<Index>& peaks, const std::vector<Index>& planted) {
    return std::all_of(planted.begin(), planted.end(),
                       [&](Index k) { return std::find(peaks.begin(), peaks.end(), k) != peaks.end(); });
}

struct DetectRow {
    double a = 0.0;
    double sigma = 0.0;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::vector<Index> peaks;
    bool hit = false;
    double entropy_noisy = 0.0;
    double entropy_filtered = 0.0;
};

struct DetectSummary {
    double a = 0.0;
    double sigma = 0.0;
    std::size_t trials = 0;
    std::size_t hits = 0;
    std::size_t entropy_lower = 0;
};

struct DetectReport {
    std::vector<Index> planted;
    Index top_m = 0;
    std::vector<DetectRow> rows;
    std::vector<DetectSummary> summary;

    [[nodiscard]] std::string csv() const {
        std::string out = "a,sigma,trial,seed,peaks,hit,entropy_noisy,entropy_filtered\n";
        for (const auto& r : rows) {
            std::string peaks;
            for (Index k : r.peaks) peaks += (peaks.empty() ? "" : " ") + std::to_string(k);
            out += format_param(r.a) + "," + format_param(r.sigma) + "," + std::to_string(r.trial) + "," +
                   std::to_string(r.seed) + "," + peaks + "," + (r.hit ? "1" : "0") + "," +
                   io::format_double(r.entropy_noisy) + "," + io::format_double(r.entropy_filtered) + "\n";
        }
        return out;
    }

    [[nodiscard]] std::string summary_csv() const {
        std::string planted_text;
        for (Index k : planted) planted_text += (planted_text.empty() ? "" : " ") + std::to_string(k);
        std::string out = "a,sigma,trials,planted,top_m,hits,detection_rate,entropy_lower,entropy_lower_rate\n";
        for (const auto& s : summary) {
            const double t = static_cast<double>(s.trials);
            out += format_param(s.a) + "," + format_param(s.sigma) + "," + std::to_string(s.trials) + "," + planted_text +
                   "," + std::to_string(top_m) + "," + std::to_string(s.hits) + "," +
                   io::format_double(static_cast<double>(s.hits) / t) + "," + std::to_string(s.entropy_lower) + "," +
                   io::format_double(static_cast<double>(s.entropy_lower) / t) + "\n";
        }
        return out;
    }
};

/// Filters the noisy GFED and checks that the planted initial frequencies are
/// among the top-M peaks of the filtered frequency marginal.
inline DetectReport run_detect(const Workspace& ws) {
    const auto& cfg = ws.cfg;
    require(!ws.signal.planted.empty(), "detection needs a planted multichirp layout, not a signal file");
    DetectReport report;
    report.planted = ws.signal.planted;
    report.top_m = cfg.top_m > 0 ? cfg.top_m : static_cast<Index>(report.planted.size());
    require(report.top_m <= ws.basis.size(), "top_m exceeds the number of vertices");
    for (double a : cfg.orders) {
        require(a != 0.0, "a must be nonzero");
        const FrftOperator op = gfrft_matrix(ws.basis, a);
        for (double sigma : cfg.sigmas) {
            const FilterTransfer transfer = optimal_transfer(ws.signal.x, ws.basis, op, sigma, cfg.epsilon, cfg.moment_form);
            std::vector<DetectRow> rows(cfg.trials);
            parallel_for(
                cfg.trials,
                [&](std::size_t t) {
                    const TrialOutcome o = run_trial(ws, op, transfer, sigma, t);
                    DetectRow r;
                    r.a = a;
                    r.sigma = sigma;
                    r.trial = t;
                    r.seed = derive_seed(cfg.seed, t);
                    r.peaks = top_peaks(frequency_marginal(o.filtered).values, report.top_m);
                    r.hit = contains_all(r.peaks, report.planted);
                    r.entropy_noisy = shannon_entropy(o.noisy);
                    r.entropy_filtered = shannon_entropy(o.filtered);
                    rows[t] = std::move(r);
                },
                cfg.threads);
            DetectSummary s{a, sigma, cfg.trials, 0, 0};
            for (const auto& r : rows) {
                s.hits += r.hit ? 1 : 0;
                s.entropy_lower += r.entropy_filtered < r.entropy_noisy ? 1 : 0;
            }
            report.summary.push_back(s);
            report.rows.insert(report.rows.end(), rows.begin(), rows.end());
        }
    }
    return report;
}

}  // namespace gfvfa
