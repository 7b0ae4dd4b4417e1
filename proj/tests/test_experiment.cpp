#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <numeric>

#include <gfvfa/experiment.hpp>

using namespace gfvfa;
using Catch::Matchers::ContainsSubstring;
namespace fs = std::filesystem;

namespace {

std::vector<double> ranks(const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
        for (std::size_t t = i; t <= j; ++t) r[idx[t]] = 0.5 * static_cast<double>(i + j);
        i = j + 1;
    }
    return r;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
    const auto ra = ranks(a), rb = ranks(b);
    const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / ra.size();
    const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / rb.size();
    double num = 0.0, da = 0.0, db = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        num += (ra[i] - ma) * (rb[i] - mb);
        da += (ra[i] - ma) * (ra[i] - ma);
        db += (rb[i] - mb) * (rb[i] - mb);
    }
    return num / std::sqrt(da * db);
}

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.n = 64;
    c.trials = 4;
    c.graph_seed = 2;
    return c;
}

}  // namespace

TEST_CASE("config parsing", "[config]") {
    ExperimentConfig c;
    parse_config(c, R"(# comment
[experiment]
graph = "community"
n = 32
orders = [0.5, 0.7]
sigmas = 0:0.2:0.1
seed = 17   # trailing comment
mask = false
moment_form = published
outdir = "out dir # not a comment"
)");
    CHECK(c.graph == GraphSource::community);
    CHECK(c.n == 32);
    CHECK(c.orders == std::vector<double>{0.5, 0.7});
    CHECK(c.sigmas == std::vector<double>{0.0, 0.1, 0.2});
    CHECK(c.seed == 17);
    CHECK(!c.mask);
    CHECK(c.moment_form == MomentForm::published);
    CHECK(c.outdir == "out dir # not a comment");
    CHECK_THROWS_WITH(parse_config(c, "bogus = 1\n"), ContainsSubstring("unknown config key"));
    CHECK_THROWS_WITH(parse_config(c, "n 3\n"), ContainsSubstring("line 1"));
    CHECK_THROWS_AS(parse_config(c, "trials = 0\n"), ParseError);
    CHECK_THROWS_AS(parse_config(c, "seed = -1\n"), ParseError);
    CHECK_THROWS_AS(parse_config(c, "orders = 1:0:0.1\n"), ParseError);
}

TEST_CASE("order grid from a range", "[config]") {
    ExperimentConfig c;
    apply_config_value(c, "orders", "0.1:2.0:0.1");
    REQUIRE(c.orders.size() == 20);
    CHECK(c.orders[2] == 0.3);
    CHECK(c.orders.back() == 2.0);
    apply_config_value(c, "top-m", "5");
    CHECK(c.top_m == 5);
}

TEST_CASE("seed environment fallback", "[config]") {
    ExperimentConfig c;
    ::setenv("GFVFA_SEED", "99", 1);
    apply_seed_environment(c);
    CHECK(c.seed == 99);
    ::setenv("GFVFA_SEED", "nope", 1);
    CHECK_THROWS_AS(apply_seed_environment(c), ParseError);
    ::unsetenv("GFVFA_SEED");
}

TEST_CASE("config validation", "[config]") {
    ExperimentConfig c;
    c.sigmas = {-0.1};
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c = ExperimentConfig{};
    c.graph = GraphSource::edges;
    CHECK_THROWS_WITH(c.validate(), ContainsSubstring("graph_file"));
    c = ExperimentConfig{};
    c.dft = true;
    CHECK_THROWS_AS(prepare(c), InvalidArgument);
}

TEST_CASE("noise-free denoising is exact", "[denoise]") {
    ExperimentConfig c = small_config();
    c.sigmas = {0.0};
    c.orders = {0.7, 1.0};
    c.trials = 2;
    const SweepResult r = run_denoise(prepare(c));
    REQUIRE(r.rows.size() == 2 * 2 * 3);
    for (const auto& row : r.rows) {
        // round-off in the sqrt of the marginal keeps this short of the 300 dB cap
        CHECK(row.mse < 1e-10);
        CHECK(row.snr_db > 90.0);
    }
}

TEST_CASE("mean SNR falls as sigma rises", "[denoise]") {
    ExperimentConfig c = small_config();
    c.mask = false;
    c.sigmas = {0.1, 0.3, 0.6};
    c.trials = 20;
    const SweepResult r = run_denoise(prepare(c));
    std::vector<double> sigma, snr;
    for (const auto& row : r.rows)
        if (row.method == "gfed-f") {
            sigma.push_back(row.sigma);
            snr.push_back(row.snr_db);
        }
    REQUIRE(sigma.size() == 60);
    CHECK(spearman(sigma, snr) < 0.0);
    const auto summary = summarize(r);
    double previous = 1e9;
    for (const auto& s : summary)
        if (s.method == "gfed-f") {
            CHECK(s.mean_snr_db <= previous);
            previous = s.mean_snr_db;
        }
}

TEST_CASE("sweep output is deterministic and thread-count independent", "[denoise][determinism]") {
    ExperimentConfig c = small_config();
    c.orders = {0.5, 0.7};
    c.trials = 6;
    c.threads = 1;
    const std::string one = run_denoise(prepare(c)).csv();
    c.threads = 3;
    const std::string many = run_denoise(prepare(c)).csv();
    CHECK(one == many);
    CHECK(one.rfind(std::string(SweepResult::header), 0) == 0);
    c.seed = 1;
    CHECK(run_denoise(prepare(c)).csv() != one);
}

TEST_CASE("noise-free detection recovers the clean distribution", "[detect]") {
    ExperimentConfig c = small_config();
    c.sigmas = {0.0};
    c.trials = 2;
    const Workspace ws = prepare(c);
    const FrftOperator op = gfrft_matrix(ws.basis, 0.7);
    const FilterTransfer t = optimal_transfer(ws.signal.x, ws.basis, op, 0.0);
    const TrialOutcome o = run_trial(ws, op, t, 0.0, 0);
    const EnergyDistribution clean = gfed(ws.signal.x, op);
    CHECK((o.filtered.matrix - clean.matrix).cwiseAbs().maxCoeff() < 1e-10);
    const DetectReport report = run_detect(ws);
    const auto clean_peaks = top_peaks(frequency_marginal(clean).values, report.top_m);
    for (const auto& row : report.rows) {
        CHECK(row.peaks == clean_peaks);
        CHECK(row.entropy_filtered <= row.entropy_noisy + 1e-9);
    }
}

TEST_CASE("matched order detects at least as often as a mismatched one", "[detect]") {
    ExperimentConfig c = small_config();
    c.layout = "community";
    c.graph = GraphSource::community;
    c.sigmas = {0.4};
    c.trials = 30;
    c.orders = {0.6, 1.1};
    const DetectReport r = run_detect(prepare(c));
    REQUIRE(r.summary.size() == 2);
    CHECK(r.summary[0].hits >= r.summary[1].hits);
}

TEST_CASE("peak selection", "[detect]") {
    RealVector v(5);
    v << 1.0, 3.0, 3.0, 0.5, 2.0;
    CHECK(top_peaks(v, 2) == std::vector<Index>{2, 3});
    CHECK(top_peaks(v, 3) == std::vector<Index>{2, 3, 5});
    CHECK(contains_all({2, 3, 5}, {5, 2}));
    CHECK(!contains_all({2, 3}, {4}));
    CHECK_THROWS_AS(top_peaks(v, 0), InvalidArgument);
}

TEST_CASE("file signals and graphs", "[config][io]") {
    const fs::path dir = fs::temp_directory_path() / "gfvfa_test_experiment";
    fs::create_directories(dir);
    const Graph g = sensor_graph(10, 3, 4);
    io::write_text(dir / "g.edges", to_edge_list(g));
    io::write_text(dir / "data.csv", "t1,t2\n" + [] {
        std::string s;
        for (int i = 0; i < 10; ++i) s += std::to_string(i) + "," + std::to_string(i * i) + "\n";
        return s;
    }());
    ExperimentConfig c;
    c.graph = GraphSource::edges;
    c.graph_file = (dir / "g.edges").string();
    c.signal_file = (dir / "data.csv").string();
    c.signal_column = 2;
    c.trials = 2;
    const Workspace ws = prepare(c);
    CHECK(ws.graph.weights() == g.weights());
    CHECK(ws.signal.x(3) == Complex(9.0));
    CHECK(ws.signal.planted.empty());
    CHECK_THROWS_WITH(run_detect(ws), ContainsSubstring("planted"));
    CHECK_NOTHROW(run_denoise(ws));

    c.graph = GraphSource::sensor;
    c.n = 12;
    CHECK_THROWS_WITH(prepare(c), ContainsSubstring("dimension mismatch"));
}
