#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "subvc/estimator.hpp"
#include "subvc/generators.hpp"
#include "subvc/rng.hpp"
#include "subvc/verify.hpp"

namespace {

using namespace subvc;

std::size_t worker_count(std::size_t jobs) {
    std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
    if (const char* cap = std::getenv("SUBLINEAR_VC_THREADS")) {
        const long v = std::atol(cap);
        if (v > 0) threads = static_cast<std::size_t>(v);
    }
    return std::min(threads, std::max<std::size_t>(1, jobs));
}

/// Runs fn(i) for i in [0, jobs) on a small pool; results land in order.
template <typename Fn>
auto run_pool(std::size_t jobs, Fn fn) {
    using Result = decltype(fn(std::size_t(0)));
    std::vector<Result> results(jobs);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs) return;
            results[i] = fn(i);
        }
    };
    std::vector<std::thread> pool;
    const std::size_t count = worker_count(jobs);
    for (std::size_t t = 1; t < count; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return results;
}

MultiGraph load_input(const std::string& input, const std::string& gen, bool need_pair) {
    MultiGraph g;
    if (!input.empty()) {
        std::ifstream in(input);
        if (!in) throw input_error("cannot open input file: " + input);
        g = MultiGraph::parse(in);
    } else {
        g = generate(GenSpec::parse(gen));
    }
    if (need_pair) g.build_pair_index();
    return g;
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw input_error("cannot open output file: " + path);
    out << text;
}

int cmd_estimate(const std::string& input, const std::string& gen, double eps,
                 const std::string& mode_name, std::uint64_t seed, std::uint32_t trials,
                 std::uint64_t samples, const std::string& out_path, const std::string& format) {
    const auto mode = transform_mode_from(mode_name);
    if (!mode) throw config_error("unknown mode: " + mode_name);
    const std::string source = gen.empty() ? "input" : GenSpec::parse(gen).family;
    MultiGraph g = load_input(input, gen, *mode == TransformMode::dense);

    EstimateConfig cfg;
    cfg.epsilon = eps;
    cfg.mode = *mode;
    cfg.trials = trials;
    if (samples > 0) cfg.sample_override = samples;

    auto reports = run_pool(trials, [&](std::size_t t) {
        EstimateConfig c = cfg;
        c.seed = trials == 1 ? seed : RngStream::derive(seed, t);
        return estimate_vc(g, c);
    });

    std::ostringstream body;
    if (format == "json") {
        for (const auto& r : reports) body << r.to_json() << "\n";
    } else {
        body << EstimateReport::csv_header() << "\n";
        for (const auto& r : reports) body << r.to_csv_row(source, r.n, 0) << "\n";
    }

    if (trials > 1) {
        std::vector<double> est;
        double mean_q = 0;
        for (const auto& r : reports) {
            est.push_back(r.estimate);
            mean_q += static_cast<double>(r.queries.total());
        }
        std::sort(est.begin(), est.end());
        const double median =
            est.size() % 2 ? est[est.size() / 2] : 0.5 * (est[est.size() / 2 - 1] + est[est.size() / 2]);
        body << "# summary: trials=" << trials << " median_estimate=" << median
             << " mean_queries=" << mean_q / static_cast<double>(trials) << "\n";
    }
    write_out(out_path, body.str());
    return 0;
}

int cmd_bench(const std::string& family, const std::vector<std::size_t>& n_list,
              const std::vector<std::size_t>& d_list, double eps, const std::string& mode_name,
              std::uint64_t seed, std::uint32_t trials, const std::string& out_path) {
    const auto mode = transform_mode_from(mode_name);
    if (!mode) throw config_error("unknown mode: " + mode_name);
    if (n_list.empty() || d_list.empty()) throw config_error("empty sweep list");
    for (std::size_t n : n_list)
        if (n == 0) throw config_error("sweep needs n >= 1");
    for (std::size_t d : d_list)
        if (d == 0) throw config_error("sweep needs d >= 1");

    struct Cell {
        std::size_t n, d;
        std::uint64_t trial;
    };
    std::vector<Cell> cells;
    for (std::size_t n : n_list)
        for (std::size_t d : d_list)
            for (std::uint64_t t = 0; t < trials; ++t) cells.push_back({n, d, t});

    auto rows = run_pool(cells.size(), [&](std::size_t i) {
        const Cell& c = cells[i];
        GenSpec spec;
        spec.family = family;
        spec.n = c.n;
        spec.d = c.d;
        spec.p = family == "gnp" ? static_cast<double>(c.d) / static_cast<double>(c.n) : 0.0;
        spec.seed = RngStream::derive(seed, i);
        spec.simple = family == "regular";
        MultiGraph g = generate(spec);
        if (*mode == TransformMode::dense) g.build_pair_index();

        EstimateConfig cfg;
        cfg.epsilon = eps;
        cfg.mode = *mode;
        cfg.seed = RngStream::derive(seed ^ 0xBE7C4, i);
        const EstimateReport rep = estimate_vc(g, cfg);
        return rep.to_csv_row(family, c.n, c.d);
    });

    std::ostringstream body;
    body << EstimateReport::csv_header() << "\n";
    for (const auto& r : rows) body << r << "\n";
    write_out(out_path, body.str());
    return 0;
}

int cmd_verify(const std::string& level_name) {
    verify::Level level;
    if (level_name == "quick")
        level = verify::Level::quick;
    else if (level_name == "full")
        level = verify::Level::full;
    else
        throw config_error("unknown verify level: " + level_name);
    const auto results = verify::run_all(level, std::cout);
    for (const auto& r : results)
        if (!r.pass) return 1;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sublinear minimum-vertex-cover size estimation"};
    app.require_subcommand(1);

    std::string input, gen, mode = "max-deg", out_path, format = "json";
    double eps = 0.0;
    std::uint64_t seed = 1, samples = 0;
    std::uint32_t trials = 1;

    auto* est = app.add_subcommand("estimate", "Run the (2,eps) cover-size estimator");
    auto* in_opt = est->add_option("--input", input, "Edge-list file (header 'n m', lines 'u v')");
    auto* gen_opt = est->add_option("--gen", gen, "Generator spec, e.g. regular:n=1000,d=10,seed=7");
    in_opt->excludes(gen_opt);
    est->add_option("--eps", eps, "Additive parameter in (0,1)")->required();
    est->add_option("--mode", mode, "plain | max-deg | avg-deg | dense")->capture_default_str();
    est->add_option("--seed", seed, "Base seed")->capture_default_str();
    est->add_option("--trials", trials, "Independent trials")->capture_default_str();
    est->add_option("--samples", samples, "Override the sample count");
    est->add_option("--out", out_path, "Output path (default stdout)");
    est->add_option("--format", format, "json | csv")->capture_default_str();

    std::string family = "regular";
    std::vector<std::size_t> n_list, d_list;
    auto* bench = app.add_subcommand("bench", "Sweep (n, d) cells and emit one CSV row per trial");
    bench->add_option("--family", family, "Generator family")->capture_default_str();
    bench->add_option("--n", n_list, "Vertex counts")->required()->delimiter(',');
    bench->add_option("--d", d_list, "Degrees")->required()->delimiter(',');
    bench->add_option("--eps", eps, "Additive parameter in (0,1)")->required();
    bench->add_option("--mode", mode, "plain | max-deg | avg-deg | dense")->capture_default_str();
    bench->add_option("--seed", seed, "Base seed")->capture_default_str();
    bench->add_option("--trials", trials, "Trials per cell")->capture_default_str();
    bench->add_option("--out", out_path, "Output path (default stdout)");

    std::string level = "quick";
    auto* ver = app.add_subcommand("verify", "Run the verification suites");
    ver->add_option("--level", level, "quick | full")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (est->parsed()) {
            if (input.empty() && gen.empty()) {
                std::cerr << "estimate needs --input or --gen\n";
                return 2;
            }
            if (!(eps > 0.0 && eps < 1.0)) {
                std::cerr << "--eps must be in (0,1)\n";
                return 2;
            }
            return cmd_estimate(input, gen, eps, mode, seed, trials, samples, out_path, format);
        }
        if (bench->parsed())
            return cmd_bench(family, n_list, d_list, eps, mode, seed, trials, out_path);
        if (ver->parsed()) return cmd_verify(level);
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
