#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include <gifnet/analysis.hpp>
#include <gifnet/csv.hpp>
#include <gifnet/dynamics.hpp>
#include <gifnet/error.hpp>
#include <gifnet/kernel.hpp>
#include <gifnet/params_io.hpp>
#include <gifnet/variation.hpp>

#include "commands.hpp"

namespace fs = std::filesystem;

namespace gifnet::cli {

namespace {

struct usage: std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Everything goes to a hidden sibling directory first and is renamed into
// place once the command has finished, so a failed run leaves no partial output.
class staged_output {
public:
    explicit staged_output(const fs::path& out): final_(fs::absolute(out)) {
        if (fs::exists(final_) && !(fs::is_directory(final_) && fs::is_empty(final_))) {
            throw usage("output directory " + out.string() + " exists and is not empty");
        }
        staging_ = final_.parent_path() / ("." + final_.filename().string() + ".staging-" + std::to_string(::getpid()));
        fs::remove_all(staging_);
        fs::create_directories(staging_);
    }
    ~staged_output() {
        std::error_code ec;
        if (!committed_) fs::remove_all(staging_, ec);
    }

    fs::path file(const std::string& name) const { return staging_/name; }

    std::ofstream open(const std::string& name) const {
        std::ofstream os(file(name), std::ios::binary);
        if (!os) throw error(errc::io_error, "cannot write " + file(name).string());
        return os;
    }

    void commit() {
        if (fs::exists(final_)) fs::remove(final_);
        fs::rename(staging_, final_);
        committed_ = true;
    }

private:
    fs::path final_, staging_;
    bool committed_ = false;
};

validated_params load(const std::string& path) {
    return validate(load_params(path));
}

void require_positive(double v, const char* name) {
    if (!(v > 0) || !std::isfinite(v)) throw usage(std::string(name) + " must be > 0");
}

std::string raster_name(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "raster_%04zu.txt", i);
    return buf;
}

struct simulate_args {
    std::string config, out, past = "empty";
    std::optional<std::uint64_t> seed;
    long steps = 100;
    long trials = 1;
    std::optional<long> depth;
    std::optional<double> eps;
};

int cmd_simulate(const simulate_args& a) {
    if (!a.seed) throw usage("simulate needs --seed");
    if (a.steps < 1) throw usage("--steps must be >= 1");
    if (a.trials < 1) throw usage("--trials must be >= 1");
    if (a.depth && a.eps) throw usage("--depth and --eps are exclusive");
    auto vp = load(a.config);

    simulation_options opt;
    opt.steps = a.steps;
    opt.trials = std::size_t(a.trials);
    opt.seed = *a.seed;
    if (a.past == "allones") opt.past = past_convention::all_ones();
    else if (a.past != "empty") throw usage("--past must be empty or allones");
    std::string horizon = "exact";
    if (a.depth) {
        if (*a.depth < 0) throw usage("--depth must be >= 0");
        opt.memory = *a.depth;
        horizon = std::to_string(*a.depth);
    }
    if (a.eps) {
        require_positive(*a.eps, "--eps");
        opt.memory = history_horizon(vp, *a.eps);
        horizon = std::to_string(*opt.memory);
    }

    staged_output out(a.out);
    auto rasters = simulate(vp, opt);
    for (std::size_t i = 0; i < rasters.size(); ++i) write_raster(out.file(raster_name(i)), rasters[i]);

    auto os = out.open("summary.csv");
    csv_writer w(os);
    w.row("quantity", "neuron", "value");
    w.row("seed", "all", std::to_string(*a.seed));
    w.row("steps", "all", a.steps);
    w.row("trials", "all", a.trials);
    w.row("horizon", "all", horizon);
    w.row("past", "all", a.past);
    for (std::size_t k = 0; k < vp.size(); ++k) {
        double spikes = 0;
        for (auto& r: rasters) {
            for (tick t = r.first(); t <= r.last(); ++t) spikes += r.bit(k, t);
        }
        w.row("rate", k, spikes/double(a.steps*a.trials));
    }
    os.close();
    out.commit();
    std::cout << "simulate: " << rasters.size() << " rasters written to " << a.out << '\n';
    return ok;
}

int cmd_bounds(const std::string& config, const std::string& dir) {
    auto vp = load(config);
    auto b = derive_bounds(vp);
    auto cert = make_certificate(vp);
    staged_output out(dir);
    {
        auto os = out.open("bounds.csv");
        write_bounds_csv(os, b);
    }
    {
        auto os = out.open("certificate.csv");
        csv_writer w(os);
        w.row("quantity", "value");
        w.row("m_p_lower", cert.m_p_lower);
        w.row("log_m_p_lower", cert.log_m_p_lower);
        w.row("v_p_upper", cert.v_p_upper);
        w.row("last_term_ratio", cert.last_term_ratio);
    }
    out.commit();
    const bool held = std::isfinite(cert.log_m_p_lower) && std::isfinite(cert.v_p_upper);
    std::cout << "bounds: log m_p_lower " << cert.log_m_p_lower << ", v_p_upper " << cert.v_p_upper << '\n';
    return held? ok: bound_violated;
}

int cmd_variation(const std::string& config, const std::string& dir, int m_max, int tail, const std::string& which) {
    if (m_max < 0) throw usage("--m-max must be >= 0");
    if (tail < 0) throw usage("--tail must be >= 0");
    std::optional<quantity> only;
    if (which != "all") {
        for (auto q: {quantity::conductance, quantity::v_syn, quantity::v_ext, quantity::sigma_sq, quantity::kernel}) {
            if (to_string(q) == which) only = q;
        }
        if (!only) throw usage("unknown --quantity '" + which + "'");
    }
    auto vp = load(config);
    staged_output out(dir);
    std::vector<variation_report> reports;
    bool held = true;
    for (int m = 0; m <= m_max; ++m) {
        auto batch = only? std::vector{measure_variation(vp, *only, m, tail)}: measure_variation(vp, m, tail);
        for (auto& r: batch) {
            if (!r.holds()) {
                held = false;
                std::cout << "variation: " << to_string(r.q) << " at m=" << m << " exceeds its bound (ratio "
                          << r.worst_ratio() << ")\n";
            }
            reports.push_back(std::move(r));
        }
    }
    auto os = out.open("variation.csv");
    write_variation_csv(os, reports);
    os.close();
    out.commit();
    return held? ok: bound_violated;
}

int cmd_approx(const std::string& config, const std::string& dir, std::optional<std::uint64_t> seed, int depth,
               int probes, int tail, double eps)
{
    if (!seed) throw usage("approx needs --seed (probe histories are random)");
    if (depth < 0) throw usage("--depth must be >= 0");
    if (probes < 1) throw usage("--probes must be >= 1");
    if (tail < 0) throw usage("--tail must be >= 0");
    require_positive(eps, "--eps");
    auto vp = load(config);
    auto consts = make_variation_constants(vp);
    staged_output out(dir);
    std::vector<markov_error_result> rows;
    bool held = true;
    const double patterns = std::ldexp(1.0, int(vp.size()) - 1);
    for (int d = 0; d <= depth; ++d) {
        rows.push_back(markov_error(vp, d, std::size_t(probes), tail, *seed));
        const double tv = rows.back().max_tv;
        if (d > 0 && tv > rows[rows.size() - 2].max_tv + 1e-10) {
            held = false;
            std::cout << "approx: max_tv grows from D=" << d - 1 << " to D=" << d << '\n';
        }
        // TV sums 2^N pattern differences, each within the kernel bound
        if (tv > patterns*variation_bound(consts, quantity::kernel, d) + 1e-8) {
            held = false;
            std::cout << "approx: max_tv at D=" << d << " exceeds the kernel variation bound\n";
        }
    }
    {
        auto os = out.open("markov.csv");
        write_markov_csv(os, rows);
    }
    {
        auto os = out.open("horizon.csv");
        csv_writer w(os);
        w.row("eps", "history_horizon");
        w.row(eps, history_horizon(vp, eps));
    }
    out.commit();
    return held? ok: bound_violated;
}

int cmd_stats(const std::vector<std::string>& inputs, const std::string& dir, int max_lag, int width) {
    if (inputs.empty()) throw usage("stats needs at least one --input raster");
    std::vector<raster> rs;
    for (auto& p: inputs) rs.push_back(read_raster(fs::path(p)));
    auto s = empirical_stats(rs, max_lag, width);
    staged_output out(dir);
    auto os = out.open("stats.csv");
    write_stats_csv(os, s);
    os.close();
    out.commit();
    return ok;
}

int cmd_bin(const std::string& input, const std::string& dir, int width) {
    auto r = read_raster(fs::path(input));
    auto b = bin_raster(r, width);
    staged_output out(dir);
    write_raster(out.file("binned.txt"), b);
    out.commit();
    return ok;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& err) {
    CLI::App app{"Spike statistics of generalized integrate-and-fire networks", "gifnet"};
    app.require_subcommand(1);

    std::string config, out;
    std::optional<std::uint64_t> seed;
    auto add_common = [&](CLI::App* c, bool needs_config) {
        auto* opt = c->add_option("--config", config, "parameter file (JSON)");
        if (needs_config) opt->required()->check(CLI::ExistingFile);
        c->add_option("--out", out, "output directory (created atomically)")->required();
    };

    simulate_args sim;
    auto* simulate_cmd = app.add_subcommand("simulate", "sample rasters from the exact conditional law");
    add_common(simulate_cmd, true);
    simulate_cmd->add_option("--seed", seed, "random seed (required)");
    simulate_cmd->add_option("--steps", sim.steps, "steps per trial")->capture_default_str();
    simulate_cmd->add_option("--trials", sim.trials, "independent trials")->capture_default_str();
    simulate_cmd->add_option("--depth", sim.depth, "truncate the memory to D steps");
    simulate_cmd->add_option("--eps", sim.eps, "truncate the memory at history_horizon(eps)");
    simulate_cmd->add_option("--past", sim.past, "empty or allones")->capture_default_str();

    auto* bounds_cmd = app.add_subcommand("bounds", "uniform bounds and uniqueness certificate");
    add_common(bounds_cmd, true);

    int m_max = 8, tail = 4;
    std::string which = "all";
    auto* variation_cmd = app.add_subcommand("variation", "measured vs analytic m-variation");
    add_common(variation_cmd, true);
    variation_cmd->add_option("--m-max", m_max, "largest agreement depth")->capture_default_str();
    variation_cmd->add_option("--tail", tail, "enumerated tail length")->capture_default_str();
    variation_cmd->add_option("--quantity", which, "all, conductance, v_syn, v_ext, sigma_sq or kernel")
        ->capture_default_str();

    int depth = 6, probes = 64;
    double eps = 1e-6;
    auto* approx_cmd = app.add_subcommand("approx", "finite-memory approximation error");
    add_common(approx_cmd, true);
    approx_cmd->add_option("--seed", seed, "probe seed (required)");
    approx_cmd->add_option("--depth", depth, "sweep D = 0..depth")->capture_default_str();
    approx_cmd->add_option("--probes", probes, "probe histories")->capture_default_str();
    approx_cmd->add_option("--tail", tail, "reference rows beyond D")->capture_default_str();
    approx_cmd->add_option("--eps", eps, "tolerance for the reported history horizon")->capture_default_str();

    std::vector<std::string> inputs;
    int max_lag = 0, width = 1;
    auto* stats_cmd = app.add_subcommand("stats", "empirical rates, correlations and block frequencies");
    add_common(stats_cmd, false);
    stats_cmd->add_option("--input", inputs, "raster files")->required()->check(CLI::ExistingFile);
    stats_cmd->add_option("--max-lag", max_lag, "largest correlation lag")->capture_default_str();
    stats_cmd->add_option("--width", width, "largest block width")->capture_default_str();

    std::string bin_input;
    auto* bin_cmd = app.add_subcommand("bin", "OR-bin a raster in time");
    add_common(bin_cmd, false);
    bin_cmd->add_option("--input", bin_input, "raster file")->required()->check(CLI::ExistingFile);
    bin_cmd->add_option("--width", width, "bin width")->required();

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        std::ostringstream os, es;
        const int rc = app.exit(e, os, es);
        std::cout << os.str();
        err << es.str();
        return rc == 0? ok: usage_error;
    }

    try {
        if (*simulate_cmd) {
            sim.config = config;
            sim.out = out;
            sim.seed = seed;
            return cmd_simulate(sim);
        }
        if (*bounds_cmd) return cmd_bounds(config, out);
        if (*variation_cmd) return cmd_variation(config, out, m_max, tail, which);
        if (*approx_cmd) return cmd_approx(config, out, seed, depth, probes, tail, eps);
        if (*stats_cmd) return cmd_stats(inputs, out, max_lag, width);
        if (*bin_cmd) return cmd_bin(bin_input, out, width);
    }
    catch (const usage& e) {
        err << "gifnet: " << e.what() << '\n';
        return usage_error;
    }
    catch (const error& e) {
        err << "gifnet: " << e.what() << '\n';
        if (e.code() == errc::quadrature_non_convergence || e.code() == errc::series_divergence) return non_convergence;
        return usage_error;
    }
    catch (const fs::filesystem_error& e) {
        err << "gifnet: " << e.what() << '\n';
        return usage_error;
    }
    return usage_error;
}

} // namespace gifnet::cli
