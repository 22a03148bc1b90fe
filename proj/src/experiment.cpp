#include "icmlab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "icmlab/diffusion.hpp"
#include "icmlab/partial_view.hpp"
#include "icmlab/rng.hpp"
#include "icmlab/seeding.hpp"

namespace icmlab {

namespace {

// Stream tags keep the independent RNG uses of the harness apart.
enum StreamTag : std::uint64_t { kViewStream = 1, kSeedStream = 2, kRunStream = 3 };

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    if (workers == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto work = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) break;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(workers, count); ++t)
        pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

struct OracleRun {
    double sigma = 0, sigma_o = 0, sigma_ph = 0, sigma_h = 0;
    double first_hop = 0;
    std::uint32_t horizon = 0;
    std::vector<std::uint32_t> step_counts;
    std::vector<std::pair<NodeId, std::uint32_t>> trace;  // keep_traces only
};

struct PartialRun {
    double sigma_p = 0;
    double sice_hat = 0, rece_hat = 0;
    LevelStats levels;
    std::vector<std::pair<NodeId, std::uint32_t>> trace;  // oracle ids
};

void validate(const ExperimentConfig& cfg) {
    if (cfg.v < 1 || cfg.r < 1)
        throw std::invalid_argument("experiment: v and r must be >= 1");
    if (cfg.p < 0.0 || cfg.p > 1.0)
        throw std::invalid_argument("experiment: p must be in [0,1]");
    for (double rho : cfg.rho_list)
        if (rho < 0.0 || rho >= 1.0)
            throw std::invalid_argument("experiment: every rho must be in [0,1)");
    for (double gamma : cfg.gamma_list)
        if (gamma < 0.0 || gamma > 1.0)
            throw std::invalid_argument("experiment: every gamma must be in [0,1]");
}

}  // namespace

ExperimentResult run_experiment(const Graph& oracle, const ExperimentConfig& cfg) {
    validate(cfg);
    ExperimentResult result;
    EdgeProbabilities probs;
    probs.global_p = cfg.p;

    const auto v = static_cast<std::size_t>(cfg.v);
    const auto r = static_cast<std::size_t>(cfg.r);

    for (std::size_t ri = 0; ri < cfg.rho_list.size(); ++ri) {
        const double rho = cfg.rho_list[ri];

        // Per-rho sample contexts, shared across gamma values.
        struct SampleCtx {
            PartialView view;
            PartialGraph pg;
            std::vector<double> clustering;  // partial-graph local clustering
        };
        std::vector<SampleCtx> ctx(v);
        parallel_for(v, cfg.workers, [&](std::size_t s) {
            ctx[s].view = sample_hidden(
                oracle, rho, rng::derive(cfg.master_seed, kViewStream, ri, s), s);
            ctx[s].pg = partial_graph(oracle, ctx[s].view);
            ctx[s].clustering = all_clustering(ctx[s].pg.graph);
        });

        for (std::size_t gi = 0; gi < cfg.gamma_list.size(); ++gi) {
            const double gamma = cfg.gamma_list[gi];

            std::vector<std::vector<NodeId>> seeds_partial(v), seeds_oracle(v);
            for (std::size_t s = 0; s < v; ++s) {
                const NodeId vp = ctx[s].pg.graph.node_count();
                const NodeId k = seed_count_for_gamma(gamma, vp);
                if (k > vp)
                    throw std::invalid_argument(
                        "experiment: insufficient visible nodes for requested gamma");
                SeedSet ss =
                    cfg.strategy == SeedStrategy::degree_discount
                        ? degree_discount_seeds(ctx[s].pg.graph, k, cfg.p)
                        : random_seeds(ctx[s].pg.graph, k,
                                       rng::derive(cfg.master_seed, kSeedStream, ri, gi, s));
                seeds_partial[s] = ss.seeds;
                seeds_oracle[s].reserve(k);
                for (NodeId id : ss.seeds)
                    seeds_oracle[s].push_back(ctx[s].pg.to_oracle[id]);
            }

            std::vector<OracleRun> oracle_runs(v * r);
            std::vector<PartialRun> partial_runs(v * r);

            // One task per (sample, run, scenario); slots keep aggregation
            // independent of scheduling.
            parallel_for(v * r * 2, cfg.workers, [&](std::size_t task) {
                const std::size_t s = task / (r * 2);
                const std::size_t rest = task % (r * 2);
                const std::size_t run = rest / 2;
                const bool is_partial = rest % 2;
                const std::uint64_t run_seed =
                    rng::derive(cfg.master_seed, kRunStream, ri, gi, s, run);
                if (!is_partial) {
                    DiffusionTrace trace =
                        run_icm(oracle, seeds_oracle[s], probs, run_seed);
                    CascadeDecomposition d =
                        decompose(trace, ctx[s].view, cfg.attribution);
                    OracleRun& rec = oracle_runs[s * r + run];
                    rec.sigma = d.sigma;
                    rec.sigma_o = d.sigma_o;
                    rec.sigma_ph = d.sigma_ph;
                    rec.sigma_h = d.sigma_h;
                    rec.first_hop = d.first_hop_observed_fraction;
                    rec.horizon = trace.horizon;
                    rec.step_counts.assign(trace.horizon + 1, 0);
                    for (const Activation& a : trace.activations)
                        ++rec.step_counts[a.time];
                    if (cfg.keep_traces)
                        for (const Activation& a : trace.activations)
                            rec.trace.emplace_back(a.node, a.time);
                } else {
                    DiffusionTrace trace =
                        run_icm(ctx[s].pg.graph, seeds_partial[s], probs, run_seed);
                    PartialRun& rec = partial_runs[s * r + run];
                    rec.sigma_p = static_cast<double>(trace.size());
                    PartialCascadeProfile prof =
                        profile_from_trace(trace, ctx[s].pg.graph, rho, cfg.p);
                    rec.sice_hat = sice(prof).sigma_hat;
                    rec.rece_hat = rece(prof).sigma_hat;
                    rec.levels = level_stats(trace, ctx[s].pg.graph, ctx[s].clustering);
                    if (cfg.keep_traces)
                        for (const Activation& a : trace.activations)
                            rec.trace.emplace_back(ctx[s].pg.to_oracle[a.node], a.time);
                }
            });

            // ---- aggregation (sequential, fixed order) ----
            std::vector<SampleSummary> summaries(v);
            // shape/level accumulators across all traces of this (rho, gamma)
            std::vector<double> shape_sum;
            std::vector<std::uint64_t> shape_traces;
            std::vector<double> lvl_clu, lvl_deg;
            std::vector<std::uint64_t> lvl_count;

            for (std::size_t s = 0; s < v; ++s) {
                SampleSummary& sum = summaries[s];
                sum.sample_id = s;
                sum.rho = rho;
                sum.gamma = gamma;
                sum.run_count = cfg.r;
                std::vector<double> run_sigmas(r);
                double sice_sum = 0, rece_sum = 0;
                for (std::size_t run = 0; run < r; ++run) {
                    const OracleRun& orec = oracle_runs[s * r + run];
                    const PartialRun& prec = partial_runs[s * r + run];
                    sum.mean_sigma += orec.sigma;
                    sum.mean_sigma_o += orec.sigma_o;
                    sum.mean_sigma_ph += orec.sigma_ph;
                    sum.mean_sigma_h += orec.sigma_h;
                    sum.mean_sigma_p += prec.sigma_p;
                    sum.mean_first_hop += orec.first_hop;
                    run_sigmas[run] = orec.sigma;
                    sice_sum += prec.sice_hat;
                    rece_sum += prec.rece_hat;

                    if (orec.step_counts.size() > shape_sum.size()) {
                        shape_sum.resize(orec.step_counts.size(), 0.0);
                        shape_traces.resize(orec.step_counts.size(), 0);
                    }
                    for (std::size_t t = 0; t < orec.step_counts.size(); ++t) {
                        shape_sum[t] += orec.step_counts[t];
                        ++shape_traces[t];
                    }
                    for (std::size_t li = 0; li < prec.levels.steps.size(); ++li) {
                        const std::uint32_t step = prec.levels.steps[li];
                        if (step >= lvl_count.size()) {
                            lvl_clu.resize(step + 1, 0.0);
                            lvl_deg.resize(step + 1, 0.0);
                            lvl_count.resize(step + 1, 0);
                        }
                        const double c = prec.levels.counts[li];
                        lvl_clu[step] += prec.levels.mean_clustering[li] * c;
                        lvl_deg[step] += prec.levels.mean_degree[li] * c;
                        lvl_count[step] += prec.levels.counts[li];
                    }
                    if (cfg.keep_traces) {
                        for (const auto& [node, time] : orec.trace)
                            result.traces.push_back({rho, gamma, s, static_cast<int>(run),
                                                     'o', node, time});
                        for (const auto& [node, time] : prec.trace)
                            result.traces.push_back({rho, gamma, s, static_cast<int>(run),
                                                     'p', node, time});
                    }
                }
                const double rn = static_cast<double>(r);
                sum.mean_sigma /= rn;
                sum.mean_sigma_o /= rn;
                sum.mean_sigma_ph /= rn;
                sum.mean_sigma_h /= rn;
                sum.mean_sigma_p /= rn;
                sum.mean_first_hop /= rn;

                const double hats[3] = {sum.mean_sigma_p, sice_sum / rn, rece_sum / rn};
                const CorrectionMethod methods[3] = {CorrectionMethod::partial,
                                                     CorrectionMethod::sice,
                                                     CorrectionMethod::rece};
                for (int m = 0; m < 3; ++m)
                    result.corrections.push_back(
                        {rho, gamma, s, methods[m], hats[m],
                         correction_error(sum.mean_sigma, hats[m])});

                std::vector<double> z = convergence_zscores(run_sigmas);
                for (std::size_t run = 0; run < z.size(); ++run)
                    result.convergence.push_back(
                        {rho, gamma, s, static_cast<int>(run) + 1, z[run]});
            }

            RelativeError re = relative_error_ci(summaries);
            result.relative_errors.push_back(
                {rho, gamma, re.mean, re.ci_low, re.ci_high, cfg.v, cfg.r});
            for (auto& sum : summaries) result.samples.push_back(sum);
            for (std::size_t t = 0; t < shape_sum.size(); ++t)
                result.shape.push_back({rho, gamma, static_cast<std::uint32_t>(t),
                                        shape_sum[t] / static_cast<double>(shape_traces[t]),
                                        shape_traces[t]});
            for (std::size_t t = 0; t < lvl_count.size(); ++t)
                if (lvl_count[t] > 0)
                    result.levels.push_back({rho, gamma, static_cast<std::uint32_t>(t),
                                             lvl_clu[t] / static_cast<double>(lvl_count[t]),
                                             lvl_deg[t] / static_cast<double>(lvl_count[t]),
                                             lvl_count[t]});
        }
    }
    return result;
}

std::string csv_num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

namespace {
std::ofstream open_csv(const std::filesystem::path& dir, const char* name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out)
        throw std::runtime_error(std::string("cannot write ") + name + " in " +
                                 dir.string());
    return out;
}
}  // namespace

void export_csv(const ExperimentResult& result, const std::string& dir) {
    std::filesystem::path d(dir);
    std::filesystem::create_directories(d);

    {
        auto f = open_csv(d, "relative_error.csv");
        f << "rho,gamma,relative_error,ci_low,ci_high,v,r\n";
        for (const auto& row : result.relative_errors)
            f << csv_num(row.rho) << ',' << csv_num(row.gamma) << ','
              << csv_num(row.relative_error) << ',' << csv_num(row.ci_low) << ','
              << csv_num(row.ci_high) << ',' << row.v << ',' << row.r << '\n';
    }
    {
        auto f = open_csv(d, "samples.csv");
        f << "rho,gamma,sample_id,mean_sigma,mean_sigma_o,mean_sigma_ph,"
             "mean_sigma_h,mean_sigma_p,r\n";
        for (const auto& s : result.samples)
            f << csv_num(s.rho) << ',' << csv_num(s.gamma) << ',' << s.sample_id << ','
              << csv_num(s.mean_sigma) << ',' << csv_num(s.mean_sigma_o) << ','
              << csv_num(s.mean_sigma_ph) << ',' << csv_num(s.mean_sigma_h) << ','
              << csv_num(s.mean_sigma_p) << ',' << s.run_count << '\n';
    }
    {
        auto f = open_csv(d, "corrections.csv");
        f << "rho,gamma,sample_id,method,sigma_hat,abs_rel_error\n";
        for (const auto& c : result.corrections)
            f << csv_num(c.rho) << ',' << csv_num(c.gamma) << ',' << c.sample_id << ','
              << method_name(c.method) << ',' << csv_num(c.sigma_hat) << ','
              << csv_num(c.abs_rel_error) << '\n';
    }
    {
        auto f = open_csv(d, "shape.csv");
        f << "rho,gamma,step,mean_new_activations,trace_count\n";
        for (const auto& s : result.shape)
            f << csv_num(s.rho) << ',' << csv_num(s.gamma) << ',' << s.step << ','
              << csv_num(s.mean_new_activations) << ',' << s.trace_count << '\n';
    }
    {
        auto f = open_csv(d, "levels.csv");
        f << "rho,gamma,step,mean_clustering,mean_degree,count\n";
        for (const auto& l : result.levels)
            f << csv_num(l.rho) << ',' << csv_num(l.gamma) << ',' << l.step << ','
              << csv_num(l.mean_clustering) << ',' << csv_num(l.mean_degree) << ','
              << l.count << '\n';
    }
    {
        auto f = open_csv(d, "convergence.csv");
        f << "rho,gamma,sample_id,r,z\n";
        for (const auto& c : result.convergence)
            f << csv_num(c.rho) << ',' << csv_num(c.gamma) << ',' << c.sample_id << ','
              << c.r << ',' << csv_num(c.z) << '\n';
    }
    {
        auto f = open_csv(d, "firsthop.csv");
        f << "rho,gamma,sample_id,first_hop_observed_fraction,r\n";
        for (const auto& s : result.samples)
            f << csv_num(s.rho) << ',' << csv_num(s.gamma) << ',' << s.sample_id << ','
              << csv_num(s.mean_first_hop) << ',' << s.run_count << '\n';
    }
    if (!result.traces.empty()) {
        auto f = open_csv(d, "traces.csv");
        f << "rho,gamma,sample_id,run_id,scenario,node,time\n";
        for (const auto& t : result.traces)
            f << csv_num(t.rho) << ',' << csv_num(t.gamma) << ',' << t.sample_id << ','
              << t.run_id << ',' << t.scenario << ',' << t.node << ',' << t.time << '\n';
    }
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    std::string line;
    std::size_t line_no = 0;
    auto parse_list = [](const std::string& s) {
        std::vector<double> out;
        std::istringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
        return out;
    };
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected key=value");
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t\r"));
            s.erase(s.find_last_not_of(" \t\r") + 1);
            return s;
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "rho_list") cfg.rho_list = parse_list(val);
        else if (key == "gamma_list") cfg.gamma_list = parse_list(val);
        else if (key == "p") cfg.p = std::stod(val);
        else if (key == "v") cfg.v = std::stoi(val);
        else if (key == "r") cfg.r = std::stoi(val);
        else if (key == "seed") cfg.master_seed = std::stoull(val);
        else if (key == "workers") cfg.workers = static_cast<unsigned>(std::stoul(val));
        else if (key == "out_dir") cfg.out_dir = val;
        else if (key == "keep_traces") cfg.keep_traces = val == "1" || val == "true";
        else if (key == "strategy") {
            if (val == "degree-discount") cfg.strategy = SeedStrategy::degree_discount;
            else if (val == "random") cfg.strategy = SeedStrategy::random;
            else throw std::runtime_error(path + ": unknown strategy " + val);
        } else if (key == "attribution") {
            if (val == "fractional") cfg.attribution = AttributionRule::fractional;
            else if (val == "strict") cfg.attribution = AttributionRule::strict_phantom;
            else throw std::runtime_error(path + ": unknown attribution " + val);
        } else {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": unknown key " + key);
        }
    }
}

}  // namespace icmlab
