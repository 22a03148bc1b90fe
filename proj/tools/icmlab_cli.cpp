#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "icmlab/diffusion.hpp"
#include "icmlab/experiment.hpp"
#include "icmlab/generators.hpp"
#include "icmlab/graph.hpp"
#include "icmlab/metrics.hpp"
#include "icmlab/partial_view.hpp"
#include "icmlab/rng.hpp"
#include "icmlab/seeding.hpp"

using namespace icmlab;

namespace {

Graph load_or_fail(const std::string& path) { return load_edge_list(path); }

int cmd_generate(const std::string& model, NodeId nodes, double p, double k,
                 double pneighbor, std::uint64_t seed, const std::string& out) {
    Graph g;
    if (model == "er") {
        g = erdos_renyi(nodes, p, seed);
    } else if (model == "toshk") {
        g = toshk({nodes, pneighbor, k}, seed);
    } else {
        std::cerr << "unknown model: " << model << "\n";
        return 1;
    }
    save_edge_list(g, out);
    std::cout << "nodes=" << g.node_count() << " edges=" << g.edge_count()
              << " file=" << out << "\n";
    return 0;
}

int cmd_inspect(const std::string& graph_file, std::uint32_t sample,
                std::uint64_t seed, unsigned workers, bool lcc_only) {
    Graph g = load_or_fail(graph_file);
    if (lcc_only) g = induced_subgraph(g, largest_component(g));
    std::optional<std::uint32_t> s;
    if (sample > 0) s = sample;
    TopologyReport rep = topology_report(g, s, seed, workers);
    std::cout << "nodes=" << g.node_count() << "\n"
              << "edges=" << g.edge_count() << "\n"
              << "avg_degree=" << csv_num(rep.avg_degree) << "\n"
              << "avg_clustering=" << csv_num(rep.avg_clustering) << "\n"
              << "assortativity=" << csv_num(rep.assortativity) << "\n"
              << "diameter=" << rep.diameter << "\n"
              << "radius=" << rep.radius << "\n"
              << "component_size=" << rep.component_size << "\n"
              << "estimated=" << (rep.estimated ? 1 : 0) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hidden-node diffusion laboratory: ICM cascades on oracle and "
                 "partial networks, decomposition, and size correction"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    unsigned workers = 0;
    std::string out_dir = ".";
    app.add_option("--seed", seed, "master RNG seed")->capture_default_str();
    app.add_option("--workers", workers, "worker threads (0 = all cores)");
    app.add_option("--out-dir", out_dir, "output directory for experiment CSVs");

    // generate
    auto* gen = app.add_subcommand("generate", "generate a synthetic oracle network");
    std::string model, out_file = "graph.edges";
    NodeId nodes = 0;
    double p_edge = 0.0, k_target = 0.0, p_neighbor = 0.0;
    gen->add_option("--model", model, "er|toshk")->required();
    gen->add_option("--nodes", nodes, "node count")->required();
    gen->add_option("--p", p_edge, "ER edge probability");
    gen->add_option("--k", k_target, "TOSHK target average degree");
    gen->add_option("--pneighbor", p_neighbor, "TOSHK neighbor-link probability");
    gen->add_option("--out", out_file, "edge-list output path")->required();

    // inspect
    auto* ins = app.add_subcommand("inspect", "topology report for a graph");
    std::string graph_file;
    std::uint32_t dia_sample = 0;
    bool lcc_only = false;
    ins->add_option("--graph", graph_file, "edge-list file")->required();
    ins->add_option("--sample", dia_sample,
                    "BFS sources for estimated diameter/radius (0 = exact)");
    ins->add_flag("--largest-component", lcc_only,
                  "restrict the whole report to the largest component");

    // sample
    auto* smp = app.add_subcommand("sample", "draw a hidden-node view");
    double rho = 0.0;
    std::string view_out;
    smp->add_option("--graph", graph_file, "edge-list file")->required();
    smp->add_option("--rho", rho, "hidden fraction in [0,1)")->required();
    smp->add_option("--out", view_out, "view output path")->required();

    // seed
    auto* sd = app.add_subcommand("seed", "select seeds on the partial network");
    double gamma = 0.0001, seed_p = 0.01;
    std::string strategy = "degree-discount", view_file, seeds_out;
    sd->add_option("--graph", graph_file, "oracle edge-list file")->required();
    sd->add_option("--view", view_file, "hidden view file (omit for full graph)");
    sd->add_option("--gamma", gamma, "seed fraction of visible nodes")->required();
    sd->add_option("--strategy", strategy, "degree-discount|random");
    sd->add_option("--p", seed_p, "transmission probability for the discount score");
    sd->add_option("--out", seeds_out, "seed output path, oracle ids")->required();

    // diffuse
    auto* dif = app.add_subcommand("diffuse", "run ICM and report per-run sizes");
    std::string seeds_file, weights_file, diffuse_out, profile_out;
    double dif_p = 0.01;
    int runs = 50;
    dif->add_option("--graph", graph_file, "edge-list file")->required();
    dif->add_option("--seeds", seeds_file, "seed file (graph id space)")->required();
    dif->add_option("--view", view_file,
                    "hidden view; adds the observed/phantom/hidden decomposition");
    dif->add_option("--p", dif_p, "global transmission probability");
    dif->add_option("--weights", weights_file, "per-edge probabilities 'u v p'");
    dif->add_option("--runs", runs, "number of diffusion runs");
    dif->add_option("--out", diffuse_out, "per-run CSV output")->required();
    dif->add_option("--profile-out", profile_out,
                    "mean per-level profile for the correct subcommand");

    // experiment
    auto* exp = app.add_subcommand("experiment", "full two-scenario protocol");
    std::string config_file, gen_spec;
    std::vector<double> rho_list, gamma_list;
    double exp_p = -1.0;
    int v = -1, r = -1;
    std::string exp_strategy, attribution;
    bool keep_traces = false;
    exp->add_option("--graph", graph_file, "oracle edge-list file");
    exp->add_option("--config", config_file, "key=value config file");
    exp->add_option("--rho-list", rho_list, "hidden fractions")->delimiter(',');
    exp->add_option("--gamma-list", gamma_list, "seed fractions")->delimiter(',');
    exp->add_option("--p", exp_p, "transmission probability");
    exp->add_option("--v", v, "samples per configuration");
    exp->add_option("--r", r, "runs per sample and scenario");
    exp->add_option("--strategy", exp_strategy, "degree-discount|random");
    exp->add_option("--attribution", attribution, "fractional|strict");
    exp->add_flag("--keep-traces", keep_traces, "persist full traces (debug)");

    // correct
    auto* cor = app.add_subcommand("correct", "cascade-size correction estimates");
    std::string profile_file, method = "both", correct_out;
    double cor_rho = -1.0, cor_p = -1.0;
    bool literal = false;
    cor->add_option("--profile", profile_file, "per-level profile CSV")->required();
    cor->add_option("--rho", cor_rho, "override the profile's hidden fraction");
    cor->add_option("--p", cor_p, "override the profile's transmission probability");
    cor->add_option("--method", method, "sice|rece|both");
    cor->add_flag("--literal", literal, "SiCE aggregate mode sigma_p/(1-rho)");
    cor->add_option("--out", correct_out, "CSV output (default stdout)");

    // let the global --seed/--workers/--out-dir appear after the subcommand too
    for (CLI::App* sc : {gen, ins, smp, sd, dif, exp, cor}) sc->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return cmd_generate(model, nodes, p_edge, k_target, p_neighbor, seed,
                                out_file);

        if (ins->parsed())
            return cmd_inspect(graph_file, dia_sample, seed, workers, lcc_only);

        if (smp->parsed()) {
            Graph g = load_or_fail(graph_file);
            PartialView view = sample_hidden(g, rho, seed);
            save_view(view, view_out);
            std::cout << "hidden=" << view.hidden_count
                      << " visible=" << view.visible_count() << "\n";
            return 0;
        }

        if (sd->parsed()) {
            Graph g = load_or_fail(graph_file);
            PartialView view = view_file.empty() ? sample_hidden(g, 0.0, seed)
                                                 : load_view(g, view_file);
            PartialGraph pg = partial_graph(g, view);
            const NodeId k = seed_count_for_gamma(gamma, pg.graph.node_count());
            SeedSet ss = strategy == "random"
                             ? random_seeds(pg.graph, k, seed)
                             : degree_discount_seeds(pg.graph, k, seed_p);
            ss.gamma = gamma;
            for (NodeId& id : ss.seeds) id = pg.to_oracle[id];
            save_seeds(ss, seeds_out);
            std::cout << "k=" << ss.seeds.size() << "\n";
            return 0;
        }

        if (dif->parsed()) {
            Graph g = load_or_fail(graph_file);
            std::vector<NodeId> seeds = load_seeds(seeds_file);
            PartialView view = view_file.empty()
                                   ? sample_hidden(g, 0.0, seed)
                                   : load_view(g, view_file);
            EdgeProbabilities probs;
            probs.global_p = dif_p;
            if (!weights_file.empty())
                probs = load_edge_probabilities(weights_file, dif_p);

            std::ofstream out(diffuse_out, std::ios::binary);
            if (!out) throw std::runtime_error("cannot write " + diffuse_out);
            out << "run_id,sigma,sigma_o,sigma_ph,sigma_h,horizon\n";
            PartialCascadeProfile mean_prof;
            std::vector<double> lvl_deg_sum;
            for (int run = 0; run < runs; ++run) {
                DiffusionTrace trace =
                    run_icm(g, seeds, probs, rng::derive(seed, 0x72756eull, run));
                CascadeDecomposition d = decompose(trace, view);
                out << run << ',' << csv_num(d.sigma) << ',' << csv_num(d.sigma_o)
                    << ',' << csv_num(d.sigma_ph) << ',' << csv_num(d.sigma_h) << ','
                    << trace.horizon << '\n';
                if (!profile_out.empty()) {
                    PartialCascadeProfile prof = profile_from_trace(trace, g, 0.0, dif_p);
                    if (prof.per_level_sizes.size() > mean_prof.per_level_sizes.size()) {
                        mean_prof.per_level_sizes.resize(prof.per_level_sizes.size(), 0.0);
                        lvl_deg_sum.resize(prof.per_level_sizes.size(), 0.0);
                    }
                    for (std::size_t t = 0; t < prof.per_level_sizes.size(); ++t) {
                        mean_prof.per_level_sizes[t] += prof.per_level_sizes[t] / runs;
                        lvl_deg_sum[t] +=
                            prof.per_level_mean_degree[t] * prof.per_level_sizes[t];
                    }
                    mean_prof.fallback_mean_degree = prof.fallback_mean_degree;
                }
            }
            if (!profile_out.empty()) {
                mean_prof.p = dif_p;
                mean_prof.per_level_mean_degree.resize(mean_prof.per_level_sizes.size());
                for (std::size_t t = 0; t < mean_prof.per_level_sizes.size(); ++t)
                    mean_prof.per_level_mean_degree[t] =
                        mean_prof.per_level_sizes[t] > 0
                            ? lvl_deg_sum[t] / (mean_prof.per_level_sizes[t] * runs)
                            : mean_prof.fallback_mean_degree;
                mean_prof.seed_count = mean_prof.per_level_sizes.empty()
                                           ? 0.0
                                           : mean_prof.per_level_sizes[0];
                save_profile(mean_prof, profile_out);
            }
            return 0;
        }

        if (exp->parsed()) {
            ExperimentConfig cfg;
            cfg.master_seed = seed;
            cfg.workers = workers;
            cfg.out_dir = out_dir;
            if (!config_file.empty()) apply_config_file(cfg, config_file);
            if (!rho_list.empty()) cfg.rho_list = rho_list;
            if (!gamma_list.empty()) cfg.gamma_list = gamma_list;
            if (exp_p >= 0.0) cfg.p = exp_p;
            if (v > 0) cfg.v = v;
            if (r > 0) cfg.r = r;
            if (keep_traces) cfg.keep_traces = true;
            if (exp_strategy == "degree-discount")
                cfg.strategy = SeedStrategy::degree_discount;
            else if (exp_strategy == "random")
                cfg.strategy = SeedStrategy::random;
            else if (!exp_strategy.empty())
                throw std::runtime_error("unknown strategy " + exp_strategy);
            if (attribution == "fractional")
                cfg.attribution = AttributionRule::fractional;
            else if (attribution == "strict")
                cfg.attribution = AttributionRule::strict_phantom;
            else if (!attribution.empty())
                throw std::runtime_error("unknown attribution " + attribution);
            if (graph_file.empty())
                throw std::runtime_error("experiment requires --graph");

            Graph g = load_or_fail(graph_file);
            ExperimentResult result = run_experiment(g, cfg);
            export_csv(result, cfg.out_dir);
            std::cout << "wrote CSVs to " << cfg.out_dir << "\n";
            return 0;
        }

        if (cor->parsed()) {
            PartialCascadeProfile prof = load_profile(profile_file);
            if (cor_rho >= 0.0) prof.rho = cor_rho;
            if (cor_p >= 0.0) prof.p = cor_p;
            std::ostream* os = &std::cout;
            std::ofstream file;
            if (!correct_out.empty()) {
                file.open(correct_out, std::ios::binary);
                if (!file) throw std::runtime_error("cannot write " + correct_out);
                os = &file;
            }
            *os << "method,sigma_hat,level,sigma_hat_level\n";
            auto emit = [&](const CorrectionEstimate& est) {
                *os << method_name(est.method) << (est.literal ? "-literal" : "")
                    << ',' << csv_num(est.sigma_hat) << ",,\n";
                for (std::size_t t = 0; t < est.per_level.size(); ++t)
                    *os << method_name(est.method) << ',' << csv_num(est.sigma_hat)
                        << ',' << t << ',' << csv_num(est.per_level[t]) << '\n';
            };
            if (method == "sice" || method == "both") emit(sice(prof, literal));
            if (method == "rece" || method == "both") emit(rece(prof));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
