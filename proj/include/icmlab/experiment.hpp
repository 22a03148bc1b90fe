#ifndef ICMLAB_EXPERIMENT_HPP
#define ICMLAB_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "icmlab/cascade.hpp"
#include "icmlab/correction.hpp"
#include "icmlab/graph.hpp"
#include "icmlab/metrics.hpp"

namespace icmlab {

enum class SeedStrategy { degree_discount, random };

struct ExperimentConfig {
    std::vector<double> rho_list{0.1, 0.2, 0.3, 0.4, 0.5};
    std::vector<double> gamma_list{0.0001, 0.001, 0.01};
    double p = 0.01;
    int v = 50;  // partial views per (rho, gamma)
    int r = 50;  // diffusion runs per sample and scenario
    SeedStrategy strategy = SeedStrategy::degree_discount;
    AttributionRule attribution = AttributionRule::fractional;
    std::uint64_t master_seed = 1;
    unsigned workers = 0;  // 0 = hardware concurrency
    std::string out_dir = ".";
    bool keep_traces = false;
};

// Plain-text key=value config; keys match the field names above
// (rho_list/gamma_list as comma-separated values, strategy as
// degree-discount|random, attribution as fractional|strict).
void apply_config_file(ExperimentConfig& cfg, const std::string& path);

struct RelativeErrorRow {
    double rho, gamma, relative_error, ci_low, ci_high;
    int v, r;
};
struct CorrectionRow {
    double rho, gamma;
    std::uint64_t sample_id;
    CorrectionMethod method;
    double sigma_hat, abs_rel_error;
};
struct ShapeRow {
    double rho, gamma;
    std::uint32_t step;
    double mean_new_activations;
    std::uint64_t trace_count;
};
struct LevelRow {
    double rho, gamma;
    std::uint32_t step;
    double mean_clustering, mean_degree;
    std::uint64_t count;
};
struct ConvergenceRow {
    double rho, gamma;
    std::uint64_t sample_id;
    int r;
    double z;
};
struct TraceRow {
    double rho, gamma;
    std::uint64_t sample_id;
    int run_id;
    char scenario;  // 'o' oracle, 'p' partial
    NodeId node;    // oracle id space
    std::uint32_t time;
};

struct ExperimentResult {
    std::vector<RelativeErrorRow> relative_errors;
    std::vector<SampleSummary> samples;
    std::vector<CorrectionRow> corrections;
    std::vector<ShapeRow> shape;
    std::vector<LevelRow> levels;
    std::vector<ConvergenceRow> convergence;
    std::vector<TraceRow> traces;  // only with keep_traces
};

// Full two-scenario protocol. Seeds are selected on each partial view and
// reused verbatim on the oracle; every RNG stream derives from
// (master_seed, rho index, gamma index, sample, run), so results are
// invariant to worker count and a rho=0 view reproduces the oracle runs
// coin for coin.
ExperimentResult run_experiment(const Graph& oracle, const ExperimentConfig& cfg);

// relative_error.csv, samples.csv, corrections.csv, shape.csv, levels.csv,
// plus convergence.csv and firsthop.csv; stable (rho, gamma, sample, run)
// row order and fixed number formatting, so equal results give equal bytes.
void export_csv(const ExperimentResult& result, const std::string& dir);

// Deterministic number formatting shared by all CSV writers.
std::string csv_num(double x);

}  // namespace icmlab

#endif
