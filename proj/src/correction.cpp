#include "icmlab/correction.hpp"

#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace icmlab {

double PartialCascadeProfile::total() const {
    return std::accumulate(per_level_sizes.begin(), per_level_sizes.end(), 0.0);
}

PartialCascadeProfile profile_from_trace(const DiffusionTrace& trace,
                                         const Graph& g_partial, double rho,
                                         double p) {
    PartialCascadeProfile prof;
    prof.rho = rho;
    prof.p = p;
    prof.fallback_mean_degree =
        g_partial.node_count() > 0
            ? 2.0 * static_cast<double>(g_partial.edge_count()) / g_partial.node_count()
            : 0.0;
    prof.per_level_sizes.assign(trace.horizon + 1, 0.0);
    std::vector<double> deg_sum(trace.horizon + 1, 0.0);
    for (const Activation& a : trace.activations) {
        prof.per_level_sizes[a.time] += 1.0;
        deg_sum[a.time] += g_partial.degree(a.node);
    }
    prof.per_level_mean_degree.resize(trace.horizon + 1);
    for (std::uint32_t t = 0; t <= trace.horizon; ++t)
        prof.per_level_mean_degree[t] = prof.per_level_sizes[t] > 0
                                            ? deg_sum[t] / prof.per_level_sizes[t]
                                            : prof.fallback_mean_degree;
    prof.seed_count = prof.per_level_sizes.empty() ? 0.0 : prof.per_level_sizes[0];
    return prof;
}

namespace {
void check_rho(double rho) {
    if (rho < 0.0 || rho >= 1.0)
        throw std::invalid_argument("correction: rho must be in [0,1)");
}
}  // namespace

CorrectionEstimate sice(const PartialCascadeProfile& profile, bool literal) {
    check_rho(profile.rho);
    const double sigma_p = profile.total();
    CorrectionEstimate est;
    est.method = CorrectionMethod::sice;
    est.literal = literal;
    if (literal)
        est.sigma_hat = sigma_p / (1.0 - profile.rho);
    else
        est.sigma_hat =
            profile.seed_count + (sigma_p - profile.seed_count) / (1.0 - profile.rho);
    return est;
}

CorrectionEstimate rece(const PartialCascadeProfile& profile) {
    check_rho(profile.rho);
    if (profile.per_level_sizes.empty())
        throw std::invalid_argument("rece: empty profile");

    CorrectionEstimate est;
    est.method = CorrectionMethod::rece;
    est.per_level.resize(profile.per_level_sizes.size());
    est.per_level[0] = profile.per_level_sizes[0];  // seeds are visible
    for (std::size_t t = 1; t < profile.per_level_sizes.size(); ++t) {
        est.per_level[t] = profile.per_level_sizes[t] / (1.0 - profile.rho);
        if (t >= 2) {
            const double surplus = est.per_level[t - 1] - profile.per_level_sizes[t - 1];
            const double deg = profile.per_level_sizes[t - 1] > 0
                                   ? profile.per_level_mean_degree[t - 1]
                                   : profile.fallback_mean_degree;
            est.per_level[t] += surplus * deg * profile.p;
        }
    }
    est.sigma_hat =
        std::accumulate(est.per_level.begin(), est.per_level.end(), 0.0);
    return est;
}

double correction_error(double sigma, double sigma_hat) {
    if (sigma <= 0.0) throw std::invalid_argument("correction_error: sigma must be > 0");
    return std::abs(sigma - sigma_hat) / sigma;
}

const char* method_name(CorrectionMethod m) {
    switch (m) {
        case CorrectionMethod::partial: return "partial";
        case CorrectionMethod::sice: return "sice";
        case CorrectionMethod::rece: return "rece";
    }
    return "?";
}

void save_profile(const PartialCascadeProfile& profile, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write profile: " + path);
    out << "# rho=" << profile.rho << " p=" << profile.p
        << " fallback_mean_degree=" << profile.fallback_mean_degree << '\n';
    out << "level,size,mean_degree\n";
    for (std::size_t t = 0; t < profile.per_level_sizes.size(); ++t)
        out << t << ',' << profile.per_level_sizes[t] << ','
            << profile.per_level_mean_degree[t] << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

PartialCascadeProfile load_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open profile: " + path);
    PartialCascadeProfile prof;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ss(line.substr(1));
            std::string tok;
            while (ss >> tok) {
                auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = tok.substr(0, eq);
                const double val = std::stod(tok.substr(eq + 1));
                if (key == "rho") prof.rho = val;
                else if (key == "p") prof.p = val;
                else if (key == "fallback_mean_degree") prof.fallback_mean_degree = val;
            }
            continue;
        }
        if (line.rfind("level,", 0) == 0) continue;  // header
        std::istringstream ss(line);
        std::string cell;
        double vals[3];
        for (int k = 0; k < 3; ++k) {
            if (!std::getline(ss, cell, ','))
                throw std::runtime_error(path + ": malformed profile row");
            vals[k] = std::stod(cell);
        }
        prof.per_level_sizes.push_back(vals[1]);
        prof.per_level_mean_degree.push_back(vals[2]);
    }
    if (prof.per_level_sizes.empty())
        throw std::runtime_error(path + ": empty profile");
    prof.seed_count = prof.per_level_sizes[0];
    return prof;
}

}  // namespace icmlab
