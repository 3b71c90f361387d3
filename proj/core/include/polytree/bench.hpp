#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "polytree/sem.hpp"

namespace polytree {

enum class Algorithm { chow_liu, pc_tree };

std::string algorithm_name(Algorithm a);
Algorithm parse_algorithm(const std::string& name);

enum class BetaMode { iid, agnostic };

struct BenchConfig {
    std::vector<int> d_list;
    std::vector<long> n_list;
    NoiseFamily noise = NoiseFamily::gaussian;
    int trials = 50;
    std::vector<Algorithm> algorithms = {Algorithm::chow_liu, Algorithm::pc_tree};
    double cutoff = 0.05;
    BetaMode beta_mode = BetaMode::iid;
    double z_scale = 0.0;
    std::uint64_t seed = 1;
    bool cpdag_shd = false;  // compare PC-Tree output as a CPDAG instead of a skeleton
    int threads = 0;         // 0 = hardware concurrency
};

struct TrialRecord {
    int d;
    long n;
    NoiseFamily noise;
    Algorithm algorithm;
    int trial;
    std::uint64_t seed;  // per-trial seed
    int shd;
    bool exact;           // shd == 0 and no failure note
    double wall_time_ms;  // measured; everything else is deterministic per seed
    std::string note;     // failure annotation, empty on clean trials
};

struct SummaryRow {
    int d;
    long n;
    NoiseFamily noise;
    Algorithm algorithm;
    int trials;
    double mean_shd;
    double prr;
};

/// Per-trial seed derived from (master, d, n, trial) by chained splitmix64,
/// so any sub-grid reruns with identical streams.
std::uint64_t trial_seed(std::uint64_t master, int d, long n, int trial);

/// One random directed tree, coefficients, simulation, and learning run per
/// (d, n, trial, algorithm). Learned skeletons are compared against the true
/// skeleton (CPDAGs behind the cpdag_shd switch). Records come back sorted
/// by (d, n, algorithm, trial) regardless of worker scheduling; trial
/// failures are recorded as exact=false with a note rather than aborting.
std::vector<TrialRecord> run_bench(const BenchConfig& config);

/// Mean SHD and exact-recovery rate per (d, n, noise, algorithm) group.
std::vector<SummaryRow> aggregate(const std::vector<TrialRecord>& records);

BenchConfig bench_config_from_json(const std::string& text);
std::string bench_metadata_json(const BenchConfig& config);

// CSV columns: d,n,noise,algorithm,trial,seed,shd,exact,wall_time_ms
void write_records_csv(const std::vector<TrialRecord>& records, std::ostream& out);
void write_summary_csv(const std::vector<SummaryRow>& rows, std::ostream& out);

}  // namespace polytree
