// Command-line surface for tree/polytree learning: synthetic model
// generation, simulation, the two learners, divergence reporting, hard
// instance generation and the benchmark harness.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "polytree/bench.hpp"
#include "polytree/chow_liu.hpp"
#include "polytree/errors.hpp"
#include "polytree/graph_ops.hpp"
#include "polytree/hard_instances.hpp"
#include "polytree/io.hpp"
#include "polytree/kl.hpp"
#include "polytree/pc_tree.hpp"
#include "polytree/rng.hpp"

namespace {

using namespace polytree;

void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-")
        std::cout << content << '\n';
    else
        write_text_file(path, content + "\n");
}

SampleMatrix load_samples(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open data file: " + path);
    return read_sample_csv(in);
}

int run(int argc, char** argv) {
    CLI::App app{"Gaussian tree and polytree structure learning"};
    app.require_subcommand(1);

    // gen-tree
    auto* gen_tree = app.add_subcommand("gen-tree", "Generate a uniform random directed tree");
    int gt_d = 10;
    std::uint64_t gt_seed = 1;
    std::string gt_out, gt_model_out;
    gen_tree->add_option("--d", gt_d, "Number of nodes")->required();
    gen_tree->add_option("--seed", gt_seed, "RNG seed")->required();
    gen_tree->add_option("--out", gt_out, "Tree JSON output path (default stdout)");
    gen_tree->add_option("--model-out", gt_model_out,
                         "Also emit a model JSON with coefficients drawn from "
                         "+-[0.1,0.5) and unit noise");

    // simulate
    auto* simulate_cmd = app.add_subcommand("simulate", "Draw i.i.d. samples from a model");
    std::string sim_model, sim_out, sim_noise = "gaussian";
    long sim_n = 1000;
    std::uint64_t sim_seed = 1;
    bool sim_header = false;
    simulate_cmd->add_option("--model", sim_model, "Model JSON path")->required();
    simulate_cmd->add_option("--n", sim_n, "Sample count")->required();
    simulate_cmd->add_option("--noise", sim_noise, "gaussian|uniform|laplace");
    simulate_cmd->add_option("--seed", sim_seed, "RNG seed")->required();
    simulate_cmd->add_option("--out", sim_out, "CSV output path (default stdout)");
    simulate_cmd->add_flag("--header", sim_header, "Emit x0,...,x{d-1} header row");

    // chow-liu
    auto* chow_cmd = app.add_subcommand("chow-liu", "Learn a maximum-MI spanning tree");
    std::string cl_data, cl_out, cl_skeleton_out;
    chow_cmd->add_option("--data", cl_data, "Sample CSV path")->required();
    chow_cmd->add_option("--out", cl_out, "Directed tree JSON output (default stdout)");
    chow_cmd->add_option("--skeleton-out", cl_skeleton_out, "Skeleton JSON output");

    // pc-tree
    auto* pc_cmd = app.add_subcommand("pc-tree", "Constraint-based CPDAG learning");
    std::string pc_data, pc_out;
    double pc_cutoff = 0.05;
    pc_cmd->add_option("--data", pc_data, "Sample CSV path")->required();
    pc_cmd->add_option("--cutoff", pc_cutoff, "CI rejection cutoff (default 0.05)");
    pc_cmd->add_option("--out", pc_out, "CPDAG JSON output (default stdout)");

    // kl
    auto* kl_cmd = app.add_subcommand("kl", "Divergence from a model to a tree projection");
    std::string kl_model, kl_tree;
    kl_cmd->add_option("--model", kl_model, "Model JSON path")->required();
    kl_cmd->add_option("--tree", kl_tree, "Tree JSON path")->required();

    // gen-hard
    auto* hard_cmd = app.add_subcommand("gen-hard", "Generate adversarial instances");
    std::string hard_kind, hard_out;
    double hard_epsilon = 0.1, hard_c = 0.2;
    int hard_d = 8;
    std::uint64_t hard_seed = 1;
    hard_cmd->add_option("kind", hard_kind, "nonrealizable|realizable|structure-lb")->required();
    hard_cmd->add_option("--epsilon", hard_epsilon, "Gadget parameter");
    hard_cmd->add_option("--c", hard_c, "Faithfulness parameter (structure-lb)");
    hard_cmd->add_option("--d", hard_d, "Node count (structure-lb)");
    hard_cmd->add_option("--seed", hard_seed, "RNG seed (structure-lb)");
    hard_cmd->add_option("--out", hard_out, "Output path (default stdout)");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Run the benchmark harness");
    std::string bench_config_path, bench_out, bench_summary_out;
    bool bench_cpdag = false;
    bench_cmd->add_option("--config", bench_config_path, "Config JSON path")->required();
    bench_cmd->add_option("--out", bench_out, "Results CSV path")->required();
    bench_cmd->add_option("--summary-out", bench_summary_out, "Aggregated summary CSV path");
    bench_cmd->add_flag("--cpdag-shd", bench_cpdag,
                        "Score PC-Tree against the true CPDAG instead of the skeleton");

    CLI11_PARSE(app, argc, argv);

    if (gen_tree->parsed()) {
        const DirectedTree tree = random_directed_tree(gt_d, gt_seed);
        emit(gt_out, directed_tree_to_json(tree));
        if (!gt_model_out.empty()) {
            const std::vector<double> betas =
                agnostic_beta_sampler(gt_d, 0.0, splitmix64(gt_seed));
            emit(gt_model_out, model_to_json(GaussianSem(tree.dag(), betas,
                                                         std::vector<double>(gt_d, 1.0))));
        }
    } else if (simulate_cmd->parsed()) {
        const GaussianSem sem = model_from_json(read_text_file(sim_model));
        const SampleMatrix data = sample(sem, sim_n, parse_noise_family(sim_noise), sim_seed);
        if (sim_out.empty() || sim_out == "-") {
            write_sample_csv(data, std::cout, sim_header);
        } else {
            std::ofstream out(sim_out);
            if (!out) throw std::invalid_argument("cannot open output file: " + sim_out);
            write_sample_csv(data, out, sim_header);
        }
    } else if (chow_cmd->parsed()) {
        const ChowLiuResult result = chow_liu(load_samples(cl_data));
        emit(cl_out, directed_tree_to_json(result.tree));
        if (!cl_skeleton_out.empty())
            emit(cl_skeleton_out, skeleton_to_json(result.skeleton.as_skeleton()));
    } else if (pc_cmd->parsed()) {
        const Cpdag cpdag = pc_tree(load_samples(pc_data), pc_cutoff);
        emit(pc_out, cpdag_to_json(cpdag));
    } else if (kl_cmd->parsed()) {
        const GaussianSem sem = model_from_json(read_text_file(kl_model));
        const DirectedTree tree = directed_tree_from_json(read_text_file(kl_tree));
        const KlDecomposition dec = kl_decomposition(sem_to_covariance(sem), tree);
        nlohmann::json j;
        j["mi_sum"] = dec.mi_sum;
        j["joint_entropy"] = dec.joint_entropy;
        j["marginal_entropy_sum"] = dec.marginal_entropy_sum;
        j["kl"] = dec.total;
        std::cout << j.dump(2) << '\n';
    } else if (hard_cmd->parsed()) {
        if (hard_kind == "nonrealizable") {
            emit(hard_out, gadget_pair_to_json(nonrealizable_gadget(hard_epsilon)));
        } else if (hard_kind == "realizable") {
            emit(hard_out, gadget_pair_to_json(realizable_gadget(hard_epsilon)));
        } else if (hard_kind == "structure-lb") {
            emit(hard_out, model_to_json(structure_lb_instance(hard_d, hard_c, hard_seed)));
        } else {
            throw CLI::ValidationError("kind", "expected nonrealizable|realizable|structure-lb");
        }
    } else if (bench_cmd->parsed()) {
        BenchConfig cfg = bench_config_from_json(read_text_file(bench_config_path));
        cfg.cpdag_shd = bench_cpdag;
        const std::vector<TrialRecord> records = run_bench(cfg);
        {
            std::ofstream out(bench_out);
            if (!out) throw std::invalid_argument("cannot open output file: " + bench_out);
            write_records_csv(records, out);
        }
        write_text_file(bench_out + ".meta.json", bench_metadata_json(cfg) + "\n");
        const std::vector<SummaryRow> summary = aggregate(records);
        if (!bench_summary_out.empty()) {
            std::ofstream out(bench_summary_out);
            if (!out)
                throw std::invalid_argument("cannot open output file: " + bench_summary_out);
            write_summary_csv(summary, out);
        } else {
            write_summary_csv(summary, std::cout);
        }
        for (const auto& r : records)
            if (!r.note.empty())
                std::cerr << "trial d=" << r.d << " n=" << r.n << " #" << r.trial << " ("
                          << algorithm_name(r.algorithm) << "): " << r.note << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const degenerate_error& e) {
        std::cerr << "numerical degeneracy: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
