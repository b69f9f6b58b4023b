#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "multinet/multinet.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

using namespace multinet;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

// Shared state for one CLI invocation; argv is kept verbatim for the manifest.
struct Invocation {
  std::vector<std::string> argv;
  bool allow_rerun = true;
};

void writeManifest(const fs::path& manifest_path, const std::string& subcommand,
                   const Invocation& inv, const ordered_json& params,
                   const ordered_json& seed, const std::vector<std::string>& inputs,
                   const std::vector<std::string>& outputs, double seconds) {
  ordered_json m;
  m["tool"] = "multinet";
  m["version"] = kVersion;
  m["subcommand"] = subcommand;
  m["argv"] = inv.argv;
  m["parameters"] = params;
  m["seed"] = seed;
  m["inputs"] = inputs;
  m["outputs"] = outputs;
  m["wall_clock_seconds"] = seconds;
  writeFileAtomic(manifest_path, m.dump(2) + "\n");
}

void sayWrote(const fs::path& path) { std::cout << "wrote " << path.string() << "\n"; }

// Carries a nested command's exit code out of a rerun callback.
struct NestedExit {
  int code;
};

fs::path stemOf(const fs::path& path) {
  fs::path stem = path;
  stem.replace_extension();
  return stem;
}

std::vector<std::string> columnNames(const std::string& prefix, Index count, int base) {
  std::vector<std::string> names;
  for (Index c = 0; c < count; ++c)
    names.push_back(prefix + std::to_string(base + static_cast<int>(c)));
  return names;
}

void binarizeTensor(Tensor3d& t, double threshold) {
  for (Index idx = 0; idx < t.size(); ++idx)
    t.values()[idx] = t.values()[idx] > threshold ? 1.0 : 0.0;
}

// ---- shared embed input options ----

struct EmbedInput {
  std::string input;
  std::string dataset;
  double binarize = 0;
  bool has_binarize = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("-i,--input", input, "input tensor (TNS3 file)")->required();
    cmd->add_option("--dataset", dataset,
                    "validate the input against a bundled dataset descriptor");
    auto* b = cmd->add_option("--binarize", binarize,
                              "replace entries: 1 if strictly above this threshold, else 0");
    b->each([this](const std::string&) { has_binarize = true; });
  }

  Tensor3d load(std::vector<std::string>& inputs) const {
    inputs.push_back(input);
    Tensor3d t = dataset.empty() ? readTns(input).tensor : loadDataset(input, dataset);
    Tensor3d result = std::move(t);
    if (has_binarize) binarizeTensor(result, binarize);
    return result;
  }

  void describe(ordered_json& params) const {
    params["input"] = input;
    if (!dataset.empty()) params["dataset"] = dataset;
    if (has_binarize) params["binarize"] = binarize;
  }
};

ItemKind itemKindFromString(const std::string& name) {
  if (name == "n" || name == "node") return ItemKind::kNode;
  if (name == "N" || name == "network" || name == "layer") return ItemKind::kNetwork;
  throw ArgumentError("unknown item type '" + name + "' (expected n or N)");
}

void writeLabelsCsv(const std::vector<int>& labels, const fs::path& path) {
  std::string body = "label\n";
  for (int lab : labels) body += std::to_string(lab) + "\n";
  writeFileAtomic(path, body);
}

int dispatch(const Invocation& inv);

// ---- generate ----

void setupGenerate(CLI::App& app, const Invocation& inv) {
  auto* generate = app.add_subcommand("generate", "sample synthetic multilayer networks");
  generate->require_subcommand(1);

  // mmsbm
  {
    auto* cmd = generate->add_subcommand(
        "mmsbm", "mixture multilayer stochastic block model");
    auto n = std::make_shared<long long>(0);
    auto m = std::make_shared<long long>(1);
    auto L = std::make_shared<long long>(1);
    auto K = std::make_shared<long long>(1);
    auto d = std::make_shared<double>(0);
    auto r = std::make_shared<double>(0);
    auto seed = std::make_shared<unsigned long long>(0);
    auto out = std::make_shared<std::string>();
    cmd->add_option("--n", *n, "nodes per layer")->required();
    cmd->add_option("--m", *m, "number of layer types")->required();
    cmd->add_option("--L", *L, "number of layers")->required();
    cmd->add_option("--K", *K, "communities per type")->required();
    auto* d_opt = cmd->add_option("--d", *d, "expected average degree (default n/4)");
    auto* r_opt = cmd->add_option("--r", *r, "out-in probability ratio (default 0.4)");
    cmd->add_option("--seed", *seed, "random seed")->default_val(0);
    cmd->add_option("-o,--output", *out, "output tensor path")->required();
    cmd->callback([=, &inv]() {
      Timer timer;
      MmsbmParams params;
      params.n = *n;
      params.m = *m;
      params.L = *L;
      params.K = *K;
      if (d_opt->count()) params.d = *d;
      if (r_opt->count()) params.r = *r;
      params.seed = *seed;
      const GenList gen = generateMmsbm(params);

      const fs::path out_path = *out;
      const fs::path stem = stemOf(out_path);
      std::vector<std::string> outputs;
      writeTns(gen.tensor, out_path);
      outputs.push_back(out_path.string());
      const fs::path layers_path = stem.string() + ".layers.txt";
      writeIntLabels(gen.truth.layer_types, layers_path);
      outputs.push_back(layers_path.string());
      for (std::size_t type = 0; type < gen.truth.memberships.size(); ++type) {
        const fs::path nodes_path =
            stem.string() + ".type" + std::to_string(type) + ".nodes.txt";
        writeIntLabels(gen.truth.memberships[type], nodes_path);
        outputs.push_back(nodes_path.string());
      }

      const double d_used = params.d.value_or(static_cast<double>(params.n) / 4.0);
      const double r_used = params.r.value_or(0.4);
      const auto block = mmsbmBlockProbabilities(params.n, params.K, d_used, r_used);
      ordered_json p;
      p["n"] = *n;
      p["m"] = *m;
      p["L"] = *L;
      p["K"] = *K;
      p["d"] = d_used;
      p["r"] = r_used;
      p["p_in"] = block.p_in;
      p["p_out"] = block.p_out;
      p["output"] = *out;
      writeManifest(out_path.string() + ".manifest.json", "generate mmsbm", inv, p, *seed,
                    {}, outputs, timer.seconds());
      for (const auto& f : outputs) sayWrote(f);
    });
  }

  // mmlsm
  {
    auto* cmd = generate->add_subcommand("mmlsm", "mixture multilayer latent space model");
    auto n = std::make_shared<long long>(0);
    auto m = std::make_shared<long long>(1);
    auto L = std::make_shared<long long>(1);
    auto rank = std::make_shared<long long>(1);
    auto u_mean = std::make_shared<double>(0.5);
    auto cmax = std::make_shared<double>(1.0);
    auto d = std::make_shared<double>(0);
    auto int_type = std::make_shared<std::string>("Uniform");
    auto kernel = std::make_shared<std::string>("logit");
    auto scale_par = std::make_shared<double>(1.0);
    auto seed = std::make_shared<unsigned long long>(0);
    auto out = std::make_shared<std::string>();
    cmd->add_option("--n", *n, "nodes per layer")->required();
    cmd->add_option("--m", *m, "number of layer types")->required();
    cmd->add_option("--L", *L, "number of layers")->required();
    cmd->add_option("--rank", *rank, "latent dimension")->required();
    cmd->add_option("--u-mean", *u_mean, "mean of latent position entries");
    cmd->add_option("--cmax", *cmax, "core entry bound");
    auto* d_opt = cmd->add_option("--d", *d, "target expected average degree");
    cmd->add_option("--int-type", *int_type, "core entry distribution")
        ->check(CLI::IsMember({"Uniform", "Norm", "uniform", "norm"}));
    cmd->add_option("--kernel", *kernel, "link function")
        ->check(CLI::IsMember({"logit", "probit"}));
    cmd->add_option("--scale-par", *scale_par, "divisor applied to theta");
    cmd->add_option("--seed", *seed, "random seed")->default_val(0);
    cmd->add_option("-o,--output", *out, "output tensor path")->required();
    cmd->callback([=, &inv]() {
      Timer timer;
      MmlsmParams params;
      params.n = *n;
      params.m = *m;
      params.L = *L;
      params.rank = *rank;
      params.u_mean = *u_mean;
      params.cmax = *cmax;
      if (d_opt->count()) params.d = *d;
      params.int_type = coreEntryDistFromString(*int_type);
      params.kernel_fun = linkTypeFromString(*kernel);
      params.scale_par = *scale_par;
      params.seed = *seed;
      const GenList gen = generateMmlsm(params);

      const fs::path out_path = *out;
      const fs::path stem = stemOf(out_path);
      std::vector<std::string> outputs;
      writeTns(gen.tensor, out_path);
      outputs.push_back(out_path.string());
      const fs::path layers_path = stem.string() + ".layers.txt";
      writeIntLabels(gen.truth.layer_types, layers_path);
      outputs.push_back(layers_path.string());
      const fs::path u_path = stem.string() + ".U.csv";
      writeCsvMatrix(gen.truth.latent_u, u_path,
                     columnNames("u", gen.truth.latent_u.cols(), 0));
      outputs.push_back(u_path.string());
      const fs::path w_path = stem.string() + ".W.csv";
      writeCsvMatrix(gen.truth.latent_w, w_path,
                     columnNames("w", gen.truth.latent_w.cols(), 0));
      outputs.push_back(w_path.string());
      const fs::path c_path = stem.string() + ".C.tns";
      writeTns(gen.truth.latent_core, c_path);
      outputs.push_back(c_path.string());

      ordered_json p;
      p["n"] = *n;
      p["m"] = *m;
      p["L"] = *L;
      p["rank"] = *rank;
      p["u_mean"] = *u_mean;
      p["cmax"] = *cmax;
      if (d_opt->count()) p["d"] = *d;
      p["int_type"] = *int_type;
      p["kernel"] = *kernel;
      p["scale_par"] = *scale_par;
      p["output"] = *out;
      writeManifest(out_path.string() + ".manifest.json", "generate mmlsm", inv, p, *seed,
                    {}, outputs, timer.seconds());
      for (const auto& f : outputs) sayWrote(f);
    });
  }
}

// ---- embed ----

void setupEmbed(CLI::App& app, const Invocation& inv) {
  auto* embed = app.add_subcommand("embed", "tensor embeddings of a multilayer network");
  embed->require_subcommand(1);

  // twist and tucker share everything but the iteration type
  for (const char* name : {"twist", "tucker"}) {
    const bool is_twist = std::string(name) == "twist";
    auto* cmd = embed->add_subcommand(
        name, is_twist ? "regularized alternating power iteration"
                       : "plain alternating power iteration (HOOI)");
    auto input = std::make_shared<EmbedInput>();
    input->attach(cmd);
    auto ranks = std::make_shared<std::vector<long long>>(std::vector<long long>{2, 2, 2});
    auto delta1 = std::make_shared<double>(1000.0);
    auto delta2 = std::make_shared<double>(1000.0);
    auto max_iter = std::make_shared<int>(25);
    auto tol = std::make_shared<double>(1e-5);
    auto out = std::make_shared<std::string>();
    cmd->add_option("--ranks", *ranks, "core ranks r1,r2,r3")->delimiter(',');
    cmd->add_option("--delta1", *delta1, "mode-1 row norm cap");
    cmd->add_option("--delta2", *delta2, "mode-2 row norm cap");
    cmd->add_option("--max-iter", *max_iter, "maximum sweeps");
    cmd->add_option("--tol", *tol, "projector-change tolerance");
    cmd->add_option("-o,--output", *out, "output prefix")->required();
    cmd->callback([=, &inv]() {
      Timer timer;
      if (ranks->size() != 3)
        throw ArgumentError("--ranks needs exactly three values, got " +
                            std::to_string(ranks->size()));
      std::vector<std::string> inputs;
      const Tensor3d t = input->load(inputs);
      TwistConfig cfg;
      cfg.ranks = {(*ranks)[0], (*ranks)[1], (*ranks)[2]};
      cfg.type = is_twist ? IterationType::kTwist : IterationType::kTucker;
      cfg.delta1 = *delta1;
      cfg.delta2 = *delta2;
      cfg.max_iter = *max_iter;
      cfg.tol = *tol;
      const auto init = initializationMmsbm(t, cfg.ranks);
      const auto result = powerIteration(t, cfg, init);

      std::vector<std::string> outputs;
      const fs::path nodes_path = *out + ".nodes.csv";
      writeCsvMatrix(result.node_embedding, nodes_path,
                     columnNames("e", result.node_embedding.cols(), 1));
      outputs.push_back(nodes_path.string());
      const fs::path layers_path = *out + ".layers.csv";
      writeCsvMatrix(result.layer_embedding, layers_path,
                     columnNames("e", result.layer_embedding.cols(), 1));
      outputs.push_back(layers_path.string());
      const fs::path core_path = *out + ".core.tns";
      writeTns(result.core, core_path);
      outputs.push_back(core_path.string());

      ordered_json p;
      input->describe(p);
      p["ranks"] = *ranks;
      p["type"] = name;
      p["delta1"] = *delta1;
      p["delta2"] = *delta2;
      p["max_iter"] = *max_iter;
      p["tol"] = *tol;
      p["output"] = *out;
      writeManifest(*out + ".manifest.json", std::string("embed ") + name, inv, p, nullptr,
                    inputs, outputs, timer.seconds());
      std::cout << "converged=" << (result.converged ? 1 : 0)
                << " iterations=" << result.iterations << "\n";
      for (const auto& f : outputs) sayWrote(f);
    });
  }

  // sum-adj and m3-sc: flat spectral baselines
  for (const char* name : {"sum-adj", "m3-sc"}) {
    const bool default_node = std::string(name) == "sum-adj";
    auto* cmd = embed->add_subcommand(
        name, default_node ? "eigenvectors of the layer sum (node embedding)"
                           : "singular vectors of the mode-3 unfolding (layer embedding)");
    auto input = std::make_shared<EmbedInput>();
    input->attach(cmd);
    auto rank = std::make_shared<long long>(0);
    auto type = std::make_shared<std::string>(default_node ? "node" : "layer");
    auto out = std::make_shared<std::string>();
    cmd->add_option("--rank", *rank, "embedding dimension")->required();
    cmd->add_option("--embedding-type", *type, "node or layer")
        ->check(CLI::IsMember({"node", "layer"}));
    cmd->add_option("-o,--output", *out, "output prefix")->required();
    cmd->callback([=, &inv]() {
      Timer timer;
      std::vector<std::string> inputs;
      const Tensor3d t = input->load(inputs);
      const bool node = *type == "node";
      const Eigen::MatrixXd emb = specEmbedding(
          t, *rank, node ? SpecEmbeddingType::kNode : SpecEmbeddingType::kLayer);

      const fs::path emb_path = *out + (node ? ".nodes.csv" : ".layers.csv");
      writeCsvMatrix(emb, emb_path, columnNames("e", emb.cols(), 1));

      ordered_json p;
      input->describe(p);
      p["rank"] = *rank;
      p["embedding_type"] = *type;
      p["output"] = *out;
      writeManifest(*out + ".manifest.json", std::string("embed ") + name, inv, p, nullptr,
                    inputs, {emb_path.string()}, timer.seconds());
      sayWrote(emb_path);
    });
  }

  // lsm
  {
    auto* cmd = embed->add_subcommand("lsm", "projected gradient latent space fit");
    auto input = std::make_shared<EmbedInput>();
    input->attach(cmd);
    auto rank = std::make_shared<long long>(0);
    auto M = std::make_shared<long long>(0);
    auto cmax = std::make_shared<double>(0);
    auto eta = std::make_shared<double>(1e-4);
    auto tmax = std::make_shared<int>(35);
    auto link = std::make_shared<std::string>("logit");
    auto rd = std::make_shared<std::string>("Non");
    auto sgma = std::make_shared<double>(1.0);
    auto sample_size = std::make_shared<long long>(5000);
    auto init_name = std::make_shared<std::string>("spec");
    auto perturb = std::make_shared<double>(0.1);
    auto seed = std::make_shared<unsigned long long>(0);
    auto truth = std::make_shared<std::string>();
    auto no_show = std::make_shared<bool>(false);
    auto out = std::make_shared<std::string>();
    cmd->add_option("--rank", *rank, "latent dimension")->required();
    cmd->add_option("--M", *M, "number of layer types")->required();
    cmd->add_option("--cmax", *cmax, "entrywise core bound")->required();
    cmd->add_option("--eta", *eta, "gradient step size");
    cmd->add_option("--tmax", *tmax, "gradient steps");
    cmd->add_option("--link", *link, "link function")
        ->check(CLI::IsMember({"logit", "probit", "poisson"}));
    cmd->add_option("--rd", *rd, "gradient mode: Non (full) or rand (sampled)")
        ->check(CLI::IsMember({"Non", "rand"}));
    cmd->add_option("--sgma", *sgma, "link scale");
    cmd->add_option("--sample-size", *sample_size, "entries per sampled gradient step");
    cmd->add_option("--init", *init_name, "initialization: spec, rand or warm")
        ->check(CLI::IsMember({"spec", "rand", "warm"}));
    cmd->add_option("--perturb", *perturb, "initialization noise scale");
    cmd->add_option("--seed", *seed, "seed for init noise and sampled gradients");
    cmd->add_option("--truth", *truth,
                    "generator output stem providing latent truth (warm start)");
    cmd->add_flag("--no-show", *no_show, "suppress per-iteration loss lines on stderr");
    cmd->add_option("-o,--output", *out, "output prefix")->required();
    cmd->callback([=, &inv]() {
      Timer timer;
      std::vector<std::string> inputs;
      GenList gen;
      gen.tensor = input->load(inputs);
      if (!truth->empty()) {
        const std::string stem = *truth;
        gen.truth.latent_u = readCsvMatrix(stem + ".U.csv");
        gen.truth.latent_w = readCsvMatrix(stem + ".W.csv");
        gen.truth.latent_core = readTns(stem + ".C.tns").tensor;
        gen.truth.has_latent = true;
        inputs.push_back(stem + ".U.csv");
        inputs.push_back(stem + ".W.csv");
        inputs.push_back(stem + ".C.tns");
      }
      const LsmStart start = lsmStartFromString(*init_name);
      if (start == LsmStart::kWarm && truth->empty())
        throw ArgumentError("--init warm requires --truth <generator output stem>");

      const LsmInit init = initializationLsm(gen, *rank, *M, start, *perturb, *seed);
      GdConfig cfg;
      cfg.cmax = *cmax;
      cfg.eta_outer = *eta;
      cfg.tmax_outer = *tmax;
      cfg.p_type = linkTypeFromString(*link);
      cfg.rd = gradientModeFromString(*rd);
      cfg.show = !*no_show;
      cfg.sgma = *sgma;
      cfg.sample_size = *sample_size;
      cfg.sample_seed = *seed;
      const LsmResult result = projectedGd(init, cfg);

      std::vector<std::string> outputs;
      const fs::path u_path = *out + ".U.csv";
      writeCsvMatrix(result.u, u_path, columnNames("u", result.u.cols(), 0));
      outputs.push_back(u_path.string());
      const fs::path w_path = *out + ".W.csv";
      writeCsvMatrix(result.w, w_path, columnNames("w", result.w.cols(), 0));
      outputs.push_back(w_path.string());
      const fs::path c_path = *out + ".C.tns";
      writeTns(result.c, c_path);
      outputs.push_back(c_path.string());
      Eigen::MatrixXd trace(static_cast<Index>(result.loss_trace.size()), 1);
      for (Index i = 0; i < trace.rows(); ++i)
        trace(i, 0) = result.loss_trace[static_cast<std::size_t>(i)];
      const fs::path loss_path = *out + ".loss.csv";
      writeCsvMatrix(trace, loss_path, {"loss"});
      outputs.push_back(loss_path.string());

      ordered_json p;
      input->describe(p);
      p["rank"] = *rank;
      p["M"] = *M;
      p["cmax"] = *cmax;
      p["eta"] = *eta;
      p["tmax"] = *tmax;
      p["link"] = *link;
      p["rd"] = *rd;
      p["sgma"] = *sgma;
      p["sample_size"] = *sample_size;
      p["init"] = *init_name;
      p["perturb"] = *perturb;
      if (!truth->empty()) p["truth"] = *truth;
      p["output"] = *out;
      writeManifest(*out + ".manifest.json", "embed lsm", inv, p, *seed, inputs, outputs,
                    timer.seconds());
      std::cout << "loss_initial=" << formatDouble(result.loss_trace.front())
                << " loss_final=" << formatDouble(result.loss_trace.back()) << "\n";
      for (const auto& f : outputs) sayWrote(f);
    });
  }
}

// ---- cluster ----

void setupCluster(CLI::App& app, const Invocation& inv) {
  auto* cluster = app.add_subcommand("cluster", "cluster embedding rows");
  cluster->require_subcommand(1);

  {
    auto* cmd = cluster->add_subcommand("kmeans", "k-means with k-means++ restarts");
    auto input = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto k = std::make_shared<int>(0);
    auto seed = std::make_shared<unsigned long long>(0);
    auto normalize = std::make_shared<bool>(false);
    auto type = std::make_shared<std::string>("n");
    cmd->add_option("-i,--input", *input, "embedding CSV")->required();
    cmd->add_option("-o,--output", *out, "labels CSV")->required();
    cmd->add_option("--k", *k, "number of clusters")->required();
    cmd->add_option("--seed", *seed, "random seed");
    cmd->add_flag("--normalize", *normalize, "project rows onto the unit sphere first");
    cmd->add_option("--type", *type, "item kind: n (nodes) or N (networks)")
        ->check(CLI::IsMember({"n", "N"}));
    cmd->callback([=, &inv]() {
      Timer timer;
      const Eigen::MatrixXd emb = readCsvMatrix(*input);
      KmeansOptions opts;
      opts.normalize_rows = *normalize;
      const ClusterAssignment result =
          communityClusterKm(emb, itemKindFromString(*type), *k, *seed, opts);
      writeLabelsCsv(result.labels, *out);
      ordered_json p;
      p["input"] = *input;
      p["k"] = *k;
      p["normalize"] = *normalize;
      p["type"] = *type;
      p["output"] = *out;
      writeManifest(*out + ".manifest.json", "cluster kmeans", inv, p, *seed, {*input},
                    {*out}, timer.seconds());
      std::cout << "clusters=" << result.clusters << "\n";
      sayWrote(*out);
    });
  }

  {
    auto* cmd = cluster->add_subcommand("dbscan", "density clustering");
    auto input = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto eps = std::make_shared<double>(0.05);
    auto min_pts = std::make_shared<int>(5);
    auto type = std::make_shared<std::string>("n");
    cmd->add_option("-i,--input", *input, "embedding CSV")->required();
    cmd->add_option("-o,--output", *out, "labels CSV")->required();
    cmd->add_option("--eps", *eps, "neighborhood radius");
    cmd->add_option("--min-pts", *min_pts, "neighbors needed for a core point");
    cmd->add_option("--type", *type, "item kind: n (nodes) or N (networks)")
        ->check(CLI::IsMember({"n", "N"}));
    cmd->callback([=, &inv]() {
      Timer timer;
      const Eigen::MatrixXd emb = readCsvMatrix(*input);
      const ClusterAssignment result =
          communityClusterDbscan(emb, itemKindFromString(*type), *eps, *min_pts);
      writeLabelsCsv(result.labels, *out);
      long noise = 0;
      for (int lab : result.labels) noise += lab == -1 ? 1 : 0;
      ordered_json p;
      p["input"] = *input;
      p["eps"] = *eps;
      p["min_pts"] = *min_pts;
      p["type"] = *type;
      p["output"] = *out;
      writeManifest(*out + ".manifest.json", "cluster dbscan", inv, p, nullptr, {*input},
                    {*out}, timer.seconds());
      std::cout << "clusters=" << result.clusters << " noise=" << noise << "\n";
      sayWrote(*out);
    });
  }

  {
    auto* cmd = cluster->add_subcommand("eval", "misclustering rate against ground truth");
    auto input = std::make_shared<std::string>();
    auto truth = std::make_shared<std::string>();
    cmd->add_option("-i,--input", *input, "predicted labels file")->required();
    cmd->add_option("--truth", *truth, "ground-truth labels file")->required();
    cmd->callback([=]() {
      const std::vector<int> pred = readIntLabels(*input);
      const std::vector<int> target = readIntLabels(*truth);
      if (pred.size() != target.size())
        throw ValidationError("label counts differ: " + std::to_string(pred.size()) +
                              " predicted vs " + std::to_string(target.size()) + " truth");
      const double rate = misclusteringRate(pred, target);
      std::printf("%.6f\n", rate);
    });
  }
}

// ---- plot ----

void setupPlot(CLI::App& app, const Invocation& inv) {
  auto* plot = app.add_subcommand("plot", "render embeddings");
  plot->require_subcommand(1);

  auto* cmd = plot->add_subcommand("embedding", "pairwise scatter panels as SVG");
  auto input = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  auto paxis = std::make_shared<int>(2);
  auto labels_path = std::make_shared<std::string>();
  cmd->add_option("-i,--input", *input, "embedding CSV")->required();
  cmd->add_option("-o,--output", *out, "output SVG path")->required();
  cmd->add_option("--paxis", *paxis, "number of embedding columns to pair");
  cmd->add_option("--labels", *labels_path, "cluster labels used to color points");
  cmd->callback([=, &inv]() {
    Timer timer;
    const Eigen::MatrixXd emb = readCsvMatrix(*input);
    PlotOptions opts;
    opts.paxis = *paxis;
    std::vector<std::string> inputs{*input};
    if (!labels_path->empty()) {
      opts.labels = readIntLabels(*labels_path);
      inputs.push_back(*labels_path);
    }
    const std::string svg = renderEmbeddingSvg(emb, opts);
    writeFileAtomic(*out, svg);
    const fs::path points_path = stemOf(*out).string() + ".points.csv";
    writeCsvMatrix(plottedColumns(emb, opts.paxis), points_path,
                   columnNames("e", opts.paxis, 2));
    ordered_json p;
    p["input"] = *input;
    p["paxis"] = *paxis;
    if (!labels_path->empty()) p["labels"] = *labels_path;
    p["output"] = *out;
    writeManifest(*out + ".manifest.json", "plot embedding", inv, p, nullptr, inputs,
                  {*out, points_path.string()}, timer.seconds());
    sayWrote(*out);
    sayWrote(points_path);
  });
}

// ---- datasets and rerun ----

void setupDatasets(CLI::App& app) {
  auto* cmd = app.add_subcommand("datasets", "list bundled dataset descriptors");
  cmd->callback([]() {
    for (const auto& d : datasetDescriptors())
      std::cout << d.name << " (" << d.n1 << ", " << d.n2 << ", " << d.n3 << "): "
                << d.description << "\n";
  });
}

void setupRerun(CLI::App& app, const Invocation& inv) {
  auto* cmd = app.add_subcommand("rerun", "re-execute a command from its manifest");
  auto manifest_path = std::make_shared<std::string>();
  cmd->add_option("manifest", *manifest_path, "manifest JSON written by a previous run")
      ->required();
  cmd->callback([=, &inv]() {
    if (!inv.allow_rerun) throw ArgumentError("rerun manifests cannot nest");
    std::ifstream in(*manifest_path);
    if (!in) throw ParseError(*manifest_path + ": cannot open file");
    ordered_json m;
    try {
      in >> m;
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(*manifest_path + ": " + e.what());
    }
    if (!m.contains("argv") || !m["argv"].is_array())
      throw ParseError(*manifest_path + ": manifest has no argv array");
    Invocation nested;
    nested.argv = m["argv"].get<std::vector<std::string>>();
    nested.allow_rerun = false;
    const int code = dispatch(nested);
    if (code != 0) throw NestedExit{code};
  });
}

int dispatch(const Invocation& inv) {
  CLI::App app{"mixture multilayer network analysis"};
  app.set_version_flag("--version", std::string("multinet ") + kVersion);
  app.require_subcommand(1);
  setupGenerate(app, inv);
  setupEmbed(app, inv);
  setupCluster(app, inv);
  setupPlot(app, inv);
  setupDatasets(app);
  setupRerun(app, inv);

  std::vector<const char*> argv;
  argv.push_back("multinet");
  for (const auto& a : inv.argv) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const NestedExit& e) {
    return e.code;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("MULTINET_THREADS")) {
    char* end = nullptr;
    const long threads = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && threads >= 1)
      Eigen::setNbThreads(static_cast<int>(threads));
    else
      std::cerr << "warning: ignoring invalid MULTINET_THREADS='" << env << "'\n";
  }
  Invocation inv;
  for (int i = 1; i < argc; ++i) inv.argv.push_back(argv[i]);
  return dispatch(inv);
}
