// Command-line front-end: Gram computation, structure-matrix dumps,
// classification with nested cross-validation, kernel-PCA embeddings,
// marginal-likelihood fitting, toy-data generation and scaling benchmarks.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "seqk/config_json.hpp"
#include "seqk/cv.hpp"
#include "seqk/cv_json.hpp"
#include "seqk/dataset.hpp"
#include "seqk/global_alignment.hpp"
#include "seqk/gram.hpp"
#include "seqk/hyperfit.hpp"
#include "seqk/metrics.hpp"
#include "seqk/pca.hpp"
#include "seqk/rng.hpp"
#include "seqk/sequence_kernel.hpp"
#include "seqk/structure.hpp"
#include "seqk/toy.hpp"
#include "seqk/version.hpp"

namespace {

using nlohmann::json;
using namespace seqk;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::uint64_t seed = 0;
  int threads = 1;
  bool normalize = true;
  std::string out;
};

struct KernelFlags {
  std::string kernel = "path";
  std::string symbol = "rbf";
  double sigma = 1.0;
  double chv = 0.3;
  double cd = 0.3;
  double alpha = 4.0;
  double poly_c = 1.0;
  int poly_degree = 2;
  int fact_d = 0;
  std::string config_file;
};

void add_kernel_flags(CLI::App* cmd, KernelFlags& k) {
  cmd->add_option("--kernel", k.kernel,
                  "kernel family: path, exponential, polynomial, factorial, ga")
      ->capture_default_str();
  cmd->add_option("--symbol", k.symbol, "symbol kernel: rbf, linear, delta")
      ->capture_default_str();
  cmd->add_option("--sigma", k.sigma, "rbf / ga bandwidth")->capture_default_str();
  cmd->add_option("--chv", k.chv, "path horizontal/vertical weight")->capture_default_str();
  cmd->add_option("--cd", k.cd, "path diagonal weight")->capture_default_str();
  cmd->add_option("--alpha", k.alpha, "exponential structure scale")->capture_default_str();
  cmd->add_option("--poly-c", k.poly_c, "polynomial offset")->capture_default_str();
  cmd->add_option("--poly-degree", k.poly_degree, "polynomial degree")->capture_default_str();
  cmd->add_option("--fact-d", k.fact_d, "factorial shift")->capture_default_str();
  cmd->add_option("--config", k.config_file, "load a kernel configuration JSON (overrides flags)");
}

KernelConfig build_config(const KernelFlags& k, bool normalize) {
  if (!k.config_file.empty()) {
    std::ifstream in(k.config_file);
    if (!in) throw std::runtime_error("cannot open config file: " + k.config_file);
    json j;
    in >> j;
    KernelConfig cfg = config_from_report_json(j);
    cfg.normalize = normalize;
    return cfg;
  }
  KernelConfig cfg;
  cfg.normalize = normalize;
  try {
    cfg.symbol.kind = symbol_kind_from_string(k.symbol);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  cfg.symbol.sigma = k.sigma;
  if (k.kernel == "ga" || k.kernel == "global-alignment") {
    cfg.family = KernelFamily::global_alignment;
    cfg.symbol.kind = SymbolKernelKind::rbf;
    return cfg;
  }
  cfg.family = KernelFamily::decomposable;
  try {
    cfg.structure.kind = structure_kind_from_string(k.kernel);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  cfg.structure.alpha = k.alpha;
  cfg.structure.poly_c = k.poly_c;
  cfg.structure.poly_degree = k.poly_degree;
  cfg.structure.fact_d = k.fact_d;
  cfg.structure.chv = k.chv;
  cfg.structure.cd = k.cd;
  return cfg;
}

void warn_growth(const KernelConfig& cfg) {
  if (cfg.family == KernelFamily::decomposable && path_growth_warning(cfg.structure))
    std::cerr << "warning: 2*C_hv + C_d > 1; structure values grow geometrically with length\n";
}

json base_report(const char* command, const GlobalOptions& g) {
  json j;
  j["command"] = command;
  j["version"] = version_string;
  j["seed"] = g.seed;
  j["threads"] = g.threads;
  j["normalize"] = g.normalize;
  return j;
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
}

std::string require_out(const GlobalOptions& g, const char* what) {
  if (g.out.empty()) throw UsageError(std::string("--out is required for ") + what);
  return g.out;
}

json dataset_summary(const Dataset& d) {
  const LengthStats st = d.length_stats();
  return {{"n", d.size()},
          {"dim", d.dim},
          {"classes", d.class_names},
          {"length_min", st.min},
          {"length_max", st.max},
          {"length_median", st.median}};
}

// ---------------------------------------------------------------- gram ----

int cmd_gram(const GlobalOptions& g, const KernelFlags& kf, const std::string& data_path,
             const std::string& csv_path, double psd_tol) {
  const Dataset data = parse_dataset(data_path);
  const KernelConfig cfg = build_config(kf, g.normalize);
  warn_growth(cfg);

  const GramMatrix gram = build_gram(data.sequences, cfg, g.threads);
  const PsdReport psd = check_psd(gram.values, psd_tol);

  const std::string out = require_out(g, "gram");
  save_gram(gram, out);
  if (!csv_path.empty()) write_gram_csv(gram, csv_path);

  json j = base_report("gram", g);
  j["data"] = data_path;
  j["dataset"] = dataset_summary(data);
  j["n"] = gram.size();
  j["config"] = to_json(cfg);
  j["input_checksum"] = gram.input_checksum;
  j["psd"] = {{"min_eig", psd.min_eig},
              {"max_eig", psd.max_eig},
              {"pass", psd.pass},
              {"tol", psd_tol}};
  j["out"] = out;
  std::cout << j.dump(2) << '\n';
  return psd.pass ? 0 : 1;
}

// ------------------------------------------------------ structure-dump ----

int cmd_structure_dump(const GlobalOptions& g, const KernelFlags& kf, Index lmax) {
  if (lmax < 1 || lmax > 512) throw UsageError("--lmax must lie in [1, 512]");
  KernelConfig cfg = build_config(kf, g.normalize);
  if (cfg.family != KernelFamily::decomposable)
    throw UsageError("structure-dump needs a decomposable structure kernel");
  warn_growth(cfg);

  const StructureMatrix m = build_structure_matrix(cfg.structure, lmax);
  const std::string out = require_out(g, "structure-dump");
  std::ofstream file(out, std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open for writing: " + out);
  char buf[40];
  for (Index i = 0; i < lmax; ++i) {
    for (Index j = 0; j < lmax; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m.values(i, j));
      if (j > 0) file << ',';
      file << buf;
    }
    file << '\n';
  }
  std::cerr << "wrote " << lmax << "x" << lmax << " structure matrix to " << out << '\n';
  return 0;
}

// ------------------------------------------------------------- classify ----

void print_cv_table(const CvReport& r) {
  std::printf("%-6s %-10s %-8s %s\n", "fold", "accuracy", "C", "kernel");
  for (std::size_t i = 0; i < r.folds.size(); ++i) {
    const auto& f = r.folds[i];
    const auto& s = f.config.structure;
    char params[128];
    if (f.config.family == KernelFamily::global_alignment)
      std::snprintf(params, sizeof params, "ga sigma=%.4g", f.config.symbol.sigma);
    else
      switch (s.kind) {
        case StructureKernelKind::path:
          std::snprintf(params, sizeof params, "path sigma=%.4g chv=%.3g cd=%.3g",
                        f.config.symbol.sigma, s.chv, s.cd);
          break;
        case StructureKernelKind::exponential:
          std::snprintf(params, sizeof params, "exponential sigma=%.4g alpha=%.4g",
                        f.config.symbol.sigma, s.alpha);
          break;
        case StructureKernelKind::polynomial:
          std::snprintf(params, sizeof params, "polynomial sigma=%.4g c=%.3g degree=%d",
                        f.config.symbol.sigma, s.poly_c, s.poly_degree);
          break;
        case StructureKernelKind::factorial:
          std::snprintf(params, sizeof params, "factorial sigma=%.4g d=%d",
                        f.config.symbol.sigma, s.fact_d);
          break;
      }
    std::printf("%-6zu %-10.4f %-8.4g %s\n", i, f.accuracy, f.svm_c, params);
  }
  std::printf("accuracy: %.2f%% +- %.2f%%\n", 100.0 * r.mean_accuracy, 100.0 * r.sd_accuracy);
}

int cmd_classify(const GlobalOptions& g, const KernelFlags& kf, const std::string& data_path,
                 const CvOptions& base) {
  const Dataset data = parse_dataset(data_path);
  CvOptions opt = base;
  opt.seed = g.seed;
  opt.threads = g.threads;
  opt.normalize = g.normalize;
  if (kf.kernel == "ga" || kf.kernel == "global-alignment") {
    opt.family = KernelFamily::global_alignment;
  } else {
    opt.family = KernelFamily::decomposable;
    try {
      opt.structure_kind = structure_kind_from_string(kf.kernel);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  try {
    opt.symbol_kind = symbol_kind_from_string(kf.symbol);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const CvReport report = nested_cv_classify(data, opt);
  print_cv_table(report);

  json j = base_report("classify", g);
  j["data"] = data_path;
  j["dataset"] = dataset_summary(data);
  j["kernel"] = kf.kernel;
  j["results"] = cv_report_json(report, false);
  j["timing"] = cv_report_json(report, true)["timing"];
  if (!g.out.empty()) write_json(g.out, j);
  return 0;
}

// ---------------------------------------------------------------- embed ----

int cmd_embed(const GlobalOptions& g, const KernelFlags& kf, const std::string& data_path,
              Index p) {
  if (p < 1) throw UsageError("component count -p must be >= 1");
  const Dataset data = parse_dataset(data_path);
  const KernelConfig cfg = build_config(kf, g.normalize);
  warn_growth(cfg);
  const GramMatrix gram = build_gram(data.sequences, cfg, g.threads);
  const EmbeddingResult emb = kernel_pca(gram, std::min<Index>(p, gram.size()));

  const std::string out = require_out(g, "embed");
  std::ofstream file(out, std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open for writing: " + out);
  file << "id,label";
  for (Index k = 0; k < emb.coordinates.cols(); ++k) file << ",pc" << (k + 1);
  file << '\n';
  char buf[40];
  for (Index i = 0; i < emb.coordinates.rows(); ++i) {
    file << data.sequences[static_cast<std::size_t>(i)].id << ','
         << data.sequences[static_cast<std::size_t>(i)].label;
    for (Index k = 0; k < emb.coordinates.cols(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", emb.coordinates(i, k));
      file << ',' << buf;
    }
    file << '\n';
  }
  std::cerr << "wrote " << emb.coordinates.rows() << " embedded points to " << out << '\n';
  return 0;
}

// ------------------------------------------------------------------ fit ----

json fit_to_json(const FitResult& r) {
  json j;
  j["config"] = to_json(r.config);
  j["noise_var"] = r.noise_var;
  j["lml"] = r.lml;
  j["status"] = r.status;
  j["evaluations"] = r.evaluations;
  if (r.config.structure.kind == StructureKernelKind::path &&
      r.config.family == KernelFamily::decomposable) {
    const double chv = r.config.structure.chv;
    const double cd = r.config.structure.cd;
    j["diagnostics"] = {
        {"chv", chv},
        {"cd", cd},
        {"cd_over_chv", chv > 0.0 ? cd / chv : std::numeric_limits<double>::infinity()}};
  }
  return j;
}

FitResult run_fit(const Dataset& data, const KernelFlags& kf, const GlobalOptions& g,
                  const FitOptions& fo) {
  KernelConfig cfg = build_config(kf, g.normalize);
  if (cfg.family != KernelFamily::decomposable)
    throw UsageError("fit requires a differentiable decomposable kernel (path or exponential)");
  return fit_hyperparameters(data.sequences, data.labels(), cfg, fo);
}

int cmd_fit(const GlobalOptions& g, const KernelFlags& kf, const std::string& data_path,
            const std::string& compare_path, const FitOptions& fo) {
  const Dataset data = parse_dataset(data_path);
  const FitResult primary = run_fit(data, kf, g, fo);

  json j = base_report("fit", g);
  j["data"] = data_path;
  j["dataset"] = dataset_summary(data);
  j["budget"] = fo.budget;
  j["primary"] = fit_to_json(primary);

  std::printf("fit: lml=%.6f status=%s evaluations=%d\n", primary.lml, primary.status.c_str(),
              primary.evaluations);
  if (primary.config.structure.kind == StructureKernelKind::path) {
    std::printf("  chv=%.5g cd=%.5g cd/chv=%.4g\n", primary.config.structure.chv,
                primary.config.structure.cd,
                primary.config.structure.cd / primary.config.structure.chv);
  }

  if (!compare_path.empty()) {
    const Dataset other = parse_dataset(compare_path);
    const FitResult secondary = run_fit(other, kf, g, fo);
    j["compare_data"] = compare_path;
    j["secondary"] = fit_to_json(secondary);
    if (primary.config.structure.kind == StructureKernelKind::path) {
      const double r1 = primary.config.structure.cd / primary.config.structure.chv;
      const double r2 = secondary.config.structure.cd / secondary.config.structure.chv;
      j["comparison"] = {{"primary_cd_over_chv", r1},
                         {"secondary_cd_over_chv", r2},
                         {"primary_ratio_higher", r1 > r2}};
      std::printf("compare: cd/chv primary=%.4g secondary=%.4g -> %s\n", r1, r2,
                  r1 > r2 ? "primary higher" : "secondary higher or equal");
    }
  }

  if (!g.out.empty()) write_json(g.out, j);
  return 0;
}

// -------------------------------------------------------------- gen-toy ----

int cmd_gen_toy(const GlobalOptions& g, const std::string& which, int n_per_class, Index len_min,
                Index len_max, Index length, double noise_sd) {
  const std::string out = require_out(g, "gen-toy");
  if (which == "sine-cosine") {
    SineCosineParams p;
    p.n_per_class = n_per_class;
    p.len_min = len_min;
    p.len_max = len_max;
    p.noise_sd = noise_sd;
    p.seed = g.seed;
    write_dataset(gen_sine_cosine(p), out);
    std::cerr << "wrote " << out << '\n';
    return 0;
  }
  if (which == "sine-square-spike") {
    SineSquareSpikeParams p;
    p.n_per_class = n_per_class;
    p.length = length;
    p.noise_sd = noise_sd;
    p.seed = g.seed;
    const TwoTaskDataset d = gen_sine_square_spike(p);
    std::filesystem::path base(out);
    const std::string stem =
        base.extension() == ".seqt" ? (base.parent_path() / base.stem()).string() : out;
    write_dataset(d.waveform, stem + "_waveform.seqt");
    write_dataset(d.spike, stem + "_spike.seqt");
    std::cerr << "wrote " << stem << "_waveform.seqt and " << stem << "_spike.seqt\n";
    return 0;
  }
  throw UsageError("unknown toy dataset '" + which +
                   "' (expected sine-cosine or sine-square-spike)");
}

// ----------------------------------------------------------------- bench ----

int cmd_bench(const GlobalOptions& g, const std::string& lengths_csv,
              const std::string& kernels_csv, int repeats, Index dim) {
  std::vector<Index> lengths;
  {
    std::stringstream ss(lengths_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      const long v = std::stol(tok);
      if (v < 1 || v > 4096) throw UsageError("bench lengths must lie in [1, 4096]");
      lengths.push_back(static_cast<Index>(v));
    }
  }
  if (lengths.empty()) throw UsageError("no bench lengths given");
  std::vector<std::string> kernels;
  {
    std::stringstream ss(kernels_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) kernels.push_back(tok);
  }

  const Index max_len = *std::max_element(lengths.begin(), lengths.end());
  Rng rng(mix_seed(g.seed, 9090));
  Eigen::MatrixXd sa(dim, max_len), sb(dim, max_len);
  for (Index j = 0; j < max_len; ++j)
    for (Index r = 0; r < dim; ++r) {
      sa(r, j) = rng.uniform(-1.0, 1.0);
      sb(r, j) = rng.uniform(-1.0, 1.0);
    }

  json results = json::array();
  std::printf("%-8s %-14s %-14s %s\n", "length", "kernel", "median_ms", "ratio_vs_prev");
  for (const auto& name : kernels) {
    KernelFlags kf;
    kf.kernel = name;
    const KernelConfig cfg = build_config(kf, false);
    StructureMatrix table;
    if (cfg.family == KernelFamily::decomposable)
      table = build_structure_matrix(cfg.structure, max_len);

    double prev_ms = -1.0;
    for (const Index len : lengths) {
      const Sequence s(sa.leftCols(len), "bench_a");
      const Sequence t(sb.leftCols(len), "bench_b");
      auto eval = [&] {
        return cfg.family == KernelFamily::global_alignment
                   ? global_alignment_log(s, t, cfg.symbol.sigma)
                   : sequence_kernel(s, t, cfg, &table);
      };
      volatile double sink = eval();  // warmup
      std::vector<double> times_ms;
      for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        sink = eval();
        const auto t1 = std::chrono::steady_clock::now();
        times_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
      }
      (void)sink;
      std::sort(times_ms.begin(), times_ms.end());
      const double median = times_ms[times_ms.size() / 2];
      const double ratio = prev_ms > 0.0 ? median / prev_ms : 0.0;
      if (prev_ms > 0.0)
        std::printf("%-8lld %-14s %-14.5f %.3f\n", static_cast<long long>(len), name.c_str(),
                    median, ratio);
      else
        std::printf("%-8lld %-14s %-14.5f -\n", static_cast<long long>(len), name.c_str(),
                    median);
      results.push_back({{"length", len},
                         {"kernel", name},
                         {"median_ms", median},
                         {"ratio_vs_prev", prev_ms > 0.0 ? json(ratio) : json()}});
      prev_ms = median;
    }
  }

  if (!g.out.empty()) {
    json j = base_report("bench", g);
    j["repeats"] = repeats;
    j["dim"] = dim;
    j["results"] = results;
    write_json(g.out, j);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sequence kernels: decomposable symbol/structure kernels, the path kernel, "
               "Gram tooling and kernel-space learners"};
  app.set_version_flag("--version", std::string(version_string));
  app.fallthrough();
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--seed", g.seed, "master seed for all randomized steps")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads for pairwise kernel evaluation")
      ->capture_default_str();
  app.add_flag("--normalize,!--no-normalize", g.normalize,
               "normalize kernels to unit self-similarity (default on)");
  app.add_option("--out", g.out, "output path");

  auto* gram_cmd = app.add_subcommand("gram", "build a Gram matrix and run the PSD check");
  KernelFlags gram_kf;
  std::string gram_data, gram_csv;
  double psd_tol = 1e-8;
  gram_cmd->add_option("--data", gram_data, "SEQT dataset")->required();
  add_kernel_flags(gram_cmd, gram_kf);
  gram_cmd->add_option("--csv", gram_csv, "also export the matrix as CSV");
  gram_cmd->add_option("--psd-tol", psd_tol, "relative PSD tolerance")->capture_default_str();

  auto* sd_cmd = app.add_subcommand("structure-dump", "write K_S values up to lmax as CSV");
  KernelFlags sd_kf;
  Index sd_lmax = 64;
  add_kernel_flags(sd_cmd, sd_kf);
  sd_cmd->add_option("--lmax", sd_lmax, "matrix side (<= 512)")->capture_default_str();

  auto* cls_cmd = app.add_subcommand("classify", "nested cross-validated SVM classification");
  KernelFlags cls_kf;
  std::string cls_data;
  CvOptions cv_base;
  cls_cmd->add_option("--data", cls_data, "SEQT dataset")->required();
  add_kernel_flags(cls_cmd, cls_kf);
  cls_cmd->add_option("--outer-folds", cv_base.outer_folds)->capture_default_str();
  cls_cmd->add_option("--outer-reps", cv_base.outer_reps)->capture_default_str();
  cls_cmd->add_option("--inner-folds", cv_base.inner_folds)->capture_default_str();
  cls_cmd->add_option("--inner-reps", cv_base.inner_reps)->capture_default_str();

  auto* emb_cmd = app.add_subcommand("embed", "kernel-PCA embedding coordinates");
  KernelFlags emb_kf;
  std::string emb_data;
  Index emb_p = 2;
  emb_cmd->add_option("--data", emb_data, "SEQT dataset")->required();
  add_kernel_flags(emb_cmd, emb_kf);
  emb_cmd->add_option("-p,--components", emb_p, "number of principal components")
      ->capture_default_str();

  auto* fit_cmd = app.add_subcommand("fit", "maximize the GP marginal likelihood");
  KernelFlags fit_kf;
  std::string fit_data, fit_compare;
  FitOptions fit_opts;
  fit_cmd->add_option("--data", fit_data, "SEQT dataset")->required();
  add_kernel_flags(fit_cmd, fit_kf);
  fit_cmd->add_option("--compare-data", fit_compare,
                      "second dataset; fit both and compare C_d/C_hv ratios");
  fit_cmd->add_option("--budget", fit_opts.budget, "likelihood evaluation budget")
      ->capture_default_str();
  fit_cmd->add_option("--noise-var0", fit_opts.noise_var0, "initial noise variance")
      ->capture_default_str();

  auto* toy_cmd = app.add_subcommand("gen-toy", "generate a toy dataset");
  std::string toy_which = "sine-cosine";
  int toy_n = 10;
  Index toy_len_min = 20, toy_len_max = 40, toy_length = 64;
  double toy_noise = 0.1;
  toy_cmd->add_option("--which", toy_which, "sine-cosine or sine-square-spike")
      ->capture_default_str();
  toy_cmd->add_option("--n-per-class", toy_n)->capture_default_str();
  toy_cmd->add_option("--len-min", toy_len_min, "sine-cosine minimum length")
      ->capture_default_str();
  toy_cmd->add_option("--len-max", toy_len_max, "sine-cosine maximum length")
      ->capture_default_str();
  toy_cmd->add_option("--length", toy_length, "sine-square-spike fixed length")
      ->capture_default_str();
  toy_cmd->add_option("--noise-sd", toy_noise)->capture_default_str();

  auto* bench_cmd = app.add_subcommand("bench", "single-pair kernel timing across lengths");
  std::string bench_lengths = "64,128,256,512";
  std::string bench_kernels = "path,ga";
  int bench_repeats = 9;
  Index bench_dim = 2;
  bench_cmd->add_option("--lengths", bench_lengths, "comma-separated lengths (<= 4096)")
      ->capture_default_str();
  bench_cmd->add_option("--kernels", bench_kernels, "comma-separated kernel names")
      ->capture_default_str();
  bench_cmd->add_option("--repeats", bench_repeats, "timings per point (median reported)")
      ->capture_default_str();
  bench_cmd->add_option("--dim", bench_dim, "symbol dimension")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*gram_cmd) return cmd_gram(g, gram_kf, gram_data, gram_csv, psd_tol);
    if (*sd_cmd) return cmd_structure_dump(g, sd_kf, sd_lmax);
    if (*cls_cmd) return cmd_classify(g, cls_kf, cls_data, cv_base);
    if (*emb_cmd) return cmd_embed(g, emb_kf, emb_data, emb_p);
    if (*fit_cmd) return cmd_fit(g, fit_kf, fit_data, fit_compare, fit_opts);
    if (*toy_cmd)
      return cmd_gen_toy(g, toy_which, toy_n, toy_len_min, toy_len_max, toy_length, toy_noise);
    if (*bench_cmd) return cmd_bench(g, bench_lengths, bench_kernels, bench_repeats, bench_dim);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
