#include "commands.hpp"

#include "tigress/data.hpp"
#include "tigress/error_analysis.hpp"
#include "tigress/errors.hpp"
#include "tigress/eval.hpp"
#include "tigress/network.hpp"
#include "tigress/synthetic.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <thread>

namespace tigress::cli {
namespace {

namespace fs = std::filesystem;

#ifndef TIGRESS_VERSION
#define TIGRESS_VERSION "dev"
#endif

void require_file(const std::string& path, const char* what) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw IoError(std::string(what) + " '" + path + "' does not exist");
}

void require_parent_dir(const fs::path& path) {
  const auto parent = path.parent_path();
  std::error_code ec;
  if (!parent.empty() && !fs::is_directory(parent, ec))
    throw IoError("output directory '" + parent.string() + "' does not exist");
}

int default_threads() {
  return static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
}

std::map<std::string, std::string> read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest '" + path.string() + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError(path.string() + ": manifest line without '='");
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

struct InferOptions {
  std::string expression, tf_list, output, manifest, from_manifest;
  std::string scoring = "area";
  double alpha = 0.4;
  int steps = 2;
  int runs = 8000;
  std::uint64_t seed = 0;
  int threads = default_threads();
  std::size_t max_edges = 0;
};

void apply_manifest(InferOptions& o, CLI::App& cmd) {
  const auto kv = read_manifest(o.from_manifest);
  auto take = [&](const char* key, const char* flag, auto& field) {
    const auto it = kv.find(key);
    if (it == kv.end() || cmd.get_option(flag)->count() > 0) return;
    using T = std::decay_t<decltype(field)>;
    try {
      if constexpr (std::is_same_v<T, std::string>) {
        field = it->second;
      } else if constexpr (std::is_same_v<T, double>) {
        field = std::stod(it->second);
      } else {
        field = static_cast<T>(std::stoull(it->second));
      }
    } catch (const std::logic_error&) {
      throw FormatError("manifest value for '" + std::string(key) + "' is invalid");
    }
  };
  take("expression", "--expression", o.expression);
  take("tf_list", "--tf-list", o.tf_list);
  take("output", "--output", o.output);
  take("score", "--score", o.scoring);
  take("alpha", "--alpha", o.alpha);
  take("steps", "--steps", o.steps);
  take("runs", "--runs", o.runs);
  take("seed", "--seed", o.seed);
  take("max_edges", "--max-edges", o.max_edges);
}

void write_manifest(const InferOptions& o, const StabilityParams& params, const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << "version=" << TIGRESS_VERSION << '\n'
      << "command=infer\n"
      << "expression=" << o.expression << '\n'
      << "tf_list=" << o.tf_list << '\n'
      << "output=" << o.output << '\n'
      << "score=" << to_string(params.scoring) << '\n'
      << "alpha=" << format_double(params.alpha) << '\n'
      << "steps=" << params.steps << '\n'
      << "runs=" << params.runs << '\n'
      << "seed=" << params.seed << '\n'
      << "threads=" << o.threads << '\n'
      << "max_edges=" << o.max_edges << '\n';
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

int cmd_infer(InferOptions& o, CLI::App& cmd, std::ostream& out) {
  if (!o.from_manifest.empty()) apply_manifest(o, cmd);
  if (o.expression.empty() || o.tf_list.empty() || o.output.empty())
    throw ParameterError("--expression, --tf-list and --output are required");

  StabilityParams params;
  params.scoring = parse_scoring(o.scoring);
  params.alpha = o.alpha;
  params.steps = o.steps;
  params.runs = o.runs;
  params.seed = o.seed;
  params.validate();
  if (o.threads < 1) throw ParameterError("--threads must be positive");

  require_file(o.expression, "expression file");
  require_file(o.tf_list, "TF list");
  require_parent_dir(o.output);
  const auto manifest = o.manifest.empty() ? o.output + ".manifest" : o.manifest;
  require_parent_dir(manifest);

  const auto expr = load_expression(o.expression);
  const auto tfs = load_tf_list(o.tf_list, expr);
  const auto edges = infer_network(expr, tfs, params, o.threads);
  write_edge_list(edges, o.output, o.max_edges ? std::optional<std::size_t>(o.max_edges) : std::nullopt);
  write_manifest(o, params, manifest);
  out << "wrote " << std::min(edges.size(), o.max_edges ? o.max_edges : edges.size()) << " edges to "
      << o.output << '\n';
  return kSuccess;
}

std::optional<CandidateUniverse> universe_from(const std::string& tf_list, const EdgeList& predictions,
                                               const GoldStandard& gold) {
  if (tf_list.empty()) return std::nullopt;
  require_file(tf_list, "TF list");
  CandidateUniverse u;
  u.tfs = load_id_list(tf_list);
  if (u.tfs.empty()) throw FormatError(tf_list + ": TF list is empty");
  std::set<std::string> genes(gold.gene_universe);
  for (const auto& e : predictions.edges) {
    genes.insert(e.tf);
    genes.insert(e.tg);
  }
  genes.insert(u.tfs.begin(), u.tfs.end());
  u.genes.assign(genes.begin(), genes.end());
  return u;
}

struct EvaluateOptions {
  std::string predictions, gold, tf_list, prefix;
  int pvalue_draws = 0;
  std::uint64_t seed = 0;
};

int cmd_evaluate(const EvaluateOptions& o, std::ostream& out) {
  require_file(o.predictions, "predictions file");
  require_file(o.gold, "gold standard file");
  if (o.pvalue_draws != 0 && o.pvalue_draws < 100) throw ParameterError("--pvalue-draws must be >= 100");
  const auto prefix = o.prefix.empty() ? o.predictions : o.prefix;
  require_parent_dir(prefix);

  const auto predictions = load_edge_list(o.predictions);
  const auto gold = load_gold_standard(o.gold);
  const auto universe = universe_from(o.tf_list, predictions, gold);
  const auto report = evaluate(predictions, gold, universe);

  std::optional<PValues> pvalues;
  if (o.pvalue_draws > 0) pvalues = permutation_pvalues(predictions, gold, o.pvalue_draws, o.seed, universe);

  write_curve(report, prefix + ".curve.tsv");
  write_summary(report, pvalues, prefix + ".summary.tsv");
  out << "auroc\t" << format_double(report.auroc) << '\n';
  out << "aupr\t" << format_double(report.aupr) << '\n';
  if (pvalues) {
    out << "p_auroc\t" << format_double(pvalues->p_auroc) << '\n';
    out << "p_aupr\t" << format_double(pvalues->p_aupr) << '\n';
    out << "overall_score\t" << format_double(overall_score(pvalues->p_aupr, pvalues->p_auroc)) << '\n';
  }
  return kSuccess;
}

struct AnalyzeOptions {
  std::string predictions, gold, tf_list, prefix;
  std::size_t max_rank = 0;
  double level = 0.95;
};

int cmd_analyze_errors(const AnalyzeOptions& o, std::ostream& out) {
  require_file(o.predictions, "predictions file");
  require_file(o.gold, "gold standard file");
  if (!(o.level > 0.0 && o.level < 1.0)) throw ParameterError("--level must lie in (0,1)");
  const auto prefix = o.prefix.empty() ? o.predictions : o.prefix;
  require_parent_dir(prefix);

  const auto predictions = load_edge_list(o.predictions);
  const auto gold = load_gold_standard(o.gold);
  const auto universe = universe_from(o.tf_list, predictions, gold);
  const auto report = fp_distance_profile(predictions, gold, o.max_rank, universe, o.level);

  write_distance_report(report, prefix + ".distance.tsv");
  write_motif_counts(report, prefix + ".motifs.tsv");
  write_distance_baseline(report, prefix + ".baseline.tsv");
  out << "false_positives\t" << report.rows.size() << '\n';
  out << "spurious_pairs\t" << report.n_spurious << '\n';
  return kSuccess;
}

struct GenerateOptions {
  SyntheticSpec spec;
  std::string output_dir = ".";
};

int cmd_generate(const GenerateOptions& o, std::ostream& out) {
  o.spec.validate();
  std::error_code ec;
  if (!fs::is_directory(o.output_dir, ec)) throw IoError("output directory '" + o.output_dir + "' does not exist");
  const auto data = generate_synthetic(o.spec);
  const fs::path dir(o.output_dir);

  save_expression(data.expr, dir / "expression.tsv");
  {
    std::ofstream tf(dir / "tf_list.txt", std::ios::binary | std::ios::trunc);
    for (const auto& id : data.tf_ids) tf << id << '\n';
    if (!tf) throw IoError("write failed for TF list in '" + o.output_dir + "'");
  }
  {
    std::ofstream gold(dir / "gold_standard.tsv", std::ios::binary | std::ios::trunc);
    for (const auto& [tf, tg] : data.gold.positives) gold << tf << '\t' << tg << "\t1\n";
    if (!gold) throw IoError("write failed for gold standard in '" + o.output_dir + "'");
  }
  out << "wrote " << data.expr.n_samples() << "x" << data.expr.n_genes() << " expression, "
      << data.tf_ids.size() << " TFs, " << data.gold.positives.size() << " gold edges to " << o.output_dir
      << '\n';
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"TIGRESS gene regulatory network inference"};
  app.name("tigress");
  app.require_subcommand(1);
  app.set_version_flag("--version", TIGRESS_VERSION);

  InferOptions infer;
  auto* infer_cmd = app.add_subcommand("infer", "Score candidate regulations by LARS stability selection");
  infer_cmd->add_option("--expression", infer.expression, "Tab-separated expression matrix");
  infer_cmd->add_option("--tf-list", infer.tf_list, "Transcription factor ids, one per line");
  infer_cmd->add_option("--output", infer.output, "Ranked edge list to write");
  infer_cmd->add_option("--score", infer.scoring, "Scoring: area or original")->capture_default_str();
  infer_cmd->add_option("--alpha", infer.alpha, "Reweighting lower bound in [0,1]")->capture_default_str();
  infer_cmd->add_option("--steps,-L", infer.steps, "LARS steps L")->capture_default_str();
  infer_cmd->add_option("--runs,-R", infer.runs, "Total randomized LARS runs R (even)")->capture_default_str();
  infer_cmd->add_option("--seed", infer.seed, "Random seed")->capture_default_str();
  infer_cmd->add_option("--threads", infer.threads, "Worker threads")->capture_default_str();
  infer_cmd->add_option("--max-edges", infer.max_edges, "Truncate the output (0 = all)");
  infer_cmd->add_option("--manifest", infer.manifest, "Run manifest path (default <output>.manifest)");
  infer_cmd->add_option("--from-manifest", infer.from_manifest,
                        "Take parameters not given on the command line from a manifest");

  EvaluateOptions evaluate_opts;
  auto* eval_cmd = app.add_subcommand("evaluate", "Score a ranked edge list against a gold standard");
  eval_cmd->add_option("--predictions", evaluate_opts.predictions, "Ranked edge list")->required();
  eval_cmd->add_option("--gold", evaluate_opts.gold, "Gold standard TF<TAB>TG[<TAB>label]")->required();
  eval_cmd->add_option("--tf-list", evaluate_opts.tf_list, "TF ids defining the candidate pairs");
  eval_cmd->add_option("--output-prefix", evaluate_opts.prefix, "Prefix for .curve.tsv and .summary.tsv");
  eval_cmd->add_option("--pvalue-draws", evaluate_opts.pvalue_draws, "Random rankings for p-values (>= 100)");
  eval_cmd->add_option("--seed", evaluate_opts.seed, "Random seed for p-values");

  AnalyzeOptions analyze;
  auto* analyze_cmd = app.add_subcommand("analyze-errors", "Distance and motif profile of false positives");
  analyze_cmd->add_option("--predictions", analyze.predictions, "Ranked edge list")->required();
  analyze_cmd->add_option("--gold", analyze.gold, "Gold standard")->required();
  analyze_cmd->add_option("--max-rank", analyze.max_rank, "Number of top predictions to analyze")->required();
  analyze_cmd->add_option("--tf-list", analyze.tf_list, "TF ids defining the candidate pairs");
  analyze_cmd->add_option("--level", analyze.level, "Confidence level of the bands")->capture_default_str();
  analyze_cmd->add_option("--output-prefix", analyze.prefix, "Prefix for .distance/.motifs/.baseline files");

  GenerateOptions gen;
  auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic linear benchmark");
  gen_cmd->add_option("--genes", gen.spec.genes, "Number of genes")->capture_default_str();
  gen_cmd->add_option("--tfs", gen.spec.tfs, "Number of TFs")->capture_default_str();
  gen_cmd->add_option("--samples", gen.spec.samples, "Number of experiments")->capture_default_str();
  gen_cmd->add_option("--edges", gen.spec.edges, "Number of regulations")->capture_default_str();
  gen_cmd->add_option("--noise-sd", gen.spec.noise_sd, "Gaussian noise sd")->capture_default_str();
  gen_cmd->add_option("--seed", gen.spec.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--output-dir", gen.output_dir, "Destination directory")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << TIGRESS_VERSION << '\n';
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "tigress: usage error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (*infer_cmd) return cmd_infer(infer, *infer_cmd, out);
    if (*eval_cmd) return cmd_evaluate(evaluate_opts, out);
    if (*analyze_cmd) return cmd_analyze_errors(analyze, out);
    if (*gen_cmd) return cmd_generate(gen, out);
  } catch (const ParameterError& e) {
    err << "tigress: parameter error: " << e.what() << '\n';
    return kUsageError;
  } catch (const IoError& e) {
    err << "tigress: I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const FormatError& e) {
    err << "tigress: format error: " << e.what() << '\n';
    return kIoError;
  } catch (const ResolutionError& e) {
    err << "tigress: format error: " << e.what() << '\n';
    return kIoError;
  } catch (const EvaluationError& e) {
    err << "tigress: evaluation error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    err << "tigress: numerical failure: " << e.what() << '\n';
    return kNumericalError;
  }
  return kUsageError;
}

}  // namespace tigress::cli
