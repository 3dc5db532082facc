#include "ilscm/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "ilscm/community.hpp"
#include "ilscm/error.hpp"
#include "ilscm/io.hpp"
#include "ilscm/synth.hpp"

namespace ilscm::cli {

namespace {

struct TextOptions {
  std::string graph;
  std::string keys_path;
  std::vector<std::string> keys;
  double rho = 0.7;
  double beta = 3.0;
  std::int64_t bin_width = 86400;
  std::optional<std::size_t> bins;
};

struct Options {
  TextOptions text;
  double lambda = 0.0;
  std::string mode = "weight";
  std::string format = "communities_json";
  std::string out;

  std::string matrix;
  std::string matrix_format = "auto";

  std::string params;
  std::optional<std::uint64_t> seed;
  std::string out_graph;
  std::string out_truth;

  std::string result;
  std::string truth;
};

void add_text_options(CLI::App* cmd, TextOptions& o, bool with_keys) {
  cmd->add_option("--graph", o.graph, "Graph document (JSON)")->required();
  if (with_keys) {
    cmd->add_option("--keys", o.keys_path, "File with one context key per line");
    cmd->add_option("--key", o.keys, "Context key (repeatable)");
    cmd->add_option("--rho", o.rho, "Minimum correlation with the key profile")
        ->check(CLI::Range(0.0, 1.0));
  }
  cmd->add_option("--beta", o.beta, "Peak-to-mean burstiness threshold");
  cmd->add_option("--bin-width", o.bin_width, "Time bin width in seconds")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--bins", o.bins, "Number of time bins (default: inferred from the corpus)")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
}

std::shared_ptr<const Tokenizer> load_tokenizer() {
  if (const char* path = std::getenv("ILSCM_STOPWORDS"); path != nullptr && *path != '\0') {
    return std::make_shared<const Tokenizer>(Tokenizer::from_file(path));
  }
  return nullptr;
}

TimeBinConfig bins_for(const SocialGraph& graph, const TextOptions& o) {
  auto bins = infer_bins(graph, o.bin_width);
  if (o.bins) bins.bin_count = *o.bins;
  bins.validate();
  return bins;
}

DetectionMode parse_mode(const std::string& mode) {
  return mode == "betweenness" ? DetectionMode::vertex_betweenness : DetectionMode::weight;
}

DetectionConfig text_config(const SocialGraph& graph, const Options& o) {
  DetectionConfig config;
  config.tokenizer = load_tokenizer();
  const auto& tokenizer = config.tokenizer_or_default();
  if (!o.text.keys_path.empty()) config.keys = parse_keys(read_file(o.text.keys_path), tokenizer);
  for (const auto& raw : o.text.keys) {
    ContextKey key = [&] {
      try {
        return ContextKey::parse(raw, tokenizer);
      } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
      }
    }();
    if (std::find(config.keys.begin(), config.keys.end(), key) == config.keys.end()) {
      config.keys.push_back(std::move(key));
    }
  }
  config.lambda = o.lambda;
  config.mode = parse_mode(o.mode);
  config.thresholds = BurstThresholds{o.text.rho, o.text.beta};
  config.bins = bins_for(graph, o.text);
  return config;
}

void emit(const std::string& path, const std::string& data, std::ostream& out) {
  if (path.empty()) {
    out << data;
  } else {
    write_file(path, data);
  }
}

std::string format_metrics(const std::vector<synth::CommunityMetrics>& metrics,
                           const synth::GroundTruth& truth) {
  std::string text = "burst_community " + std::to_string(truth.burst_community) + "\n";
  char line[256];
  for (const auto& m : metrics) {
    const std::string matched = m.matched ? std::to_string(*m.matched) : "none";
    std::snprintf(line, sizeof line,
                  "community %zu: matched=%s precision=%.6f recall=%.6f f1=%.6f jaccard=%.6f\n",
                  m.truth_community, matched.c_str(), m.precision, m.recall, m.f1, m.jaccard);
    text += line;
  }
  return text;
}

std::string format_reports(const std::vector<BurstReport>& reports) {
  std::string text = "word\tburstiness\tclass\n";
  char value[64];
  for (const auto& r : reports) {
    std::snprintf(value, sizeof value, "%.6f", r.burstiness);
    text += r.word + "\t" + value + "\t" + std::string(to_string(r.topic_class)) + "\n";
  }
  return text;
}

WeightedAdjacency load_matrix(const Options& o) {
  const auto text = read_file(o.matrix);
  bool csv = o.matrix_format == "csv";
  if (o.matrix_format == "auto") {
    csv = std::filesystem::path(o.matrix).extension() == ".csv";
  }
  return csv ? parse_adjacency_csv(text) : parse_weight_triples(text);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Community detection from burst words on social-graph edges", "ilscm"};
  app.require_subcommand(1);
  Options o;

  const std::vector<std::string> modes{"weight", "betweenness"};

  auto* detect_cmd = app.add_subcommand("detect", "Detect communities from a graph document");
  add_text_options(detect_cmd, o.text, true);
  detect_cmd->add_option("--lambda", o.lambda, "Threshold on edge weight or betweenness")->required();
  detect_cmd->add_option("--mode", o.mode, "weight | betweenness")->check(CLI::IsMember(modes));
  detect_cmd->add_option("--out", o.out, "Output path (default: stdout)");
  detect_cmd->add_option("--format", o.format, "communities_json | dot")
      ->check(CLI::IsMember({"communities_json", "dot"}));

  auto* matrix_cmd = app.add_subcommand("matrix", "Emit the weighted adjacency matrix as CSV");
  add_text_options(matrix_cmd, o.text, true);
  matrix_cmd->add_option("--out", o.out, "Output path (default: stdout)");

  auto* from_matrix_cmd =
      app.add_subcommand("detect-from-matrix", "Detect communities from a precomputed matrix");
  from_matrix_cmd->add_option("--matrix", o.matrix, "Adjacency CSV or weight triples")->required();
  from_matrix_cmd->add_option("--matrix-format", o.matrix_format, "auto | csv | triples")
      ->check(CLI::IsMember({"auto", "csv", "triples"}));
  from_matrix_cmd->add_option("--lambda", o.lambda, "Threshold")->required();
  from_matrix_cmd->add_option("--mode", o.mode, "weight | betweenness")->check(CLI::IsMember(modes));
  from_matrix_cmd->add_option("--out", o.out, "Output path (default: stdout)");
  from_matrix_cmd->add_option("--format", o.format, "communities_json | dot | adjacency_csv")
      ->check(CLI::IsMember({"communities_json", "dot", "adjacency_csv"}));

  auto* synth_cmd = app.add_subcommand("synth", "Generate a planted-partition graph");
  synth_cmd->add_option("--params", o.params, "Generator parameters (JSON)")->required();
  synth_cmd->add_option("--seed", o.seed, "Override the seed in the parameter file");
  synth_cmd->add_option("--out-graph", o.out_graph, "Graph document output path")->required();
  synth_cmd->add_option("--out-truth", o.out_truth, "Ground truth output path")->required();

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score a detection result against ground truth");
  evaluate_cmd->add_option("--result", o.result, "communities_json result")->required();
  evaluate_cmd->add_option("--truth", o.truth, "Ground truth document")->required();

  auto* classify_cmd = app.add_subcommand("classify", "Classify corpus words as temporal or stable");
  add_text_options(classify_cmd, o.text, false);

  std::vector<const char*> argv{"ilscm"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    if (app.get_subcommands().empty()) err << app.help();
    return kUsageError;
  }

  const bool text_cmd = detect_cmd->parsed() || matrix_cmd->parsed();
  if (text_cmd && o.text.keys_path.empty() && o.text.keys.empty()) {
    err << "error: --keys or --key is required\n";
    return kUsageError;
  }
  if ((text_cmd || classify_cmd->parsed()) && !(o.text.beta > 1.0)) {
    err << "error: --beta must be greater than 1\n";
    return kUsageError;
  }
  if (text_cmd && !(o.text.rho > 0.0)) {
    err << "error: --rho must lie in (0, 1]\n";
    return kUsageError;
  }

  try {
    if (detect_cmd->parsed()) {
      const auto graph = parse_graph(read_file(o.text.graph));
      const auto config = text_config(graph, o);
      const auto result = detect(graph, config);
      emit(o.out, export_result(result, *parse_export_format(o.format)), out);
    } else if (matrix_cmd->parsed()) {
      const auto graph = parse_graph(read_file(o.text.graph));
      auto config = text_config(graph, o);
      config.lambda = 0.0;
      const auto result = detect(graph, config);
      emit(o.out, export_result(result, ExportFormat::adjacency_csv), out);
    } else if (from_matrix_cmd->parsed()) {
      const auto result = detect_from_matrix(load_matrix(o), o.lambda, parse_mode(o.mode));
      emit(o.out, export_result(result, *parse_export_format(o.format)), out);
    } else if (synth_cmd->parsed()) {
      auto params = synth::parse_params(read_file(o.params));
      if (o.seed) params.seed = *o.seed;
      const auto [graph, truth] = synth::generate(params);
      write_file(o.out_graph, export_graph(graph));
      write_file(o.out_truth, synth::export_truth(truth));
    } else if (evaluate_cmd->parsed()) {
      const auto result = parse_result(read_file(o.result));
      const auto truth = synth::parse_truth(read_file(o.truth));
      out << format_metrics(synth::evaluate(result, truth), truth);
    } else if (classify_cmd->parsed()) {
      const auto tokenizer = load_tokenizer();
      const auto graph = parse_graph(read_file(o.text.graph));
      const auto reports = classify_corpus(graph, bins_for(graph, o.text), o.text.beta,
                                           tokenizer ? *tokenizer : Tokenizer::standard());
      out << format_reports(reports);
    }
  } catch (const DetectionError& e) {
    err << "error: " << e.what() << "\n";
    return kDetectionError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kSuccess;
}

}  // namespace ilscm::cli
