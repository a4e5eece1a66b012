#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nmf_forge/pipeline.hpp"

namespace {

using nmf_forge::Json;

// Flags given on the command line; unset ones do not override the config file.
struct RunFlags {
  std::optional<std::string> corpus, labels, stopwords, extra_stopwords, keywords, preset, config, out;
  std::optional<int> rank, branching, top_k, window, trials, max_iters;
  std::vector<int> ranks;
  std::optional<double> min_df, max_df, highlight_factor, shift, lambda, split, tol;
  std::optional<std::size_t> max_features;
  std::optional<std::uint64_t> seed;
};

void add_run_options(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--corpus", f.corpus, "Directory of .txt documents");
  cmd->add_option("--labels", f.labels, "CSV with header doc_id,labels");
  cmd->add_option("--rank", f.rank, "Number of topics");
  cmd->add_option("--ranks", f.ranks, "Comma-separated ranks for hierarchical commands")->delimiter(',');
  cmd->add_option("--branching", f.branching, "Sub-topics per topic (top-down)");
  cmd->add_option("--top-k", f.top_k, "Keywords reported per topic");
  cmd->add_option("--min-df", f.min_df, "Minimum document frequency fraction");
  cmd->add_option("--max-df", f.max_df, "Maximum document frequency fraction");
  cmd->add_option("--max-features", f.max_features, "Keep the most frequent terms only");
  cmd->add_option("--stopwords", f.stopwords, "Stopword file replacing the English list");
  cmd->add_option("--extra-stopwords", f.extra_stopwords, "Additional stopword file");
  cmd->add_option("--keywords", f.keywords, "Keyword file to highlight");
  cmd->add_option("--highlight-factor", f.highlight_factor, "Row scale for highlighted keywords");
  cmd->add_option("--window", f.window, "Co-occurrence window per side");
  cmd->add_option("--shift", f.shift, "SPPMI shift N");
  cmd->add_option("--lambda", f.lambda, "Weight of the label term");
  cmd->add_option("--split", f.split, "Training fraction");
  cmd->add_option("--trials", f.trials, "Number of seeded trials");
  cmd->add_option("--seed", f.seed, "Master seed (falls back to NMF_FORGE_SEED)");
  cmd->add_option("--max-iters", f.max_iters, "Iteration cap per factorization");
  cmd->add_option("--tol", f.tol, "Relative objective change to stop at");
  cmd->add_option("--preset", f.preset, "letters or aob");
  cmd->add_option("--config", f.config, "JSON config file; flags override it");
  cmd->add_option("--out", f.out, "Output directory for report.json, report.txt, model.json");
}

Json flags_to_json(const RunFlags& f) {
  Json j = Json::object();
  auto put = [&](const char* key, const auto& opt) {
    if (opt) j[key] = *opt;
  };
  put("corpus", f.corpus);
  put("labels", f.labels);
  put("stopwords", f.stopwords);
  put("extra_stopwords", f.extra_stopwords);
  put("keywords", f.keywords);
  put("preset", f.preset);
  put("out", f.out);
  put("rank", f.rank);
  put("branching", f.branching);
  put("top_k", f.top_k);
  put("window", f.window);
  put("trials", f.trials);
  put("max_iters", f.max_iters);
  put("min_df", f.min_df);
  put("max_df", f.max_df);
  put("highlight_factor", f.highlight_factor);
  put("shift", f.shift);
  put("lambda", f.lambda);
  put("split", f.split);
  put("tol", f.tol);
  put("max_features", f.max_features);
  put("seed", f.seed);
  if (!f.ranks.empty()) j["ranks"] = f.ranks;
  return j;
}

std::optional<std::uint64_t> env_seed() {
  const char* v = std::getenv("NMF_FORGE_SEED");
  if (!v || !*v) return std::nullopt;
  try {
    std::size_t used = 0;
    const auto seed = std::stoull(v, &used);
    if (used != std::string(v).size()) throw std::invalid_argument(v);
    return seed;
  } catch (const std::exception&) {
    throw nmf_forge::Error(std::string("NMF_FORGE_SEED is not an unsigned integer: ") + v);
  }
}

int run_command(nmf_forge::Command command, const RunFlags& flags) {
  try {
    Json file = Json::object();
    if (flags.config) {
      std::ifstream in(*flags.config);
      if (!in) throw nmf_forge::Error("cannot open config " + *flags.config);
      try {
        file = Json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw nmf_forge::Error("config " + *flags.config + " is not valid JSON: " + e.what());
      }
    }
    const auto config = nmf_forge::resolve_config(command, file, flags_to_json(flags), env_seed());
    return nmf_forge::run(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

struct SynthFlags {
  int topics = 4;
  int docs_per_topic = 15;
  int words_per_doc = 60;
  int vocab_per_topic = 20;
  double noise = 0.1;
  double sibling_rate = 0.3;
  std::vector<int> hierarchy;
  std::vector<int> classes;
  std::uint64_t seed = 0;
  std::string out;
};

int run_synth(const SynthFlags& f) {
  try {
    nmf_forge::PlantedSpec spec;
    spec.n_topics = f.topics;
    spec.docs_per_topic = f.docs_per_topic;
    spec.words_per_doc = f.words_per_doc;
    spec.vocab_per_topic = f.vocab_per_topic;
    spec.noise_rate = f.noise;
    spec.sibling_rate = f.sibling_rate;
    if (!f.hierarchy.empty()) spec.hierarchy = f.hierarchy;
    if (!f.classes.empty()) spec.labels = f.classes;
    spec.seed = f.seed;
    const auto s = nmf_forge::generate(spec);
    nmf_forge::write_synthetic(s, f.out);
    std::cout << "wrote " << s.corpus.size() << " documents to " << f.out << "/corpus\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NMF topic modeling toolkit"};
  app.require_subcommand(1);

  struct Entry {
    nmf_forge::Command command;
    CLI::App* app;
    RunFlags flags;
  };
  std::vector<Entry> entries;
  entries.reserve(nmf_forge::command_names().size());
  const std::vector<std::string> descriptions = {
      "Classical NMF topics", "Semantic NMF with an SPPMI word-context term",
      "Top-down hierarchical NMF", "Bottom-up hierarchical NMF",
      "Supervised NMF label prediction", "Semi-supervised NMF label prediction"};
  for (std::size_t i = 0; i < nmf_forge::command_names().size(); ++i) {
    const auto& [cmd, name] = nmf_forge::command_names()[i];
    entries.push_back({cmd, app.add_subcommand(name, descriptions[i]), {}});
  }
  for (auto& e : entries) add_run_options(e.app, e.flags);

  SynthFlags synth;
  auto* synth_cmd = app.add_subcommand("synth", "Write a planted-topic synthetic corpus");
  synth_cmd->add_option("--topics", synth.topics, "Number of planted topics");
  synth_cmd->add_option("--docs-per-topic", synth.docs_per_topic, "Documents per topic");
  synth_cmd->add_option("--words-per-doc", synth.words_per_doc, "Tokens per document");
  synth_cmd->add_option("--vocab-per-topic", synth.vocab_per_topic, "Terms in each topic block");
  synth_cmd->add_option("--noise", synth.noise, "Cross-topic token rate");
  synth_cmd->add_option("--sibling-rate", synth.sibling_rate, "Sibling sub-topic token rate");
  synth_cmd->add_option("--hierarchy", synth.hierarchy, "Super-topic of each topic")->delimiter(',');
  synth_cmd->add_option("--classes", synth.classes, "Class of each topic")->delimiter(',');
  synth_cmd->add_option("--seed", synth.seed, "Generator seed");
  synth_cmd->add_option("--out", synth.out, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  if (synth_cmd->parsed()) return run_synth(synth);
  for (const auto& e : entries)
    if (e.app->parsed()) return run_command(e.command, e.flags);
  return 1;
}
