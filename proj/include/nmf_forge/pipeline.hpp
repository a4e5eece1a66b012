#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "nmf_forge/cooccurrence.hpp"
#include "nmf_forge/corpus.hpp"
#include "nmf_forge/error.hpp"
#include "nmf_forge/hnmf.hpp"
#include "nmf_forge/nmf.hpp"
#include "nmf_forge/semantic_nmf.hpp"
#include "nmf_forge/serialize.hpp"
#include "nmf_forge/stopwords.hpp"
#include "nmf_forge/supervised.hpp"
#include "nmf_forge/synth.hpp"
#include "nmf_forge/vectorizer.hpp"

namespace nmf_forge {

enum class Command { nmf, semantic, hnmf_topdown, hnmf_bottomup, snmf, ssnmf };

inline const std::vector<std::pair<Command, std::string>>& command_names() {
  static const std::vector<std::pair<Command, std::string>> names = {
      {Command::nmf, "nmf"},
      {Command::semantic, "semantic"},
      {Command::hnmf_topdown, "hnmf-topdown"},
      {Command::hnmf_bottomup, "hnmf-bottomup"},
      {Command::snmf, "snmf"},
      {Command::ssnmf, "ssnmf"}};
  return names;
}

inline std::string to_string(Command c) {
  for (const auto& [cmd, name] : command_names())
    if (cmd == c) return name;
  throw Error("unknown command");
}

inline Command parse_command(const std::string& s) {
  for (const auto& [cmd, name] : command_names())
    if (name == s) return cmd;
  throw Error("unknown command '" + s + "'");
}

inline bool is_supervised(Command c) { return c == Command::snmf || c == Command::ssnmf; }

struct RunConfig {
  Command command = Command::nmf;
  std::string preset = "letters";
  std::string corpus;
  std::optional<std::string> labels;

  double min_df = 0.015;
  double max_df = 0.8;
  std::optional<std::size_t> max_features;
  std::optional<std::string> stopwords;  // replaces the bundled English list
  std::optional<std::string> extra_stopwords;
  std::optional<std::string> keywords;
  double highlight_factor = 1.5;

  int window = 5;
  double shift = 5.0;

  int rank = 7;
  std::vector<int> ranks;  // hierarchical commands
  int branching = 3;
  int top_k = 10;

  double lambda = 1.0;
  double split = 0.75;
  int trials = 10;

  std::uint64_t seed = 0;
  int max_iters = 500;
  double tol = 1e-5;

  std::optional<std::string> out;  // not echoed into reports

  void validate() const {
    if (corpus.empty()) throw Error("--corpus is required");
    if (is_supervised(command) && !labels) throw Error("--labels is required for " + to_string(command));
    if (rank < 1) throw Error("rank must be at least 1");
    if (top_k < 1) throw Error("top-k must be at least 1");
    if (trials < 1) throw Error("trials must be at least 1");
    if (window < 1) throw Error("window must be at least 1");
    if (!(shift > 0.0)) throw Error("shift must be positive");
    if (!(lambda > 0.0)) throw Error("lambda must be positive");
    if (!(highlight_factor > 0.0)) throw Error("highlight factor must be positive");
  }

  SolverOptions solver(int r, std::uint64_t s) const {
    SolverOptions o;
    o.rank = r;
    o.max_iters = max_iters;
    o.tol = tol;
    o.seed = s;
    return o;
  }
};

// Defaults for letter-like and brief-like corpora.
inline RunConfig preset_config(Command command, const std::string& preset) {
  RunConfig c;
  c.command = command;
  c.preset = preset;
  if (preset == "letters") {
    c.rank = 7;
    c.min_df = 0.015;
    c.max_df = 0.8;
    c.ranks = command == Command::hnmf_topdown ? std::vector<int>{7, 3} : std::vector<int>{7, 5, 3};
  } else if (preset == "aob") {
    c.rank = 10;
    c.min_df = 0.04;
    c.max_df = 0.8;
    c.ranks = command == Command::hnmf_topdown ? std::vector<int>{10, 3} : std::vector<int>{10, 4, 2};
  } else {
    throw Error("unknown preset '" + preset + "' (expected letters or aob)");
  }
  if (command == Command::semantic) c.max_features = 700;
  return c;
}

namespace detail {

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <typename T>
void read_optional(const Json& j, const char* key, std::optional<T>& dst) {
  if (!j.contains(key)) return;
  if (j.at(key).is_null())
    dst.reset();
  else
    dst = j.at(key).get<T>();
}

template <typename T>
void read_value(const Json& j, const char* key, T& dst) {
  if (j.contains(key)) dst = j.at(key).get<T>();
}

}  // namespace detail

// Every field except `out`; feeding this back as a config file reproduces the run.
inline Json config_to_json(const RunConfig& c) {
  return Json{{"command", to_string(c.command)},
              {"preset", c.preset},
              {"corpus", c.corpus},
              {"labels", detail::optional_json(c.labels)},
              {"min_df", c.min_df},
              {"max_df", c.max_df},
              {"max_features", detail::optional_json(c.max_features)},
              {"stopwords", detail::optional_json(c.stopwords)},
              {"extra_stopwords", detail::optional_json(c.extra_stopwords)},
              {"keywords", detail::optional_json(c.keywords)},
              {"highlight_factor", c.highlight_factor},
              {"window", c.window},
              {"shift", c.shift},
              {"rank", c.rank},
              {"ranks", c.ranks},
              {"branching", c.branching},
              {"top_k", c.top_k},
              {"lambda", c.lambda},
              {"split", c.split},
              {"trials", c.trials},
              {"seed", c.seed},
              {"max_iters", c.max_iters},
              {"tol", c.tol}};
}

inline void apply_overrides(RunConfig& c, const Json& j) {
  if (!j.is_object()) throw Error("config must be a JSON object");
  static const std::set<std::string> known = {
      "command", "preset", "corpus", "labels", "min_df", "max_df", "max_features",
      "stopwords", "extra_stopwords", "keywords", "highlight_factor", "window", "shift",
      "rank", "ranks", "branching", "top_k", "lambda", "split", "trials", "seed",
      "max_iters", "tol", "out"};
  for (const auto& [key, value] : j.items())
    if (!known.contains(key)) throw Error("unknown config key '" + key + "'");
  try {
    detail::read_value(j, "corpus", c.corpus);
    detail::read_optional(j, "labels", c.labels);
    detail::read_value(j, "min_df", c.min_df);
    detail::read_value(j, "max_df", c.max_df);
    detail::read_optional(j, "max_features", c.max_features);
    detail::read_optional(j, "stopwords", c.stopwords);
    detail::read_optional(j, "extra_stopwords", c.extra_stopwords);
    detail::read_optional(j, "keywords", c.keywords);
    detail::read_value(j, "highlight_factor", c.highlight_factor);
    detail::read_value(j, "window", c.window);
    detail::read_value(j, "shift", c.shift);
    detail::read_value(j, "rank", c.rank);
    detail::read_value(j, "ranks", c.ranks);
    detail::read_value(j, "branching", c.branching);
    detail::read_value(j, "top_k", c.top_k);
    detail::read_value(j, "lambda", c.lambda);
    detail::read_value(j, "split", c.split);
    detail::read_value(j, "trials", c.trials);
    detail::read_value(j, "seed", c.seed);
    detail::read_value(j, "max_iters", c.max_iters);
    detail::read_value(j, "tol", c.tol);
    detail::read_optional(j, "out", c.out);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid config value: ") + e.what());
  }
}

// Layering: preset defaults, then config-file values, then explicit flags.
// The seed falls back to `env_seed` when neither layer sets it.
inline RunConfig resolve_config(Command command, const Json& file_values, const Json& flag_values,
                                std::optional<std::uint64_t> env_seed = std::nullopt) {
  std::string preset = "letters";
  if (file_values.contains("preset")) preset = file_values.at("preset").get<std::string>();
  if (flag_values.contains("preset")) preset = flag_values.at("preset").get<std::string>();
  if (file_values.contains("command") &&
      parse_command(file_values.at("command").get<std::string>()) != command)
    throw Error("config file was written for command '" +
                file_values.at("command").get<std::string>() + "'");

  RunConfig c = preset_config(command, preset);
  if (env_seed) c.seed = *env_seed;
  apply_overrides(c, file_values);
  apply_overrides(c, flag_values);
  // Without an explicit rank list, top-down HNMF splits the root rank by the
  // branching factor; bottom-up keeps the preset sequence.
  if (command == Command::hnmf_topdown && !flag_values.contains("ranks") &&
      !file_values.contains("ranks"))
    c.ranks = {c.rank, c.branching};
  c.validate();
  return c;
}

struct RunOutput {
  Json report;
  Json model;  // null for the supervised commands
  std::string table;
};

namespace detail {

struct Prepared {
  Corpus corpus;
  TermDocumentMatrix x;
  std::optional<HighlightResult> highlight;
};

inline Prepared prepare(const RunConfig& c) {
  Prepared p{load_corpus(c.corpus), {}, std::nullopt};
  VectorizerParams params;
  params.min_df = c.min_df;
  params.max_df = c.max_df;
  params.max_features = c.max_features;
  params.stopwords = c.stopwords ? load_stopword_file(*c.stopwords) : english_stopwords();
  if (c.extra_stopwords) params.extra_stopwords = load_stopword_file(*c.extra_stopwords);
  const Vocabulary vocab = build_vocabulary(p.corpus, params);
  p.x = tfidf_matrix(p.corpus, vocab);
  if (c.keywords) {
    p.highlight = highlight_keywords(p.x, load_keyword_file(*c.keywords), c.highlight_factor);
    p.x = p.highlight->matrix;
  }
  return p;
}

inline Json highlight_json(const std::optional<HighlightResult>& h, double factor) {
  if (!h) return nullptr;
  return Json{{"factor", factor}, {"scaled", h->scaled}, {"missing", h->missing}};
}

inline std::string join(const std::vector<std::string>& words, const char* sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) s += sep;
    s += words[i];
  }
  return s;
}

inline std::string format_fixed(double v, int precision) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(precision) << v;
  return ss.str();
}

// Aligned two-column-plus table.
inline std::string render_table(const std::vector<std::string>& header,
                                const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t k = 0; k < header.size(); ++k) width[k] = header[k].size();
  for (const auto& r : rows)
    for (std::size_t k = 0; k < r.size() && k < width.size(); ++k)
      width[k] = std::max(width[k], r[k].size());
  std::ostringstream ss;
  auto line = [&](const std::vector<std::string>& r) {
    std::string text;
    for (std::size_t k = 0; k < r.size(); ++k) {
      text += r[k];
      if (k + 1 < r.size()) text += std::string(width[k] - r[k].size() + 2, ' ');
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    ss << text << '\n';
  };
  line(header);
  std::vector<std::string> rule;
  for (auto w : width) rule.push_back(std::string(w, '-'));
  line(rule);
  for (const auto& r : rows) line(r);
  return ss.str();
}

inline Json assignments_json(const DocumentAssignment& a, const std::vector<std::string>& ids) {
  Json out = Json::array();
  for (std::size_t j = 0; j < ids.size(); ++j)
    out.push_back(Json{{"doc_id", ids[j]}, {"topic", a.topics[j]}, {"unassigned", static_cast<bool>(a.unassigned[j])}});
  return out;
}

inline std::string topics_section(const Matrix& w, const Matrix& h,
                                                   const Vocabulary& vocab, std::size_t k,
                                                   const std::vector<std::string>& ids,
                                                   Json& report) {
  const auto keywords = topic_keywords(w, vocab, k);
  const auto assignment = assign_documents(h);
  std::vector<int> counts(static_cast<std::size_t>(w.cols()), 0);
  for (std::size_t j = 0; j < ids.size(); ++j)
    if (!assignment.unassigned[j]) ++counts[static_cast<std::size_t>(assignment.topics[j])];

  Json topics = Json::array();
  std::vector<std::vector<std::string>> rows;
  for (std::size_t t = 0; t < keywords.size(); ++t) {
    topics.push_back(Json{{"index", t}, {"keywords", keywords[t]}, {"documents", counts[t]}});
    rows.push_back({"Topic " + std::to_string(t + 1), std::to_string(counts[t]), join(keywords[t])});
  }
  report["topics"] = std::move(topics);
  report["assignments"] = assignments_json(assignment, ids);
  return render_table({"Topic", "Docs", "Keywords"}, rows);
}

inline void outline_node(const TopicNode& node, const Vocabulary& vocab, std::size_t k,
                         const std::string& prefix, int depth, std::ostringstream& ss) {
  if (!node.factorization) return;
  const auto keywords = topic_keywords(node.factorization->W, vocab, k);
  for (std::size_t t = 0; t < keywords.size(); ++t) {
    const std::string label = prefix.empty() ? std::to_string(t + 1) : prefix + "." + std::to_string(t + 1);
    const auto& child = node.children[t];
    ss << std::string(static_cast<std::size_t>(depth) * 2, ' ') << "Topic " << label << " ("
       << child.doc_indices.size() << " docs): " << join(keywords[t]) << '\n';
    outline_node(child, vocab, k, label, depth + 1, ss);
  }
}

inline RunOutput run_topics(const RunConfig& c) {
  Prepared p = prepare(c);
  const auto& vocab = p.x.vocab;
  const auto k = static_cast<std::size_t>(c.top_k);
  RunOutput out;
  out.report = Json{{"command", to_string(c.command)}, {"config", config_to_json(c)}};
  out.report["vocabulary_size"] = vocab.size();
  out.report["documents"] = p.x.doc_ids.size();
  out.report["highlight"] = highlight_json(p.highlight, c.highlight_factor);
  std::ostringstream table;

  switch (c.command) {
    case Command::nmf: {
      const auto f = nmf(p.x, c.solver(c.rank, c.seed));
      out.report["residual"] = residual(p.x.values, f);
      out.report["iterations"] = f.iterations_run;
      const auto t = topics_section(f.W, f.H, vocab, k, p.x.doc_ids, out.report);
      table << "NMF rank " << c.rank << ", residual " << format_fixed(residual(p.x.values, f), 6) << "\n\n" << t;
      out.model = factorization_to_json(f, vocab.terms(), p.x.doc_ids);
      break;
    }
    case Command::semantic: {
      const auto counts = count_cooccurrences(p.corpus, vocab, c.window);
      const auto m = sppmi(counts, c.shift);
      const auto f = semantic_nmf(p.x, m, c.solver(c.rank, c.seed));
      const double data_res = residual(p.x.values, f.W, f.H);
      const double emb_res = (m.values - f.W * f.S * f.W.transpose()).squaredNorm();
      out.report["residual"] = data_res;
      out.report["embedding_residual"] = emb_res;
      out.report["objective"] = f.objective_trace.back();
      out.report["iterations"] = f.iterations_run;
      out.report["safeguarded_steps"] = f.safeguarded_steps;
      const auto t = topics_section(f.W, f.H, vocab, k, p.x.doc_ids, out.report);
      table << "Semantic NMF rank " << c.rank << ", window " << c.window << ", shift " << c.shift
            << ", residual " << format_fixed(data_res, 6) << "\n\n" << t;
      out.model = trifactorization_to_json(f, vocab.terms(), p.x.doc_ids);
      break;
    }
    case Command::hnmf_topdown: {
      const auto tree = topdown_hnmf(p.x.values, c.ranks, c.branching, c.solver(c.ranks.front(), c.seed));
      out.report["tree"] = topic_tree_to_json(tree, p.x.doc_ids, vocab, k, false);
      table << "Top-down HNMF ranks " << join([&] {
        std::vector<std::string> s;
        for (int r : c.ranks) s.push_back(std::to_string(r));
        return s;
      }(), ",") << ", " << tree.leaf_count() << " leaves\n\n";
      std::ostringstream outline;
      outline_node(tree.root, vocab, k, "", 0, outline);
      table << outline.str();
      out.model = topic_tree_to_json(tree, p.x.doc_ids, vocab, k, true);
      break;
    }
    case Command::hnmf_bottomup: {
      const auto chain = bottomup_hnmf(p.x.values, c.ranks, c.solver(c.ranks.front(), c.seed));
      out.report["chain"] = layer_chain_to_json(chain, vocab, k, false);
      out.report["assignments"] = assignments_json(assign_documents(chain.H), p.x.doc_ids);
      for (std::size_t i = 0; i < chain.layers.size(); ++i) {
        const auto keywords = topic_keywords(layer_dictionary(chain, i), vocab, k);
        std::vector<std::vector<std::string>> rows;
        std::vector<int> merges;
        if (i > 0) merges = merge_map(chain, i);
        for (std::size_t t = 0; t < keywords.size(); ++t) rows.push_back({"Topic " + std::to_string(t + 1), join(keywords[t])});
        table << "Layer " << i << " (rank " << chain.ranks[i] << ", residual "
              << format_fixed(chain.residuals[i], 6) << ")\n";
        if (i > 0) {
          table << "merges:";
          for (std::size_t s = 0; s < merges.size(); ++s)
            table << ' ' << (s + 1) << "->" << (merges[s] + 1);
          table << '\n';
        }
        table << render_table({"Topic", "Keywords"}, rows) << '\n';
      }
      out.model = layer_chain_to_json(chain, vocab, k, true);
      out.model["vocab_terms"] = vocab.terms();
      out.model["doc_ids"] = p.x.doc_ids;
      break;
    }
    default:
      throw Error("not a topic command");
  }
  out.table = table.str();
  return out;
}

inline RunOutput run_classification(const RunConfig& c) {
  Prepared p = prepare(c);
  const LabelSet labels = load_labels(*c.labels, p.corpus);
  if (labels.num_classes() == 0) throw Error("labels file assigns no classes");

  std::vector<Index> labeled;
  std::vector<std::string> labeled_ids, excluded;
  for (std::size_t j = 0; j < p.x.doc_ids.size(); ++j) {
    if (labels.labels_of(p.x.doc_ids[j]).empty()) {
      excluded.push_back(p.x.doc_ids[j]);
    } else {
      labeled.push_back(static_cast<Index>(j));
      labeled_ids.push_back(p.x.doc_ids[j]);
    }
  }
  const Matrix x = select_columns(p.x.values, labeled);
  const LabelMatrix y = label_matrix(labels, labeled_ids);
  const auto classes = static_cast<Index>(labels.num_classes());

  Json trials = Json::array();
  std::vector<double> scores;
  std::vector<std::vector<std::string>> rows;
  for (int t = 0; t < c.trials; ++t) {
    const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(t);
    const auto split = split_train_test(x, y.Y, c.split, seed);
    Matrix predicted;
    bool regularized = false;
    if (c.command == Command::snmf) {
      const auto model = snmf_train(split.X_train, split.Y_train, c.lambda, c.solver(c.rank, seed));
      auto pred = snmf_predict(model, split.X_test);
      predicted = std::move(pred.scores);
      regularized = pred.regularized;
    } else {
      const auto res = ssnmf(x, y.Y, split.mask, c.lambda, c.solver(c.rank, seed));
      predicted = select_columns(res.y_prime, split.test_cols);
    }
    const auto binary = binarize_prediction(predicted);
    const double score = las(binary.values, split.Y_test);

    Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> confusion =
        Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>::Zero(classes, classes);
    for (Index j = 0; j < binary.values.cols(); ++j) {
      const Index pred = column_argmax(binary.values, j);
      Index truth = pred;
      if (split.Y_test(pred, j) == 0.0) truth = column_argmax(split.Y_test, j);
      ++confusion(truth, pred);
    }
    Json conf = Json::array();
    for (Index i = 0; i < classes; ++i) {
      Json row = Json::array();
      for (Index k = 0; k < classes; ++k) row.push_back(confusion(i, k));
      conf.push_back(std::move(row));
    }
    int degenerate = 0;
    for (bool d : binary.degenerate) degenerate += d ? 1 : 0;
    trials.push_back(Json{{"seed", seed},
                          {"las", score},
                          {"confusion", std::move(conf)},
                          {"test_documents", split.test_cols.size()},
                          {"degenerate_columns", degenerate},
                          {"regularized", regularized}});
    scores.push_back(score);
    rows.push_back({std::to_string(t + 1), std::to_string(seed), format_fixed(score, 4)});
  }

  double mean = 0.0;
  for (double s : scores) mean += s;
  mean /= static_cast<double>(scores.size());
  double var = 0.0;
  for (double s : scores) var += (s - mean) * (s - mean);
  const double stddev = std::sqrt(var / static_cast<double>(scores.size()));

  RunOutput out;
  out.report = Json{{"command", to_string(c.command)},
                    {"config", config_to_json(c)},
                    {"classes", labels.classes},
                    {"documents_used", labeled_ids.size()},
                    {"documents_excluded", excluded},
                    {"highlight", highlight_json(p.highlight, c.highlight_factor)},
                    {"trials", std::move(trials)},
                    {"mean_las", mean},
                    {"std_las", stddev}};
  out.model = nullptr;
  std::ostringstream table;
  table << (c.command == Command::snmf ? "SNMF" : "SSNMF") << " rank " << c.rank << ", lambda "
        << c.lambda << ", split " << c.split << "\n\n"
        << render_table({"Trial", "Seed", "LAS"}, rows) << "\nmean LAS " << format_fixed(mean, 4)
        << " +/- " << format_fixed(stddev, 4) << " over " << c.trials << " trials\n";
  out.table = table.str();
  return out;
}

}  // namespace detail

inline RunOutput execute(const RunConfig& c) {
  c.validate();
  return is_supervised(c.command) ? detail::run_classification(c) : detail::run_topics(c);
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

// Writes report.json, report.txt and (for topic commands) model.json into
// `dir`. Files are staged and renamed; on failure nothing is left behind.
inline std::vector<std::filesystem::path> write_outputs(const RunOutput& out,
                                                        const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  const bool created = !fs::exists(dir);
  fs::create_directories(dir);
  std::vector<std::pair<fs::path, std::string>> files = {
      {dir / "report.json", dump_json(out.report)}, {dir / "report.txt", out.table}};
  if (!out.model.is_null()) files.emplace_back(dir / "model.json", dump_json(out.model));

  std::vector<fs::path> written;
  try {
    for (const auto& [path, content] : files) {
      fs::path tmp = path;
      tmp += ".partial";
      {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot write " + tmp.string());
        f << content;
        if (!f) throw Error("cannot write " + tmp.string());
      }
      written.push_back(tmp);
    }
    std::vector<fs::path> final_paths;
    for (const auto& [path, content] : files) {
      fs::path tmp = path;
      tmp += ".partial";
      fs::rename(tmp, path);
      final_paths.push_back(path);
    }
    return final_paths;
  } catch (...) {
    std::error_code ec;
    for (const auto& p : written) fs::remove(p, ec);
    if (created) fs::remove_all(dir, ec);
    throw;
  }
}

// Executes a resolved config; prints the table to `out` and errors to `err`.
inline int run(const RunConfig& config, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  try {
    const RunOutput result = execute(config);
    if (config.out) write_outputs(result, *config.out);
    out << result.table;
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

// Writes a planted corpus as <dir>/corpus/*.txt plus labels.csv and truth.csv.
inline void write_synthetic(const SyntheticCorpus& s, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "corpus");
  for (const auto& d : s.corpus.documents) {
    std::ofstream f(dir / "corpus" / (d.id + ".txt"), std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write corpus file for " + d.id);
    f << d.text << '\n';
  }
  std::ofstream labels(dir / "labels.csv", std::ios::binary | std::ios::trunc);
  std::ofstream truth(dir / "truth.csv", std::ios::binary | std::ios::trunc);
  if (!labels || !truth) throw Error("cannot write label files in " + dir.string());
  labels << "doc_id,labels\n";
  truth << "doc_id,topic\n";
  for (std::size_t j = 0; j < s.corpus.documents.size(); ++j) {
    const auto& id = s.corpus.documents[j].id;
    std::vector<std::string> names;
    for (auto k : s.labels.labels_of(id)) names.push_back(s.labels.classes[k]);
    labels << id << ',' << detail::join(names, ";") << '\n';
    truth << id << ',' << s.ground_truth[j] << '\n';
  }
}

}  // namespace nmf_forge
