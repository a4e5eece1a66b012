#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nmf_forge/corpus.hpp"
#include "nmf_forge/error.hpp"
#include "nmf_forge/matrix.hpp"
#include "nmf_forge/stopwords.hpp"

namespace nmf_forge {

// Lowercases ASCII and splits on every run of characters outside [a-z0-9_].
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (c >= 'A' && c <= 'Z') c = static_cast<unsigned char>(c - 'A' + 'a');
    const bool word = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
    if (word) {
      current.push_back(static_cast<char>(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

class Vocabulary {
 public:
  Vocabulary() = default;

  // `terms` must be sorted and unique; the stats are aligned to it.
  Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> doc_freq,
             std::vector<std::size_t> corpus_freq)
      : terms_(std::move(terms)),
        doc_freq_(std::move(doc_freq)),
        corpus_freq_(std::move(corpus_freq)) {
    if (doc_freq_.size() != terms_.size() || corpus_freq_.size() != terms_.size())
      throw Error("vocabulary statistics do not match term count");
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (i > 0 && !(terms_[i - 1] < terms_[i]))
        throw Error("vocabulary terms must be sorted and unique");
      index_.emplace(terms_[i], i);
    }
  }

  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::vector<std::string>& terms() const { return terms_; }
  const std::string& term(std::size_t i) const { return terms_.at(i); }
  std::size_t doc_freq(std::size_t i) const { return doc_freq_.at(i); }
  std::size_t corpus_freq(std::size_t i) const { return corpus_freq_.at(i); }

  std::optional<std::size_t> index_of(std::string_view term) const {
    auto it = index_.find(std::string(term));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::vector<std::string> terms_;
  std::vector<std::size_t> doc_freq_;
  std::vector<std::size_t> corpus_freq_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct VectorizerParams {
  double max_df = 1.0;
  double min_df = 0.0;
  std::optional<std::size_t> max_features;
  std::set<std::string> stopwords;
  std::set<std::string> extra_stopwords;

  void validate() const {
    if (!(max_df > 0.0 && max_df <= 1.0)) throw Error("max_df must lie in (0, 1]");
    if (!(min_df >= 0.0 && min_df < 1.0)) throw Error("min_df must lie in [0, 1)");
    if (!(min_df < max_df)) throw Error("min_df must be smaller than max_df");
    if (max_features && *max_features == 0) throw Error("max_features must be positive");
  }

  bool is_stopword(const std::string& t) const {
    return stopwords.contains(t) || extra_stopwords.contains(t);
  }
};

struct TermDocumentMatrix {
  Matrix values;  // d x n
  Vocabulary vocab;
  std::vector<std::string> doc_ids;

  Index terms() const { return values.rows(); }
  Index docs() const { return values.cols(); }
};

inline Vocabulary build_vocabulary(const Corpus& corpus, const VectorizerParams& params) {
  params.validate();
  if (corpus.empty()) throw Error("no documents");
  const double n = static_cast<double>(corpus.size());

  std::map<std::string, std::pair<std::size_t, std::size_t>> stats;  // df, cf
  for (const auto& doc : corpus.documents) {
    std::set<std::string> seen;
    for (auto& tok : tokenize(doc.text)) {
      auto& s = stats[tok];
      ++s.second;
      if (seen.insert(tok).second) ++s.first;
    }
  }

  struct Candidate {
    const std::string* term;
    std::size_t df, cf;
  };
  std::vector<Candidate> kept;
  for (const auto& [term, s] : stats) {
    if (params.is_stopword(term)) continue;
    const double frac = static_cast<double>(s.first) / n;
    if (frac < params.min_df || frac > params.max_df) continue;
    kept.push_back({&term, s.first, s.second});
  }
  if (kept.empty()) throw Error("empty vocabulary");

  if (params.max_features && kept.size() > *params.max_features) {
    std::stable_sort(kept.begin(), kept.end(), [](const Candidate& a, const Candidate& b) {
      if (a.cf != b.cf) return a.cf > b.cf;
      return *a.term < *b.term;
    });
    kept.resize(*params.max_features);
    std::sort(kept.begin(), kept.end(),
              [](const Candidate& a, const Candidate& b) { return *a.term < *b.term; });
  }

  std::vector<std::string> terms;
  std::vector<std::size_t> df, cf;
  for (const auto& c : kept) {
    terms.push_back(*c.term);
    df.push_back(c.df);
    cf.push_back(c.cf);
  }
  return Vocabulary(std::move(terms), std::move(df), std::move(cf));
}

// Smoothed idf: ln((1 + n) / (1 + df)) + 1.
inline double smoothed_idf(std::size_t n_docs, std::size_t doc_freq) {
  return std::log((1.0 + static_cast<double>(n_docs)) / (1.0 + static_cast<double>(doc_freq))) + 1.0;
}

// tf * idf per entry, then every nonzero column scaled to unit Euclidean norm.
inline TermDocumentMatrix tfidf_matrix(const Corpus& corpus, const Vocabulary& vocab) {
  const auto d = static_cast<Index>(vocab.size());
  const auto n = static_cast<Index>(corpus.size());
  Matrix x = Matrix::Zero(d, n);
  for (Index j = 0; j < n; ++j) {
    for (const auto& tok : tokenize(corpus.documents[static_cast<std::size_t>(j)].text))
      if (auto i = vocab.index_of(tok)) x(static_cast<Index>(*i), j) += 1.0;
  }
  for (Index i = 0; i < d; ++i)
    x.row(i) *= smoothed_idf(corpus.size(), vocab.doc_freq(static_cast<std::size_t>(i)));
  for (Index j = 0; j < n; ++j) {
    const double norm = x.col(j).norm();
    if (norm > 0.0) x.col(j) /= norm;
  }
  return TermDocumentMatrix{std::move(x), vocab, corpus.doc_ids()};
}

struct HighlightResult {
  TermDocumentMatrix matrix;
  std::vector<std::string> scaled;   // vocabulary terms whose rows were scaled
  std::vector<std::string> missing;  // keyword tokens not in the vocabulary
};

// Multiplies the rows of the given keywords by `factor`. Phrases are tokenized
// and every token is treated as a keyword of its own.
inline HighlightResult highlight_keywords(const TermDocumentMatrix& x,
                                          const std::vector<std::string>& keywords,
                                          double factor) {
  if (!(factor > 0.0)) throw Error("highlight factor must be positive");
  std::set<std::string> tokens;
  for (const auto& phrase : keywords)
    for (auto& t : tokenize(phrase)) tokens.insert(std::move(t));

  HighlightResult out{x, {}, {}};
  for (const auto& t : tokens) {
    if (auto i = x.vocab.index_of(t)) {
      out.matrix.values.row(static_cast<Index>(*i)) *= factor;
      out.scaled.push_back(t);
    } else {
      out.missing.push_back(t);
    }
  }
  return out;
}

// Comma- or newline-separated phrases.
inline std::vector<std::string> parse_keyword_list(std::string_view text) {
  std::vector<std::string> phrases;
  std::size_t p = 0;
  while (p <= text.size()) {
    auto e = text.find_first_of(",\n", p);
    if (e == std::string_view::npos) e = text.size();
    auto phrase = detail::trim(text.substr(p, e - p));
    if (!phrase.empty()) phrases.emplace_back(phrase);
    p = e + 1;
  }
  return phrases;
}

inline std::vector<std::string> load_keyword_file(const std::filesystem::path& path) {
  const auto text = detail::read_file(path);
  if (!is_valid_utf8(text)) throw Error("file is not valid UTF-8: " + path.string());
  return parse_keyword_list(text);
}

// One word per line; blank lines ignored, entries lowercased.
inline std::set<std::string> load_stopword_file(const std::filesystem::path& path) {
  const auto text = detail::read_file(path);
  if (!is_valid_utf8(text)) throw Error("file is not valid UTF-8: " + path.string());
  std::set<std::string> words;
  std::size_t p = 0;
  std::string_view view(text);
  while (p <= view.size()) {
    auto e = view.find('\n', p);
    if (e == std::string_view::npos) e = view.size();
    std::string w(detail::trim(view.substr(p, e - p)));
    std::transform(w.begin(), w.end(), w.begin(), [](unsigned char c) {
      return static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
    });
    if (!w.empty()) words.insert(std::move(w));
    p = e + 1;
  }
  return words;
}

}  // namespace nmf_forge
