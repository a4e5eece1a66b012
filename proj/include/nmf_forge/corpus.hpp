#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nmf_forge/error.hpp"

namespace nmf_forge {

struct Document {
  std::string id;
  std::string text;
};

// Documents sorted by id; the position of a document is its column in X.
struct Corpus {
  std::vector<Document> documents;
  std::string source_path;

  std::size_t size() const { return documents.size(); }
  bool empty() const { return documents.empty(); }

  std::vector<std::string> doc_ids() const {
    std::vector<std::string> ids;
    ids.reserve(documents.size());
    for (const auto& d : documents) ids.push_back(d.id);
    return ids;
  }
};

// Class names are sorted; every corpus document has an entry in assignments,
// possibly empty.
struct LabelSet {
  std::vector<std::string> classes;
  std::map<std::string, std::set<std::size_t>> assignments;

  std::size_t num_classes() const { return classes.size(); }

  const std::set<std::size_t>& labels_of(const std::string& doc_id) const {
    static const std::set<std::size_t> kNone;
    auto it = assignments.find(doc_id);
    return it == assignments.end() ? kNone : it->second;
  }
};

inline bool is_valid_utf8(std::string_view s) {
  std::size_t i = 0;
  const std::size_t n = s.size();
  while (i < n) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    char32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > n) return false;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // overlong encodings, surrogates, out of range
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
        (len == 4 && cp < 0x10000) || cp > 0x10FFFF ||
        (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += len;
  }
  return true;
}

// Sorts by id and checks the id invariants.
inline Corpus make_corpus(std::vector<Document> docs, std::string source_path = {}) {
  std::sort(docs.begin(), docs.end(),
            [](const Document& a, const Document& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (docs[i].id.empty()) throw Error("empty doc_id");
    if (i > 0 && docs[i].id == docs[i - 1].id)
      throw Error("duplicate doc_id " + docs[i].id);
  }
  return Corpus{std::move(docs), std::move(source_path)};
}

namespace detail {

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

}  // namespace detail

// One document per `.txt` file directly inside `dir`; doc_id is the file stem.
inline Corpus load_corpus(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec))
    throw Error("corpus directory not found: " + dir.string());

  std::vector<Document> docs;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    std::string text = detail::read_file(entry.path());
    if (!is_valid_utf8(text))
      throw Error("file is not valid UTF-8: " + entry.path().filename().string());
    docs.push_back({entry.path().stem().string(), std::move(text)});
  }
  if (docs.empty()) throw Error("no documents in " + dir.string());
  return make_corpus(std::move(docs), dir.string());
}

// Parses `doc_id,labels` CSV text. `origin` only decorates error messages.
inline LabelSet parse_labels(std::string_view csv, const Corpus& corpus,
                             const std::string& origin = "labels") {
  if (!is_valid_utf8(csv)) throw Error(origin + " is not valid UTF-8");

  std::set<std::string> known;
  for (const auto& d : corpus.documents) known.insert(d.id);

  std::map<std::string, std::vector<std::string>> rows;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    auto nl = csv.find('\n', pos);
    if (nl == std::string_view::npos) nl = csv.size();
    std::string_view line = detail::trim(csv.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    if (!header_seen) {
      if (line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
      if (line != "doc_id,labels")
        throw Error(origin + ": expected header 'doc_id,labels'");
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos)
      throw Error(origin + ": line " + std::to_string(line_no) + " has no ',' separator");
    std::string id(detail::trim(line.substr(0, comma)));
    std::string_view cell = detail::trim(line.substr(comma + 1));
    if (!known.contains(id)) throw Error("unknown doc_id " + id);
    if (rows.contains(id)) throw Error("duplicate doc_id " + id + " in " + origin);

    std::vector<std::string> names;
    std::size_t p = 0;
    while (p <= cell.size()) {
      auto semi = cell.find(';', p);
      if (semi == std::string_view::npos) semi = cell.size();
      auto name = detail::trim(cell.substr(p, semi - p));
      if (!name.empty()) names.emplace_back(name);
      p = semi + 1;
    }
    rows.emplace(std::move(id), std::move(names));
  }
  if (!header_seen) throw Error(origin + ": expected header 'doc_id,labels'");

  std::set<std::string> class_set;
  for (const auto& [id, names] : rows) class_set.insert(names.begin(), names.end());

  LabelSet out;
  out.classes.assign(class_set.begin(), class_set.end());
  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < out.classes.size(); ++k) index[out.classes[k]] = k;
  for (const auto& d : corpus.documents) out.assignments[d.id];
  for (const auto& [id, names] : rows)
    for (const auto& name : names) out.assignments[id].insert(index.at(name));
  return out;
}

inline LabelSet load_labels(const std::filesystem::path& path, const Corpus& corpus) {
  if (!std::filesystem::is_regular_file(path))
    throw Error("labels file not found: " + path.string());
  return parse_labels(detail::read_file(path), corpus, path.filename().string());
}

}  // namespace nmf_forge
