#include <gtest/gtest.h>

#include <sstream>

#include "nmf_forge/pipeline.hpp"
#include "test_util.hpp"

using namespace nmf_forge;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) { return detail::read_file(p); }

// Writes a 7-topic planted corpus plus labels under `dir`.
void planted_corpus(const TempDir& dir, std::uint64_t seed = 1) {
  PlantedSpec spec;
  spec.n_topics = 7;
  spec.docs_per_topic = 8;
  spec.words_per_doc = 40;
  spec.vocab_per_topic = 15;
  spec.noise_rate = 0.05;
  spec.seed = seed;
  write_synthetic(generate(spec), dir.path());
}

RunConfig config_for(Command cmd, const TempDir& dir, Json flags = Json::object()) {
  flags["corpus"] = (dir.path() / "corpus").string();
  if (is_supervised(cmd)) flags["labels"] = (dir.path() / "labels.csv").string();
  return resolve_config(cmd, Json::object(), flags);
}

}  // namespace

TEST(Config, PresetDefaults) {
  const auto letters = preset_config(Command::nmf, "letters");
  EXPECT_EQ(letters.rank, 7);
  EXPECT_DOUBLE_EQ(letters.min_df, 0.015);
  EXPECT_DOUBLE_EQ(letters.max_df, 0.8);
  EXPECT_FALSE(letters.max_features);
  const auto aob = preset_config(Command::hnmf_bottomup, "aob");
  EXPECT_EQ(aob.rank, 10);
  EXPECT_DOUBLE_EQ(aob.min_df, 0.04);
  EXPECT_EQ(aob.ranks, (std::vector<int>{10, 4, 2}));
  EXPECT_EQ(preset_config(Command::semantic, "aob").max_features, std::optional<std::size_t>(700));
  EXPECT_THROW(preset_config(Command::nmf, "novels"), Error);
}

TEST(Config, LayeringOrder) {
  const Json file = {{"corpus", "/a"}, {"rank", 4}, {"seed", 3}, {"tol", 1e-7}};
  const Json flags = {{"rank", 5}};
  const auto c = resolve_config(Command::nmf, file, flags, 11);
  EXPECT_EQ(c.rank, 5);
  EXPECT_EQ(c.seed, 3u);
  EXPECT_DOUBLE_EQ(c.tol, 1e-7);
  EXPECT_EQ(c.corpus, "/a");

  const auto env_only = resolve_config(Command::nmf, Json::object(), Json{{"corpus", "/a"}}, 11);
  EXPECT_EQ(env_only.seed, 11u);
  const auto flag_seed = resolve_config(Command::nmf, file, Json{{"seed", 8}}, 11);
  EXPECT_EQ(flag_seed.seed, 8u);
}

TEST(Config, TopDownRanksFollowRankAndBranching) {
  const auto c = resolve_config(Command::hnmf_topdown, Json::object(),
                                Json{{"corpus", "/a"}, {"rank", 4}, {"branching", 2}});
  EXPECT_EQ(c.ranks, (std::vector<int>{4, 2}));
  const auto explicit_ranks = resolve_config(Command::hnmf_topdown, Json::object(),
                                             Json{{"corpus", "/a"}, {"ranks", {6, 2, 2}}});
  EXPECT_EQ(explicit_ranks.ranks, (std::vector<int>{6, 2, 2}));
}

TEST(Config, Rejections) {
  EXPECT_THROW(resolve_config(Command::nmf, Json{{"bogus", 1}}, Json{{"corpus", "/a"}}), Error);
  EXPECT_THROW(resolve_config(Command::nmf, Json::object(), Json::object()), Error);
  EXPECT_THROW(resolve_config(Command::snmf, Json::object(), Json{{"corpus", "/a"}}), Error);
  EXPECT_THROW(resolve_config(Command::nmf, Json{{"command", "snmf"}}, Json{{"corpus", "/a"}}), Error);
  EXPECT_THROW(resolve_config(Command::nmf, Json{{"rank", "seven"}}, Json{{"corpus", "/a"}}), Error);
}

TEST(Run, NmfReportsRankTopicsWithTopKeywords) {
  TempDir dir;
  planted_corpus(dir);
  const auto result = execute(config_for(Command::nmf, dir));
  const auto& topics = result.report.at("topics");
  ASSERT_EQ(topics.size(), 7u);
  for (const auto& t : topics) EXPECT_EQ(t.at("keywords").size(), 10u);
  EXPECT_EQ(result.report.at("assignments").size(), 56u);
  const auto f = factorization_from_json(result.model);
  EXPECT_EQ(f.rank(), 7);
  EXPECT_EQ(f.H.cols(), 56);
}

TEST(Run, EmptyCorpusDirectoryFails) {
  TempDir dir;
  fs::create_directories(dir.path() / "corpus");
  auto c = config_for(Command::nmf, dir);
  c.out = (dir.path() / "out").string();
  std::ostringstream out, err;
  EXPECT_EQ(run(c, out, err), 1);
  EXPECT_NE(err.str().find("no documents"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir.path() / "out"));
}

TEST(Run, RerunsAreByteIdentical) {
  TempDir dir;
  planted_corpus(dir);
  for (Command cmd : {Command::nmf, Command::semantic, Command::hnmf_topdown, Command::hnmf_bottomup,
                      Command::snmf, Command::ssnmf}) {
    Json flags = {{"rank", 7}, {"max_iters", 60}, {"trials", 2}};
    if (cmd == Command::hnmf_bottomup) flags["ranks"] = {7, 4, 2};
    auto c = config_for(cmd, dir, flags);
    c.out = (dir.path() / ("a_" + to_string(cmd))).string();
    std::ostringstream sink;
    ASSERT_EQ(run(c, sink, sink), 0) << to_string(cmd) << ": " << sink.str();
    c.out = (dir.path() / ("b_" + to_string(cmd))).string();
    ASSERT_EQ(run(c, sink, sink), 0);
    for (const char* name : {"report.json", "report.txt", "model.json"}) {
      const auto a = dir.path() / ("a_" + to_string(cmd)) / name;
      const auto b = dir.path() / ("b_" + to_string(cmd)) / name;
      ASSERT_EQ(fs::exists(a), fs::exists(b));
      if (fs::exists(a)) {
        EXPECT_EQ(slurp(a), slurp(b)) << to_string(cmd) << " " << name;
      }
    }
  }
}

TEST(Run, ConfigEchoReproducesRun) {
  TempDir dir;
  planted_corpus(dir);
  const auto first = execute(config_for(Command::nmf, dir, Json{{"rank", 5}, {"seed", 9}}));
  const Json echoed = first.report.at("config");
  const auto again = execute(resolve_config(Command::nmf, echoed, Json::object()));
  EXPECT_EQ(dump_json(again.report), dump_json(first.report));
  EXPECT_EQ(dump_json(again.model), dump_json(first.model));
}

TEST(Run, ClassificationReport) {
  TempDir dir;
  planted_corpus(dir);
  const auto r = execute(config_for(Command::snmf, dir, Json{{"trials", 3}})).report;
  EXPECT_EQ(r.at("trials").size(), 3u);
  EXPECT_EQ(r.at("classes").size(), 7u);
  for (const auto& t : r.at("trials")) {
    EXPECT_GE(t.at("las").get<double>(), 0.0);
    EXPECT_LE(t.at("las").get<double>(), 1.0);
    EXPECT_EQ(t.at("test_documents").get<int>(), 14);
  }
  EXPECT_FALSE(r.contains("model"));
}

TEST(WriteOutputs, FailureLeavesNothingBehind) {
  TempDir dir;
  RunOutput out;
  out.report = Json{{"a", 1}};
  out.table = "t\n";
  // model.json is a directory, so the final rename fails.
  const auto target = dir.path() / "out";
  fs::create_directories(target / "model.json" / "x");
  out.model = Json{{"b", 2}};
  EXPECT_ANY_THROW(write_outputs(out, target));
  EXPECT_FALSE(fs::exists(target / "report.json.partial"));
  EXPECT_FALSE(fs::exists(target / "model.json.partial"));

  const auto fresh = dir.path() / "fresh";
  RunOutput ok;
  ok.report = Json{{"a", 1}};
  ok.table = "t\n";
  const auto paths = write_outputs(ok, fresh);
  EXPECT_EQ(paths.size(), 2u);
  EXPECT_EQ(slurp(fresh / "report.json"), "{\n  \"a\": 1\n}\n");
}

TEST(Serialize, FactorizationRoundTrip) {
  Factorization f;
  f.W = (Matrix(2, 2) << 0.1, 0.2, 0.3, 1e-17).finished();
  f.H = (Matrix(2, 3) << 1, 2, 3, 4, 5, 6).finished();
  f.objective_trace = {2.0, 1.0};
  const Json j = factorization_to_json(f, {"a", "b"}, {"d0", "d1", "d2"});
  EXPECT_EQ(j.at("rank").get<int>(), 2);
  const auto back = factorization_from_json(Json::parse(j.dump()));
  EXPECT_EQ(back.W, f.W);
  EXPECT_EQ(back.H, f.H);
  EXPECT_EQ(back.objective_trace, f.objective_trace);
}

TEST(Synthetic, WrittenCorpusLoadsBack) {
  TempDir dir;
  PlantedSpec spec;
  spec.n_topics = 2;
  spec.docs_per_topic = 3;
  const auto s = generate(spec);
  write_synthetic(s, dir.path());
  const auto c = load_corpus(dir.path() / "corpus");
  ASSERT_EQ(c.size(), 6u);
  EXPECT_EQ(tokenize(c.documents[0].text), tokenize(s.corpus.documents[0].text));
  const auto labels = load_labels(dir.path() / "labels.csv", c);
  EXPECT_EQ(labels.num_classes(), 2u);
}
