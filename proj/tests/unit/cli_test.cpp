#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "poiname/commands.hpp"
#include "poiname/io.hpp"
#include "synthetic.hpp"

namespace poiname {
namespace {
namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::size_t line_count(const fs::path& path) {
  const auto text = slurp(path);
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("poiname_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string fixture(const char* name) const { return std::string(POINAME_FIXTURE_DIR) + "/" + name; }
  std::string work() const { return (dir_ / "work").string(); }

  void ingest_synthetic(std::size_t per_region = 60) {
    const auto data = dir_ / "synthetic.jsonl";
    testing::write_synthetic_dataset(data, per_region);
    const auto r = run({"ingest", "--input", data.string(), "--out", work()});
    ASSERT_EQ(r.code, 0) << r.err;
  }

  fs::path dir_;
};

TEST_F(CliTest, IngestWithMapping) {
  const auto r = run({"ingest", "--input", fixture("mini_business.jsonl"), "--mapping",
                      fixture("mini_mapping.tsv"), "--out", work()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("7 records in 3 regions (6 rejected)"), std::string::npos) << r.out;
  EXPECT_EQ(line_count(fs::path(work()) / "corpus.tsv"), 7u);
  EXPECT_EQ(line_count(fs::path(work()) / "rejections.tsv"), 7u);
  EXPECT_EQ(line_count(fs::path(work()) / "regions.tsv"), 4u);
  const auto summary = io::read_key_values_file(fs::path(work()) / "ingest_summary.txt");
  EXPECT_EQ(summary.at("regions"), "3");
  EXPECT_EQ(summary.at("region.phoenix"), "4");
  EXPECT_TRUE(fs::exists(fs::path(work()) / "manifest_ingest.txt"));
}

TEST_F(CliTest, IngestErrors) {
  auto r = run({"ingest", "--input", fixture("mini_business.jsonl"), "--mapping",
                (dir_ / "absent.tsv").string(), "--out", work()});
  EXPECT_EQ(r.code, 2);

  std::ofstream(dir_ / "empty.jsonl").close();
  r = run({"ingest", "--input", (dir_ / "empty.jsonl").string(), "--out", work()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("empty corpus"), std::string::npos) << r.err;

  r = run({"ingest", "--input", (dir_ / "absent.jsonl").string(), "--out", work()});
  EXPECT_EQ(r.code, 2);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"zipf"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"--version"}).code, 0);
}

TEST_F(CliTest, MissingUpstreamStageIsNamed) {
  auto r = run({"zipf", "--out", work()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("'ingest'"), std::string::npos) << r.err;

  ingest_synthetic();
  r = run({"decay", "--out", work(), "--mode", "count"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("similarity_count"), std::string::npos) << r.err;
  r = run({"similarity", "--out", work(), "--mode", "embedding"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("'embed'"), std::string::npos) << r.err;
}

TEST_F(CliTest, StaleArtifactsAreRejected) {
  ingest_synthetic();
  ASSERT_EQ(run({"vectors", "--out", work(), "--mode", "count"}).code, 0);
  ASSERT_EQ(run({"similarity", "--out", work(), "--mode", "count"}).code, 0);
  {
    std::ofstream append(fs::path(work()) / "corpus.tsv", std::ios::app);
    append << "alpha\t33\t-112\t\textra name\n";
  }
  auto r = run({"zipf", "--out", work()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("stale"), std::string::npos) << r.err;
  r = run({"decay", "--out", work(), "--mode", "count", "--permutations", "99"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("'ingest'"), std::string::npos) << r.err;
}

TEST_F(CliTest, FullPipeline) {
  ingest_synthetic();
  const fs::path w(work());
  auto r = run({"zipf", "--out", work()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto zipf = io::read_key_values_file(w / "zipf_fit.txt");
  EXPECT_LT(std::stod(zipf.at("b")), 0.0);

  r = run({"local-terms", "--out", work(), "--top", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(line_count(w / "local_terms" / "alpha.tsv"), 5u);
  EXPECT_EQ(line_count(w / "local_terms.tsv"), 21u);

  r = run({"type-usage", "--out", work(), "--top", "6", "--min-count", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto jsd = io::read_key_values_file(w / "jsd_summary.txt");
  EXPECT_EQ(jsd.at("pairs"), "10");
  EXPECT_GE(std::stod(jsd.at("mean_jsd")), 0.0);

  for (const char* mode : {"count", "tfidf"}) {
    r = run({"vectors", "--out", work(), "--mode", mode});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  r = run({"embed", "--out", work(), "--dim", "8", "--epochs", "5", "--seed", "42"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(line_count(w / "embedding_loss.tsv"), 6u);

  for (const char* mode : {"count", "tfidf", "embedding"}) {
    r = run({"similarity", "--out", work(), "--mode", mode, "--km"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto m = io::read_matrix_file(w / ("similarity_" + std::string(mode) + ".tsv"));
    EXPECT_EQ(m.size(), 5u);
    EXPECT_TRUE(m.is_symmetric());
  }
  const auto km = io::read_matrix_file(w / "distances_km.tsv");
  const auto meters = io::read_matrix_file(w / "distances.tsv");
  EXPECT_NEAR(km.at(0, 1) * 1000, meters.at(0, 1), 1e-6);

  r = run({"decay", "--out", work(), "--mode", "count", "--permutations", "999"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(line_count(w / "decay_observations_count.tsv"), 11u);
  const auto decay = io::read_key_values_file(w / "decay_count.txt");
  EXPECT_EQ(decay.at("pearson.n"), "10");
  EXPECT_EQ(decay.at("pearson.p_method"), "permutation");
  EXPECT_GE(std::stod(decay.at("pearson.p_value")), 1.0 / 1000);

  r = run({"decay", "--out", work(), "--mode", "tfidf", "--p-method", "t"});
  // alpha and echo share no term outside the everywhere-terms, so pure tf-idf similarity is 0
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("alpha/echo"), std::string::npos) << r.err;
  r = run({"decay", "--out", work(), "--mode", "count", "--p-method", "bootstrap"});
  EXPECT_EQ(r.code, 2);
}

TEST_F(CliTest, EmbedIsByteIdenticalAcrossRuns) {
  ingest_synthetic(30);
  const fs::path w(work());
  const std::vector<std::string> args = {"embed", "--out", work(), "--dim", "8", "--epochs", "4",
                                         "--seed", "42", "--threads", "1"};
  ASSERT_EQ(run(args).code, 0);
  const auto model = slurp(w / "embedding_model.txt");
  const auto manifest = slurp(w / "manifest_embed.txt");
  ASSERT_EQ(run(args).code, 0);
  EXPECT_EQ(slurp(w / "embedding_model.txt"), model);
  EXPECT_EQ(slurp(w / "manifest_embed.txt"), manifest);
}

TEST_F(CliTest, InvalidEmbeddingConfig) {
  ingest_synthetic(20);
  EXPECT_EQ(run({"embed", "--out", work(), "--dim", "0"}).code, 2);
  EXPECT_EQ(run({"embed", "--out", work(), "--threads", "x"}).code, 2);
}

}  // namespace
}  // namespace poiname
