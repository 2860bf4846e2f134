#include "cli.hpp"

#include "gcm/dataset.hpp"
#include "gcm/json_io.hpp"

#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

long lines(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("gcm_cli_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        source_ = path("d.csv");
        gcm::write_csv(gcm::oracle::mixed_dataset(300, 6, 17), source_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    int run(const std::vector<std::string>& args) {
        out_.str("");
        err_.str("");
        return gcm::cli::run(args, out_, err_);
    }

    fs::path dir_;
    std::string source_;
    std::ostringstream out_, err_;
};

TEST_F(CliTest, StatsPrintsVersionedJson) {
    ASSERT_EQ(run({"stats", "--input", source_}), 0) << err_.str();
    const json j = json::parse(out_.str());
    EXPECT_EQ(j["format_version"], gcm::kFormatVersion);
    EXPECT_EQ(j["means"].size(), 6u);
    EXPECT_EQ(j["stds"].size(), 6u);
    EXPECT_TRUE(err_.str().empty());
}

TEST_F(CliTest, CorrCsvAndJson) {
    ASSERT_EQ(run({"corr", "--input", source_, "--format", "csv", "--out", path("c.csv")}), 0) << err_.str();
    const gcm::Dataset c = gcm::load_csv(path("c.csv"));
    EXPECT_EQ(c.rows(), 6u);
    EXPECT_EQ(c.names(), gcm::oracle::default_names(6));
    ASSERT_EQ(run({"corr", "--input", source_}), 0);
    const json j = json::parse(out_.str());
    EXPECT_EQ(j["entries"].size(), 6u);
    EXPECT_EQ(j["entries"][2][2], 1.0);
}

TEST_F(CliTest, MpoleReportsSubsetByName) {
    ASSERT_EQ(run({"mpole", "--input", source_, "--columns", "f0,f3,f5"}), 0) << err_.str();
    const json j = json::parse(out_.str());
    EXPECT_EQ(j["subset"], json({"f0", "f3", "f5"}));
    EXPECT_GE(j["mp"].get<double>(), 0.0);
    EXPECT_LE(j["mp"].get<double>(), 1.0);
    EXPECT_EQ(j["minimizer"].size(), 3u);
}

TEST_F(CliTest, MpoleSingleColumnIsUsageError) {
    EXPECT_EQ(run({"mpole", "--input", path("never-read.csv"), "--columns", "a"}), 1);
    EXPECT_NE(err_.str().find("k >= 2"), std::string::npos) << err_.str();
    EXPECT_TRUE(out_.str().empty());
}

TEST_F(CliTest, MpoleUnknownColumn) {
    EXPECT_EQ(run({"mpole", "--input", source_, "--columns", "f0,nope"}), 1);
    EXPECT_NE(err_.str().find("nope"), std::string::npos);
}

TEST_F(CliTest, GenerateIsByteDeterministic) {
    const std::vector<std::string> args{"generate", "--input", source_, "--rows", "1000", "--seed", "42",
                                        "--mode", "exact", "--out", path("s1.csv")};
    ASSERT_EQ(run(args), 0) << err_.str();
    auto again = args;
    again.back() = path("s2.csv");
    ASSERT_EQ(run(again), 0);
    EXPECT_EQ(slurp(path("s1.csv")), slurp(path("s2.csv")));
    const json meta = json::parse(slurp(path("s1.csv.meta.json")));
    EXPECT_EQ(meta["seed"], 42);
    EXPECT_EQ(meta["mode"], "exact");
    EXPECT_EQ(meta["applied_jitter"], 0.0);
    EXPECT_EQ(meta["format_version"], gcm::kFormatVersion);
}

TEST_F(CliTest, FitThenGenerateFromBlueprintMatchesInlineFit) {
    ASSERT_EQ(run({"fit", "--input", source_, "--out", path("bp.json")}), 0) << err_.str();
    ASSERT_EQ(run({"generate", "--blueprint", path("bp.json"), "--rows", "200", "--seed", "3", "--out",
                   path("a.csv")}),
              0)
        << err_.str();
    ASSERT_EQ(run({"generate", "--input", source_, "--rows", "200", "--seed", "3", "--out", path("b.csv")}), 0);
    EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
}

TEST_F(CliTest, GenerateNeedsExactlyOneSource) {
    EXPECT_EQ(run({"generate", "--rows", "10", "--out", path("x.csv")}), 1);
    EXPECT_EQ(run({"generate", "--input", source_, "--blueprint", path("bp.json"), "--rows", "10", "--out",
                   path("x.csv")}),
              1);
    EXPECT_FALSE(fs::exists(path("x.csv")));
}

TEST_F(CliTest, GenerateRejectsBadFlagsBeforeIo) {
    EXPECT_EQ(run({"generate", "--input", source_, "--rows", "1", "--out", path("x.csv")}), 1);
    EXPECT_EQ(run({"generate", "--input", source_, "--rows", "10", "--mode", "fuzzy", "--out", path("x.csv")}), 1);
    EXPECT_FALSE(fs::exists(path("x.csv")));
    EXPECT_EQ(run({"generate", "--input", source_, "--rows", "4", "--out", path("x.csv")}), 1);
    EXPECT_NE(err_.str().find("ExactModeRankError"), std::string::npos) << err_.str();
}

TEST_F(CliTest, VerifyExitCodes) {
    ASSERT_EQ(run({"generate", "--input", source_, "--rows", "500", "--seed", "1", "--out", path("s.csv")}), 0);
    EXPECT_EQ(run({"verify", "--source", source_, "--synthetic", path("s.csv"), "--max-order", "4", "--tolerance",
                   "1e-7"}),
              0)
        << out_.str() << err_.str();
    json report = json::parse(out_.str());
    EXPECT_TRUE(report["pass"].get<bool>());
    EXPECT_EQ(report["orders"].size(), 3u);

    ASSERT_EQ(run({"generate", "--input", source_, "--rows", "500", "--seed", "1", "--mode", "expected", "--out",
                   path("e.csv")}),
              0);
    EXPECT_EQ(run({"verify", "--source", source_, "--synthetic", path("e.csv"), "--out", path("r.json")}), 2);
    report = json::parse(slurp(path("r.json")));
    EXPECT_FALSE(report["pass"].get<bool>());
    EXPECT_TRUE(out_.str().empty());
}

TEST_F(CliTest, VerifyCarriesJitterFromMetadata) {
    gcm::Dataset d = gcm::load_csv(source_);
    gcm::Matrix v(d.rows(), 3);
    for (std::size_t r = 0; r < d.rows(); ++r) {
        v(r, 0) = d.values()(r, 0);
        v(r, 1) = d.values()(r, 1);
        v(r, 2) = d.values()(r, 0);
    }
    gcm::write_csv(gcm::Dataset({"a", "b", "a_copy"}, v), path("dup.csv"));
    ASSERT_EQ(run({"generate", "--input", path("dup.csv"), "--rows", "100", "--out", path("s.csv")}), 0);
    const double jitter = json::parse(slurp(path("s.csv.meta.json")))["applied_jitter"].get<double>();
    EXPECT_GT(jitter, 0.0);
    run({"verify", "--source", path("dup.csv"), "--synthetic", path("s.csv"), "--metadata", path("s.csv.meta.json"),
         "--tolerance", "1e-5"});
    const json report = json::parse(out_.str());
    EXPECT_EQ(report["applied_jitter"].get<double>(), jitter);
}

TEST_F(CliTest, ErrorsAreOneLineOnStderr) {
    EXPECT_EQ(run({"stats", "--input", path("missing.csv")}), 1);
    EXPECT_NE(err_.str().find("MissingFile"), std::string::npos);
    EXPECT_EQ(lines(err_.str()), 1);
    EXPECT_TRUE(out_.str().empty());

    EXPECT_EQ(run({"bogus"}), 1);
    EXPECT_EQ(run({}), 1);
    EXPECT_EQ(run({"stats", "--input", source_, "--delimiter", "ab"}), 1);
    EXPECT_EQ(lines(err_.str()), 1);
}

TEST_F(CliTest, HelpExitsZero) {
    EXPECT_EQ(run({"--help"}), 0);
    EXPECT_NE(out_.str().find("generate"), std::string::npos);
}

TEST_F(CliTest, TabDelimiter) {
    gcm::write_csv(gcm::oracle::mixed_dataset(20, 2, 1), path("t.tsv"), '\t');
    EXPECT_EQ(run({"stats", "--input", path("t.tsv"), "--delimiter", "\\t"}), 0) << err_.str();
}

}  // namespace
