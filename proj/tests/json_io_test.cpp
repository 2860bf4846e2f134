#include "gcm/error.hpp"
#include "gcm/json_io.hpp"

#include "support/oracles.hpp"

#include <gtest/gtest.h>

namespace {

using namespace gcm;
using nlohmann::json;

TEST(BlueprintJson, RoundTripIsExact) {
    const Blueprint b = fit(oracle::mixed_dataset(60, 5, 3));
    const Blueprint back = blueprint_from_json(json::parse(to_json(b).dump()));
    EXPECT_EQ(back.names, b.names);
    EXPECT_EQ(back.stats.means, b.stats.means);
    EXPECT_EQ(back.stats.stds, b.stats.stds);
    EXPECT_EQ(back.corr, b.corr);
}

TEST(BlueprintJson, RejectsBadDocuments) {
    const json good = to_json(fit(oracle::mixed_dataset(30, 3, 1)));
    auto expect_format_error = [](json j) {
        try {
            blueprint_from_json(j);
            FAIL() << j.dump();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::FormatError);
        }
    };
    json j = good;
    j["format_version"] = 99;
    expect_format_error(j);
    j = good;
    j.erase("corr");
    expect_format_error(j);
    j = good;
    j["stds"][0] = -1.0;
    expect_format_error(j);
    j = good;
    j["corr"][0][1] = 0.123456;  // breaks symmetry
    expect_format_error(j);
    j = good;
    j["names"].push_back("extra");
    expect_format_error(j);
    expect_format_error(json::array());
}

TEST(CorrJson, NamesAndRowMajorEntries) {
    const CorrMatrix c(Matrix{{1, 0.25}, {0.25, 1}});
    const json j = to_json(c, {"a", "b"});
    EXPECT_EQ(j["format_version"], kFormatVersion);
    EXPECT_EQ(j["names"], json({"a", "b"}));
    EXPECT_EQ(j["entries"], json({{1.0, 0.25}, {0.25, 1.0}}));
}

TEST(CorrCsv, HeaderThenRows) {
    std::ostringstream out;
    write_corr_csv(out, CorrMatrix(Matrix{{1, -0.5}, {-0.5, 1}}), {"a", "b"});
    EXPECT_EQ(out.str(), "a,b\n1,-0.5\n-0.5,1\n");
}

TEST(MultipoleJson, Shape) {
    MultipoleResult r{0.75, 0.75, {0.6, -0.8}, {2, 0}};
    const json j = to_json(r, {"x", "y", "z"});
    EXPECT_EQ(j["subset"], json({"z", "x"}));
    EXPECT_EQ(j["mp"], 0.75);
    EXPECT_EQ(j["minimizer"], json({0.6, -0.8}));
    EXPECT_EQ(j["format_version"], kFormatVersion);
}

}  // namespace
