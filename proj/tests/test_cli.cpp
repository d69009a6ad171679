#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"
#include "voilab/cli.hpp"

using namespace voilab;
using namespace voilab::testing;

namespace {
const std::string instance_json_path = std::string(VOILAB_SOURCE_DIR) + "/data/three_state.json";
}

TEST(CliDemo, TextTable) {
    std::ostringstream out, err;
    EXPECT_EQ(cli::cmd_demo(false, out, err), cli::ok);
    EXPECT_TRUE(err.str().empty()) << err.str();
    const std::string s = out.str();
    for (const char* want : {"3/176", "15/176", "+3/176", "49/64", "+5/64", "-77/32", "3/32", "---"})
        EXPECT_NE(s.find(want), std::string::npos) << want;
}

TEST(CliDemo, Json) {
    std::ostringstream out, err;
    ASSERT_EQ(cli::cmd_demo(true, out, err), cli::ok);
    const auto doc = nlohmann::json::parse(out.str());
    EXPECT_TRUE(doc["matches_reference"].get<bool>());
    ASSERT_EQ(doc["columns"].size(), 3u);
    const auto& b3 = doc["columns"][2];
    EXPECT_TRUE(b3["on_kink"].get<bool>());
    EXPECT_EQ(b3["complement_force"], "---");
    EXPECT_EQ(b3["jensen_gaps"]["complement"], "3/32");
    EXPECT_EQ(b3["jensen_gaps"]["substitute"], "5/2");
    EXPECT_EQ(b3["delta_voi"], "-77/32");
    EXPECT_EQ(doc["columns"][1]["stays_interior"], false);
    EXPECT_EQ(doc["columns"][1]["regime"], "complement");
}

TEST(CliEval, ReportJson) {
    std::ostringstream out;
    ASSERT_EQ(cli::cmd_eval(instance_json_path, "1/4,1/6,7/12", "i", "j", true, out), cli::ok);
    const auto doc = nlohmann::json::parse(out.str());
    EXPECT_EQ(doc["delta_voi"], "5/64");
    EXPECT_EQ(doc["voi_j_after_i"], "9/64");
    EXPECT_EQ(doc["localization"]["regime"], "complement");
    EXPECT_EQ(doc["localization"]["stays_interior"], false);
    ASSERT_EQ(doc["per_outcome"].size(), 2u);
}

TEST(CliEval, KinkWitnessAndCollapse) {
    std::ostringstream out;
    ASSERT_EQ(cli::cmd_eval(instance_json_path, "5/12,5/12,1/6", "i", "j", true, out), cli::ok);
    const auto doc = nlohmann::json::parse(out.str());
    EXPECT_EQ(doc["prior_on_kink"], true);
    EXPECT_EQ(doc["localization"]["regime"], "substitute");
    EXPECT_FALSE(doc["localization"]["theorem3_witness"].is_null());
    EXPECT_EQ(doc["per_outcome"][0]["voi_j"], "0");
    EXPECT_EQ(doc["argmax_actions"], nlohmann::json::array({"a1", "a2"}));
}

TEST(CliEval, SwappedChannelsAgreeWithOracle) {
    std::ostringstream out;
    ASSERT_EQ(cli::cmd_eval(instance_json_path, "1/4,1/6,7/12", "j", "i", true, out), cli::ok);
    const auto doc = nlohmann::json::parse(out.str());
    const auto& inst = reference_instance();
    const Rational want = oracle::delta_voi(inst.problem().rewards(), inst.channel("j").kernel(),
                                            inst.channel("i").kernel(), vec({"1/4", "1/6", "7/12"}));
    EXPECT_EQ(parse_rational(doc["delta_voi"].get<std::string>()), want);
}

TEST(CliEval, VertexBelief) {
    std::ostringstream out;
    ASSERT_EQ(cli::cmd_eval(instance_json_path, "0,0,1", "i", "j", true, out), cli::ok);
    const auto doc = nlohmann::json::parse(out.str());
    EXPECT_EQ(doc["delta_voi"], "0");
    EXPECT_EQ(doc["localization"]["regime"], "neutral");
}

TEST(CliEval, Errors) {
    std::ostringstream out;
    EXPECT_THROW(cli::cmd_eval(instance_json_path, "1/4,1/6,7/12", "nope", "j", false, out), ValidationError);
    EXPECT_THROW(cli::cmd_eval(instance_json_path, "1/2,1/2", "i", "j", false, out), ValidationError);
    EXPECT_THROW(cli::cmd_eval(instance_json_path, "1/2,x,1/2", "i", "j", false, out), ParseError);
    EXPECT_THROW(cli::cmd_eval(instance_json_path + ".missing", "1,0,0", "i", "j", false, out), Error);
}

TEST(CliScan, RayMatchesGolden) {
    cli::ScanOptions opt;
    std::ostringstream out, err;
    ASSERT_EQ(cli::cmd_scan_ray(opt, out, err), cli::ok);
    std::ostringstream direct;
    emit_csv(ray_scan(reference_instance().problem(), reference_instance().channel("i"), reference_instance().channel("j"),
                      belief({"1/4", "1/6", "7/12"}), vec({"1", "0", "-1"}), Q("1/4")),
             direct);
    EXPECT_EQ(out.str(), direct.str());
    EXPECT_NE(err.str().find("7/60"), std::string::npos);
    EXPECT_NE(err.str().find("73/708"), std::string::npos);
}

TEST(CliScan, RayZeroLength) {
    cli::ScanOptions opt;
    opt.t_max = "0";
    std::ostringstream out, err;
    ASSERT_EQ(cli::cmd_scan_ray(opt, out, err), cli::ok);
    const std::string csv = out.str();
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
}

TEST(CliScan, GridRowCount) {
    cli::ScanOptions opt;
    opt.n = 4;
    std::ostringstream out, err;
    ASSERT_EQ(cli::cmd_scan_grid(opt, out, err), cli::ok);
    const std::string s = out.str();
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 16);
    opt.n = 0;
    EXPECT_THROW(cli::cmd_scan_grid(opt, out, err), ValidationError);
}

TEST(CliVerify, DeterministicReport) {
    FuzzConfig cfg;
    cfg.cases = 300;
    std::ostringstream a, b, err;
    ASSERT_EQ(cli::cmd_verify(cfg, true, a, err), cli::ok);
    ASSERT_EQ(cli::cmd_verify(cfg, true, b, err), cli::ok);
    EXPECT_EQ(a.str(), b.str());
    const auto doc = nlohmann::json::parse(a.str());
    EXPECT_EQ(doc["violations"], 0);
    EXPECT_EQ(doc["cases_run"], 300);
    EXPECT_EQ(doc["checks"].size(), fuzz_checks.size());
    cfg.seed = 43;
    std::ostringstream c;
    cli::cmd_verify(cfg, true, c, err);
    EXPECT_NE(a.str(), c.str());
}
