#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <gifnet/commands.hpp>

namespace fs = std::filesystem;

namespace {

// GIFNET_TEST_DATA is set by CMake to tests/data
const std::string data = GIFNET_TEST_DATA;

class Cli: public ::testing::Test {
protected:
    fs::path dir;

    void SetUp() override {
        dir = fs::temp_directory_path() / ("gifnet_cli_" + std::string(
            ::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    int run(std::vector<std::string> args) {
        args.insert(args.begin(), "gifnet");
        std::vector<const char*> argv;
        for (auto& a: args) argv.push_back(a.c_str());
        err.str("");
        return gifnet::cli::run(int(argv.size()), argv.data(), err);
    }

    std::string out(const std::string& name) const { return (dir/name).string(); }

    static std::string slurp(const fs::path& p) {
        std::ifstream is(p, std::ios::binary);
        std::ostringstream ss;
        ss << is.rdbuf();
        return ss.str();
    }

    std::ostringstream err;
};

}

using namespace gifnet::cli;

TEST_F(Cli, SimulateNeedsSeed) {
    EXPECT_EQ(run({"simulate", "--config", data + "/pair.json", "--out", out("s")}), usage_error);
    EXPECT_NE(err.str().find("--seed"), std::string::npos);
    EXPECT_FALSE(fs::exists(out("s")));
}

TEST_F(Cli, BadInputsAreUsageErrors) {
    std::ofstream(dir/"broken.json") << "{\"n_neurons\": 1, \"capacitance\": [-1]}";
    EXPECT_EQ(run({"bounds", "--config", out("broken.json"), "--out", out("b")}), usage_error);
    EXPECT_EQ(run({"bounds", "--config", out("missing.json"), "--out", out("b")}), usage_error);
    EXPECT_EQ(run({"simulate", "--config", data + "/pair.json", "--out", out("s"), "--seed", "1", "--trials", "0"}),
              usage_error);
    EXPECT_EQ(run({"frobnicate"}), usage_error);
    EXPECT_EQ(run({}), usage_error);
    // nothing half-written is left behind
    for (auto& e: fs::directory_iterator(dir)) EXPECT_EQ(e.path().filename(), "broken.json");
}

TEST_F(Cli, HelpIsNotAnError) {
    EXPECT_EQ(run({"--help"}), ok);
}

TEST_F(Cli, SimulateIsReproducible) {
    std::vector<std::string> common = {"--config", data + "/pair.json", "--seed", "11", "--steps", "40", "--trials", "2"};
    auto with = [&](const std::string& o) {
        auto a = common;
        a.insert(a.begin(), "simulate");
        a.push_back("--out");
        a.push_back(out(o));
        return a;
    };
    ASSERT_EQ(run(with("a")), ok);
    ASSERT_EQ(run(with("b")), ok);
    for (auto name: {"raster_0000.txt", "raster_0001.txt", "summary.csv"}) {
        EXPECT_EQ(slurp(dir/"a"/name), slurp(dir/"b"/name)) << name;
    }
    // refuses to overwrite
    EXPECT_EQ(run(with("a")), usage_error);
}

TEST_F(Cli, BinWidthOneIsIdentity) {
    ASSERT_EQ(run({"simulate", "--config", data + "/autapse.json", "--out", out("s"), "--seed", "3", "--steps", "30"}), ok);
    ASSERT_EQ(run({"bin", "--input", out("s/raster_0000.txt"), "--width", "1", "--out", out("b")}), ok);
    EXPECT_EQ(slurp(dir/"s/raster_0000.txt"), slurp(dir/"b/binned.txt"));
    EXPECT_EQ(run({"bin", "--input", out("s/raster_0000.txt"), "--width", "0", "--out", out("z")}), usage_error);
}

TEST_F(Cli, BoundsWritesCertificate) {
    ASSERT_EQ(run({"bounds", "--config", data + "/isolated.json", "--out", out("b")}), ok);
    auto cert = slurp(dir/"b/certificate.csv");
    EXPECT_EQ(cert.rfind("quantity,value\n", 0), 0u);
    EXPECT_NE(cert.find("log_m_p_lower,"), std::string::npos);
    EXPECT_TRUE(fs::exists(dir/"b/bounds.csv"));
}

TEST_F(Cli, ApproxAndStats) {
    ASSERT_EQ(run({"approx", "--config", data + "/autapse.json", "--out", out("a"), "--depth", "3", "--probes", "8"}),
              usage_error);
    ASSERT_EQ(run({"approx", "--config", data + "/autapse.json", "--out", out("a"), "--seed", "2", "--depth", "3",
                   "--probes", "8"}), ok);
    EXPECT_EQ(slurp(dir/"a/markov.csv").rfind("D,max_tv,mean_kl\n", 0), 0u);

    ASSERT_EQ(run({"simulate", "--config", data + "/pair.json", "--out", out("s"), "--seed", "5", "--steps", "64",
                   "--trials", "2"}), ok);
    ASSERT_EQ(run({"stats", "--input", out("s/raster_0000.txt"), out("s/raster_0001.txt"), "--max-lag", "1",
                   "--width", "2", "--out", out("st")}), ok);
    EXPECT_EQ(slurp(dir/"st/stats.csv").rfind("estimator,indices,value,stderr\n", 0), 0u);
}

TEST_F(Cli, VariationOnAutapse) {
    ASSERT_EQ(run({"variation", "--config", data + "/autapse.json", "--out", out("v"), "--m-max", "2",
                   "--quantity", "kernel"}), ok);
    EXPECT_EQ(run({"variation", "--config", data + "/autapse.json", "--out", out("w"), "--quantity", "nope"}),
              usage_error);
}
