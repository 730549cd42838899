#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include <gtest/gtest.h>
#include "json.hpp"

#include "cli.hpp"

namespace fs = std::filesystem;
using ampcoh::cli::run;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    ::unsetenv(ampcoh::cli::kOutputDirEnv);
    args.insert(args.begin(), "ampcoh");
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

struct Csv {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::map<std::string, std::string>> rows;
};

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
}

Csv parse_csv(const std::string& text) {
    Csv csv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            csv.comments.push_back(line);
        } else if (csv.header.empty()) {
            csv.header = split(line);
        } else {
            const auto cells = split(line);
            std::map<std::string, std::string> row;
            for (std::size_t i = 0; i < cells.size() && i < csv.header.size(); ++i) row[csv.header[i]] = cells[i];
            csv.rows.push_back(row);
        }
    }
    return csv;
}

fs::path temp_dir() {
    auto dir = fs::temp_directory_path() / ("ampcoh_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(CliScenario, FigureParametersProduceFullTable) {
    const auto r = invoke({"scenario", "--kind", "inconsistent", "--n", "16", "--m", "2", "--alpha", "0.72",
                           "--t-max", "40"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto csv = parse_csv(r.out);
    EXPECT_EQ(csv.rows.size(), 41u);
    for (const char* col : {"t", "p_suc", "c1", "c1_lower", "c1_upper", "cg", "cg_lower", "cg_upper",
                            "c1_slack_lower", "c1_slack_upper", "cg_slack_lower", "cg_slack_upper"}) {
        EXPECT_NE(std::find(csv.header.begin(), csv.header.end(), col), csv.header.end()) << col;
    }
}

TEST(CliScenario, OriginalSmallCase) {
    const auto r = invoke({"scenario", "--kind", "original", "--n", "4", "--m", "1", "--t-max", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto csv = parse_csv(r.out);
    ASSERT_EQ(csv.rows.size(), 5u);
    EXPECT_EQ(csv.rows[1].at("t"), "1");
    EXPECT_NEAR(std::stod(csv.rows[1].at("p_suc")), 1.0, 1e-12);
}

TEST(CliScenario, InvalidSpecExitsWithTwo) {
    const auto r = invoke({"scenario", "--alpha", "1.5"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("alpha"), std::string::npos) << r.err;
    EXPECT_EQ(invoke({"scenario", "--kind", "bogus"}).code, 2);
    EXPECT_EQ(invoke({"scenario", "--no-such-flag"}).code, 2);
}

TEST(CliSimulate, BothEnginesAgreeOnRandomConfig) {
    const auto r = invoke({"simulate", "--n", "8", "--marked", "1,6", "--beta", "1.3", "--gamma", "2.2",
                           "--random-eta", "--random-initial", "--seed", "17", "--engine", "both",
                           "--t-max", "30"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto csv = parse_csv(r.out);
    ASSERT_EQ(csv.rows.size(), 31u);
    for (const auto& row : csv.rows) EXPECT_LE(std::stod(row.at("max_deviation")), 1e-10);
}

TEST(CliSimulate, ClosedFormBoundaryExitsWithThree) {
    const auto r = invoke({"simulate", "--n", "8", "--beta", "0", "--engine", "closed-form"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("b ~ 0 guard"), std::string::npos) << r.err;

    const auto fallback = invoke({"simulate", "--n", "8", "--beta", "0", "--engine", "both", "--t-max", "2"});
    EXPECT_EQ(fallback.code, 0) << fallback.err;
    EXPECT_NE(fallback.out.find("# warning:"), std::string::npos);
}

TEST(CliSimulate, ZeroStepsGivesInitialObservables) {
    const auto r = invoke({"simulate", "--qubits", "3", "--marked", "0", "--engine", "direct", "--t-max", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto csv = parse_csv(r.out);
    ASSERT_EQ(csv.rows.size(), 1u);
    EXPECT_NEAR(std::stod(csv.rows[0].at("p_suc")), 0.125, 1e-12);
    EXPECT_NEAR(std::stod(csv.rows[0].at("c1")), std::log(8.0), 1e-10);
}

TEST(CliSimulate, ReadsAmplitudeFiles) {
    const auto dir = temp_dir();
    {
        std::ofstream eta(dir / "eta.txt");
        eta << "# uniform over four items\n0.5 0\n0.5 0\n0.5 0\n0.5 0\n";
        std::ofstream bad(dir / "bad.txt");
        bad << "1 0\n1 0\n";
    }
    const auto r = invoke({"simulate", "--n", "4", "--marked", "2", "--eta-file", (dir / "eta.txt").string(),
                           "--initial-file", (dir / "eta.txt").string(), "--t-max", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(std::stod(parse_csv(r.out).rows[1].at("p_suc")), 1.0, 1e-12);

    EXPECT_EQ(invoke({"simulate", "--n", "2", "--eta-file", (dir / "bad.txt").string()}).code, 2);
    EXPECT_EQ(invoke({"simulate", "--n", "4", "--eta-file", (dir / "missing.txt").string()}).code, 2);
    fs::remove_all(dir);
}

TEST(CliSimulate, MixedFixedPointStart) {
    const auto r = invoke({"simulate", "--n", "16", "--marked", "0,1", "--theta", "0.5", "--with-cg",
                           "--t-max", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const auto& row : parse_csv(r.out).rows) {
        EXPECT_NEAR(std::stod(row.at("p_suc")), 0.5, 1e-12);
        EXPECT_NEAR(std::stod(row.at("cg")), 0.714285714286, 1e-5);
    }
}

TEST(CliBoundsSweep, PassesAndRejectsZeroTrials) {
    const auto r = invoke({"bounds-sweep", "--trials", "60", "--dims", "4,8,16", "--seed", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto csv = parse_csv(r.out);
    EXPECT_FALSE(csv.rows.empty());
    for (const auto& row : csv.rows) EXPECT_EQ(row.at("pass"), "true") << row.at("check");
    EXPECT_EQ(invoke({"bounds-sweep", "--trials", "0"}).code, 2);
}

TEST(CliOutput, ManifestHeaderAndJson) {
    const auto csv = invoke({"scenario", "--kind", "original", "--t-max", "2", "--seed", "99"});
    ASSERT_EQ(csv.code, 0);
    const auto parsed = parse_csv(csv.out);
    ASSERT_GE(parsed.comments.size(), 5u);
    EXPECT_EQ(parsed.comments[0], "# command: scenario");
    EXPECT_NE(csv.out.find("# seed: 99"), std::string::npos);

    const auto js = invoke({"scenario", "--kind", "original", "--t-max", "2", "--format", "json"});
    ASSERT_EQ(js.code, 0);
    const auto doc = nlohmann::json::parse(js.out);
    EXPECT_EQ(doc.at("manifest").at("command"), "scenario");
    EXPECT_TRUE(doc.at("manifest").contains("seed"));
    EXPECT_EQ(doc.at("rows").size(), 3u);
}

TEST(CliOutput, EnvironmentDirectoryAndDeterminism) {
    const auto dir = temp_dir();
    ::setenv(ampcoh::cli::kOutputDirEnv, dir.c_str(), 1);
    std::ostringstream out;
    std::ostringstream err;
    const std::vector<std::string> args{"ampcoh", "bounds-sweep", "--trials", "20", "--seed", "5", "--jobs", "2"};
    ASSERT_EQ(run(args, out, err), 0) << err.str();
    const auto first = slurp(dir / "bounds-sweep.csv");
    ASSERT_FALSE(first.empty());
    const std::vector<std::string> single{"ampcoh", "bounds-sweep", "--trials", "20", "--seed", "5", "--jobs", "1"};
    ASSERT_EQ(run(single, out, err), 0) << err.str();
    EXPECT_EQ(slurp(dir / "bounds-sweep.csv"), first);
    ::unsetenv(ampcoh::cli::kOutputDirEnv);
    fs::remove_all(dir);
}
