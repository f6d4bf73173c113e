#include "cafcheck/cli.hpp"
#include "cafcheck/serialize.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cafcheck;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "cafcheck");
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name)
{
    auto dir = fs::temp_directory_path() / "cafcheck_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& path)
{
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), {}};
}

} // namespace

TEST(Count, Classifications)
{
    auto r = run({"count", "--m", "3", "--p", "2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("classifications: 6"), std::string::npos);
}

TEST(Count, WithProfiles)
{
    auto r = run({"count", "--m", "4", "--p", "3", "--n", "2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("classifications: 36"), std::string::npos);
    EXPECT_NE(r.out.find("profiles: 1296"), std::string::npos);
    auto j = nlohmann::json::parse(run({"count", "--m", "4", "--p", "3", "--n", "2", "--format", "json"}).out);
    EXPECT_EQ(j["classifications"], 36);
    EXPECT_EQ(j["profiles"], 1296);
}

TEST(Count, MoreCategoriesThanObjectsIsUsageError)
{
    auto r = run({"count", "--m", "2", "--p", "3"});
    EXPECT_EQ(r.code, cli::UsageError);
    EXPECT_FALSE(r.err.empty());
}

TEST(Check, DictatorPassesUnanimityAndIndependence)
{
    auto r = run({"check", "--rule", "dictator:0", "--n", "2", "--m", "3", "--p", "2", "--axioms",
                  "unanimity,independence"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    for (const auto& a : j["axioms"])
        EXPECT_EQ(a["status"], "pass") << a.dump();
    EXPECT_TRUE(j["passed"].get<bool>());
}

TEST(Check, Remark3NeedsMoreObjects)
{
    auto r = run({"check", "--rule", "remark3", "--n", "2", "--m", "3", "--p", "2", "--axioms", "expertise"});
    EXPECT_EQ(r.code, cli::UsageError);
    EXPECT_NE(r.err.find("m >= p + 2"), std::string::npos);
}

TEST(Check, Remark1ReportsSemiDecisivePairs)
{
    auto r = run({"check", "--rule", "remark1", "--n", "2", "--m", "3", "--p", "2", "--axioms",
                  "unanimity,semidecisive"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["passed"].get<bool>());
    EXPECT_EQ(j["designated_claims"].size(), 2u);
}

TEST(Check, FailingAxiomStillExitsZero)
{
    auto r = run({"check", "--rule", "dictator:1", "--n", "2", "--m", "3", "--p", "2", "--axioms", "expertise",
                  "--format", "text"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("overall: violated"), std::string::npos);
}

TEST(Check, RequiresExactlyOneSource)
{
    EXPECT_EQ(run({"check", "--n", "2", "--m", "3", "--p", "2", "--axioms", "unanimity"}).code, cli::UsageError);
    EXPECT_EQ(run({"check", "--rule", "remark1", "--n", "2", "--m", "3", "--p", "2"}).code, cli::UsageError);
}

TEST(Search, UnsatisfiableMinimalExpertise)
{
    auto r = run({"search", "--n", "2", "--m", "2", "--p", "2", "--axioms", "minimal-expertise"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["verdict"], "unsatisfiable");
}

TEST(Search, SatisfiableExpertiseCarriesWitness)
{
    auto r = run({"search", "--n", "2", "--m", "3", "--p", "2", "--axioms", "expertise"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["verdict"], "satisfiable");
    EXPECT_EQ(j["witness"]["entries"].size(), 36u);
    EXPECT_EQ(j["witness"]["witness_claims"].size(), 1u);
}

TEST(Search, CapExceeded)
{
    auto r = run({"search", "--n", "2", "--m", "10", "--p", "2", "--axioms", "expertise"});
    EXPECT_EQ(r.code, cli::CapExceeded);
    EXPECT_NE(r.err.find("cap"), std::string::npos);
}

TEST(Search, TimeoutExitCode)
{
    auto r = run({"search", "--n", "2", "--m", "5", "--p", "4", "--axioms", "minimal-expertise,independence",
                  "--timeout", "0.001"});
    EXPECT_EQ(r.code, cli::TimedOut);
}

TEST(Search, OracleMatchesPropagation)
{
    auto a = nlohmann::json::parse(
        run({"search", "--n", "2", "--m", "3", "--p", "2", "--axioms", "unanimity,independence", "--oracle"}).out);
    auto b = nlohmann::json::parse(
        run({"search", "--n", "2", "--m", "3", "--p", "2", "--axioms", "unanimity,independence"}).out);
    EXPECT_EQ(a["engine"], "brute-force");
    EXPECT_EQ(a["verdict"], b["verdict"]);
    EXPECT_EQ(a["model_count"], 2);
}

TEST(Search, PinnedWitnessFlag)
{
    auto r = run({"search", "--n", "2", "--m", "4", "--p", "3", "--axioms", "expertise", "--pin-witness",
                  "expertise=1:3,0:2"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto claims = nlohmann::json::parse(r.out)["witness"]["witness_claims"];
    ASSERT_EQ(claims.size(), 1u);
    EXPECT_EQ(claims[0]["first"]["individual"], 1);
    EXPECT_EQ(claims[0]["first"]["object"], 3);
    EXPECT_EQ(run({"search", "--n", "2", "--m", "4", "--p", "3", "--axioms", "expertise", "--pin-witness",
                   "expertise=1:3,1:2"})
                  .code,
              cli::UsageError);
    EXPECT_EQ(run({"search", "--n", "2", "--m", "4", "--p", "3", "--axioms", "expertise", "--pin-witness",
                   "expertise=banana"})
                  .code,
              cli::UsageError);
}

TEST(Search, OutputIsByteDeterministic)
{
    std::vector<std::string> args{"search", "--n", "2", "--m", "4", "--p", "3", "--axioms", "minimal-expertise"};
    EXPECT_EQ(run(args).out, run(args).out);
    args.push_back("--no-symmetry");
    EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Witness, RoundTripThroughFile)
{
    auto file = scratch("expertise.json");
    auto r = run({"search", "--n", "2", "--m", "4", "--p", "2", "--axioms", "expertise,independence", "--witness-out",
                  file.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    ASSERT_TRUE(fs::exists(file));

    auto loaded = io::parse_witness(slurp(file));
    EXPECT_EQ(loaded.table.size(), 196u);
    EXPECT_TRUE(satisfies(loaded.table, AxiomSet::parse("expertise,independence"), loaded.witnesses));

    auto c = run({"check", "--table", file.string(), "--axioms", "expertise,independence"});
    ASSERT_EQ(c.code, 0) << c.err;
    auto j = nlohmann::json::parse(c.out);
    EXPECT_TRUE(j["passed"].get<bool>());
    EXPECT_EQ(j["designated_claims"].size(), 2u);
}

TEST(Witness, MalformedFileIsRejected)
{
    auto file = scratch("broken.json");
    std::ofstream(file) << R"({"instance":{"n":2,"m":2,"p":2},"entries":[[0,[0,1]]],"witness_claims":[]})";
    EXPECT_EQ(run({"check", "--table", file.string(), "--axioms", "unanimity"}).code, cli::UsageError);
    EXPECT_THROW(io::parse_witness("{not json"), io::FormatError);
    EXPECT_THROW(io::parse_witness(R"({"instance":{"n":2,"m":2,"p":2},"entries":[[0,[0,0]],[1,[0,1]],[2,[0,1]],[3,[0,1]]]})"),
                 io::FormatError);
}

TEST(Replay, TheoremOneText)
{
    auto r = run({"replay", "--proof", "theorem-1", "--n", "2", "--m", "2", "--p", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("t₁ empty"), std::string::npos);
}

TEST(Replay, PropThreeSameCategory)
{
    auto r = run({"replay", "--proof", "prop-3", "--n", "2", "--m", "4", "--p", "3", "--same-category"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(
        run({"replay", "--proof", "prop-3", "--n", "2", "--m", "4", "--p", "3", "--same-category", "--format", "json"})
            .out);
    EXPECT_EQ(j["proof"], "prop-3");
    EXPECT_TRUE(j["binding"]["same_category"].get<bool>());
}

TEST(Replay, PreconditionError)
{
    auto r = run({"replay", "--proof", "prop-4", "--n", "2", "--m", "4", "--p", "2"});
    EXPECT_EQ(r.code, cli::UsageError);
    EXPECT_NE(r.err.find("m = p"), std::string::npos);
    EXPECT_EQ(run({"replay", "--proof", "prop-7", "--n", "2", "--m", "2", "--p", "2"}).code, cli::UsageError);
}

TEST(Table, AllAgreeText)
{
    auto r = run({"table", "--max-m", "4", "--max-p", "3", "--n", "2"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("not machine-checked"), std::string::npos);
    EXPECT_NE(r.out.find("disagree: 0,"), std::string::npos);
}

TEST(Table, CsvHasNineRowsPerInstance)
{
    auto r = run({"table", "--max-m", "4", "--max-p", "3", "--n", "2", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string line;
    int lines = 0;
    while (std::getline(in, line))
        ++lines;
    EXPECT_EQ(lines, 1 + 9 * 5);
}

TEST(Table, CappedCellsAreMarked)
{
    auto r = run({"table", "--max-m", "4", "--max-p", "3", "--n", "2", "--format", "csv", "--cell-budget", "200"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("skipped: cap"), std::string::npos);
}

TEST(Config, FileSuppliesOptions)
{
    auto file = scratch("run.ini");
    std::ofstream(file) << "n = 2\nm = 3\np = 2\naxioms = \"unanimity,minimal-expertise\"\nformat = \"json\"\n";
    auto r = run({"search", "--config", file.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["verdict"], "unsatisfiable");
    EXPECT_EQ(j["instance"]["m"], 3);
}

TEST(Config, EnvironmentBudget)
{
    ::setenv("CAFCHECK_CELL_BUDGET", "10", 1);
    auto capped = run({"search", "--n", "2", "--m", "3", "--p", "2", "--axioms", "expertise"});
    ::unsetenv("CAFCHECK_CELL_BUDGET");
    EXPECT_EQ(capped.code, cli::CapExceeded);
    EXPECT_EQ(run({"search", "--n", "2", "--m", "3", "--p", "2", "--axioms", "expertise"}).code, 0);
}

TEST(Usage, BadInput)
{
    EXPECT_EQ(run({"search", "--bogus"}).code, cli::UsageError);
    EXPECT_EQ(run({"search", "--n", "2", "--m", "3", "--p", "2", "--axioms", "charisma"}).code, cli::UsageError);
    EXPECT_EQ(run({"search", "--n", "2", "--m", "3", "--p", "2", "--axioms", "expertise", "--format", "xml"}).code,
              cli::UsageError);
    EXPECT_EQ(run({}).code, cli::UsageError);
    EXPECT_EQ(run({"--help"}).code, 0);
}
