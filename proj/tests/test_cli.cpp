#include <gtest/gtest.h>

#include <filesystem>

#include "cli_runner.hpp"
#include "weyl/weyl.hpp"

using weyl::test::read_text;
using weyl::test::run_cli;

namespace
{

const std::string kCli = WEYL_CLI_PATH;
const std::string kSamples = SAMPLES_DIR;

std::string sample(const std::string &name) { return "'" + kSamples + "/" + name + "'"; }

std::string scratch(const std::string &name)
{
    const auto dir = std::filesystem::path(::testing::TempDir()) / "weyl_cli_test";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

} // namespace

TEST(Cli, BinaryOperations)
{
    EXPECT_EQ(run_cli(kCli, "star x1^2 p1^2").out, "x1^2*p1^2 + 2*i*h*x1*p1 - (1/2)*h^2\n");
    EXPECT_EQ(run_cli(kCli, "star x1 p1").out, "x1*p1 + (1/2)*i*h\n");
    EXPECT_EQ(run_cli(kCli, "bracket p1 x1").out, "1\n");
    EXPECT_EQ(run_cli(kCli, "bracket x1^3 p1").out, "-3*x1^2\n");
    EXPECT_EQ(run_cli(kCli, "poisson 'x1^2' 'p1^2'").out, "-4*x1*p1\n");
    EXPECT_EQ(run_cli(kCli, "star 'x2' 'p2' --dim 2").out, "x2*p2 + (1/2)*i*h\n");
    EXPECT_EQ(run_cli(kCli, "star x1^3 p1^3 --max-grade 4").out, "0\n");
    EXPECT_EQ(run_cli(kCli, "star x1^3 p1^3", "WEYL_MAX_GRADE=4").out, "0\n");
}

TEST(Cli, Apply)
{
    const auto r = run_cli(kCli, "apply " + sample("inner_x3.json") + " 'x1*p1'");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "x1*p1 - 3*x1^3\n");
}

TEST(Cli, FactorSamples)
{
    const auto ok = run_cli(kCli, "factor " + sample("inner_x3.json"));
    ASSERT_EQ(ok.status, 0);
    const auto [m, s] = weyl::factorization_from_record(weyl::load_json(ok.out));
    EXPECT_TRUE(m.matrix().is_identity());
    EXPECT_EQ(weyl::print(s), "x1^3");

    const auto d2 = run_cli(kCli, "factor " + sample("inner_d2.json"));
    ASSERT_EQ(d2.status, 0);
    EXPECT_EQ(weyl::print(weyl::factorization_from_record(weyl::load_json(d2.out)).second), "x1^3");

    EXPECT_EQ(run_cli(kCli, "factor " + sample("identity.json")).status, 0);
    EXPECT_EQ(run_cli(kCli, "factor " + sample("not_graded.json")).status, 10);
    EXPECT_EQ(run_cli(kCli, "factor " + sample("singular_linear.json")).status, 11);
    EXPECT_EQ(run_cli(kCli, "factor " + sample("non_symplectic.json")).status, 12);
    EXPECT_EQ(run_cli(kCli, "factor " + sample("hbar_scaled.json")).status, 13);
    EXPECT_EQ(run_cli(kCli, "factor " + sample("not_morphism.json")).status, 14);
    EXPECT_EQ(run_cli(kCli, "factor " + sample("not_closed.json")).status, 15);
    EXPECT_EQ(run_cli(kCli, "factor " + sample("bad_schema.json")).status, 4);
}

TEST(Cli, ErrorExitCodes)
{
    EXPECT_EQ(run_cli(kCli, "").status, 1);
    EXPECT_EQ(run_cli(kCli, "star x1").status, 1);
    EXPECT_EQ(run_cli(kCli, "frobnicate").status, 1);
    EXPECT_EQ(run_cli(kCli, "star 'x1 +' p1").status, 2);
    EXPECT_EQ(run_cli(kCli, "star x2 p1").status, 2);
    EXPECT_EQ(run_cli(kCli, "star x1 p1 --dim 0").status, 3);
    EXPECT_EQ(run_cli(kCli, "star x1 p1 --max-grade 1000").status, 3);
    EXPECT_EQ(run_cli(kCli, "star x1 p1", "WEYL_MAX_GRADE=abc").status, 3);
    EXPECT_EQ(run_cli(kCli, "factor /nonexistent/file.json").status, 5);
}

TEST(Cli, RandomInstanceIsDeterministicAndFactors)
{
    const std::string inst = scratch("inst.json");
    const std::string answer = scratch("answer.json");
    const std::string args = "random-instance --dim 2 --seed 17 --steps 5 --s-terms 6 --complex";
    const auto first = run_cli(kCli, args + " --out '" + inst + "' --answer '" + answer + "'");
    ASSERT_EQ(first.status, 0);
    const auto second = run_cli(kCli, args);
    EXPECT_EQ(second.out, read_text(inst));

    const auto f1 = run_cli(kCli, "factor '" + inst + "'");
    const auto f2 = run_cli(kCli, "factor '" + inst + "'");
    ASSERT_EQ(f1.status, 0);
    EXPECT_EQ(f1.out, f2.out);
    const auto got = weyl::factorization_from_record(weyl::load_json(f1.out));
    const auto want = weyl::factorization_from_record(weyl::load_json(read_text(answer)));
    EXPECT_EQ(got.first, want.first);
    EXPECT_EQ(got.second, want.second);
}

TEST(Cli, Selftest)
{
    const auto r = run_cli(kCli, "selftest --dim 2 --cases 10 --seed 3 --max-grade 6");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "10/10 round-trips exact\n");
}
