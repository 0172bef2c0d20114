// Runs the built qcost binary and checks exit codes and key output.

#include "qcost/report.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args)
{
    std::string cmd = std::string(QCOST_CLI) + " " + args + " 2>&1";
    Run r;
    FILE* p = ::popen(cmd.c_str(), "r");
    if (!p)
        return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0)
        r.out.append(buf.data(), n);
    int st = ::pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

fs::path scratch(const char* name)
{
    auto p = fs::temp_directory_path() / ("qcost_cli_" + std::to_string(::getpid()) + "_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

} // namespace

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run("").status, 2);
    EXPECT_EQ(run("frobnicate").status, 2);
    EXPECT_EQ(run("shor").status, 2);
    EXPECT_EQ(run("shor RSA-2048 --variant teleport").status, 2);
}

TEST(Cli, UnknownScheme)
{
    auto r = run("shor RSA-999");
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.out.find("unknown scheme"), std::string::npos);
}

TEST(Cli, MalformedConfig)
{
    auto dir = scratch("cfg");
    qcost::write_text_file(dir / "bad.json", R"({"p_gate": 1e-3})");
    auto r = run("shor RSA-2048 --config " + (dir / "bad.json").string());
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.out.find("malformed document"), std::string::npos);
    fs::remove_all(dir);
}

TEST(Cli, InfeasibleBudget)
{
    auto dir = scratch("infeasible");
    qcost::write_text_file(dir / "cfg.json", R"({"p_g": 9.9e-3, "injection_error_factor": 1e-6})");
    auto r = run("grover AES-256 --config " + (dir / "cfg.json").string());
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.out.find("budget infeasible"), std::string::npos);
    fs::remove_all(dir);
}

TEST(Cli, ShorEmitsCurveAndFit)
{
    auto dir = scratch("shor");
    auto r = run("shor RSA-2048 --pg 1e-3 --out " + dir.string());
    ASSERT_EQ(r.status, 0) << r.out;
    EXPECT_NE(r.out.find("one-day physical qubits"), std::string::npos);
    EXPECT_TRUE(fs::exists(dir / "report.json"));
    auto curve = dir / "RSA-2048_pg1e-03_surgery_physical_qubits.csv";
    ASSERT_TRUE(fs::exists(curve));
    auto f = run("fit " + curve.string());
    EXPECT_EQ(f.status, 0) << f.out;
    EXPECT_NE(f.out.find("R^2"), std::string::npos);
    fs::remove_all(dir);
}

TEST(Cli, FitNeedsFourPoints)
{
    auto dir = scratch("fit3");
    qcost::write_text_file(dir / "three.csv",
                           "knob_log2,x_log2_seconds,y_value,series_label\n0,20,27,s\n1,19,27.5,s\n2,18,28,s\n");
    auto r = run("fit " + (dir / "three.csv").string());
    EXPECT_EQ(r.status, 2);
    EXPECT_NE(r.out.find("insufficient points"), std::string::npos);
    fs::remove_all(dir);
}

TEST(Cli, GroverWritesSixCurveFiles)
{
    auto dir = scratch("grover");
    auto r = run("grover AES-128 --pg 1e-5 --kappa-max 8 --out " + dir.string());
    ASSERT_EQ(r.status, 0) << r.out;
    std::size_t csv = 0;
    for (const auto& e : fs::directory_iterator(dir))
        csv += e.path().extension() == ".csv";
    EXPECT_EQ(csv, 6u);
    fs::remove_all(dir);
}

TEST(Cli, TablesDefault)
{
    auto r = run("tables");
    ASSERT_EQ(r.status, 0) << r.out;
    EXPECT_NE(r.out.find("AES-128"), std::string::npos);
    EXPECT_NE(r.out.find("P-521"), std::string::npos);
}
