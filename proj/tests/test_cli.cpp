#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <set>
#include <string>

#include <json.hpp>

#include "oracles.hpp"

using json = nlohmann::json;

namespace {

struct Run
{
	int code = -1;
	std::string out;
};

Run run(const std::string& args)
{
	std::string cmd = std::string(POLYPERIOD_CLI) + " " + args + " 2>/dev/null";
	Run r;
	FILE* pipe = popen(cmd.c_str(), "r");
	if (!pipe)
		return r;
	std::array<char, 4096> buf;
	std::size_t got;
	while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
		r.out.append(buf.data(), got);
	int status = pclose(pipe);
	r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
	return r;
}

std::string expand(std::string example)
{
	for (std::size_t at; (at = example.find('@')) != std::string::npos;)
		example.replace(at, 1, std::string(POLYPERIOD_SOURCE_DIR) + "/");
	return example;
}

// every library operation, grouped by module
const std::set<std::string> kOperations{
    "polylog_series",      "polylog_continue",     "zeta_ref",
    "build_generators",    "unipotent_exp",        "filtration_matrix",
    "griffiths_check",     "transversality_conditions", "power_identity_check",
    "ad_tower",            "transport",            "regularized_transport",
    "closed_form_period",  "closed_form_period_xi", "monodromy",
    "chart_coordinates",   "boundary_limit",       "chart_membership",
    "asymptotic_gap",      "truncate",             "central_depth",
    "phi",                 "tate_lattice_check",   "bracket",
    "rep_hom",             "coordinates_from_unipotent"};

double re(const json& z)
{
	return z.at(0).get<double>();
}

} // namespace

TEST(Cli, InventoryCoversEveryOperationOnce)
{
	auto r = run("inventory");
	ASSERT_EQ(r.code, 0);
	auto ops = json::parse(r.out).at("operations");
	std::multiset<std::string> seen;
	for (const auto& e : ops)
		seen.insert(e.at("operation").get<std::string>());
	EXPECT_EQ(seen.size(), kOperations.size());
	for (const auto& name : kOperations)
		EXPECT_EQ(seen.count(name), 1u) << name;
}

TEST(Cli, EveryInventoryExampleRuns)
{
	auto ops = json::parse(run("inventory").out).at("operations");
	for (const auto& e : ops)
	{
		std::string example = e.at("example").get<std::string>();
		EXPECT_EQ(example.rfind(e.at("subcommand").get<std::string>(), 0), 0u) << example;
		auto r = run(expand(example));
		EXPECT_EQ(r.code, 0) << example << "\n" << r.out;
		EXPECT_TRUE(json::accept(r.out)) << example;
	}
}

TEST(Cli, Deterministic)
{
	for (const char* args : {"polylog --n 3 --z 0.3+0.4i", "period --n 3 --x 0.3", "boundary --chart p1 --n 3",
	                         "verify --suite griffiths --n 3 --seed 7", "monodromy --n 2 --puncture 1"})
	{
		auto a = run(args), b = run(args);
		EXPECT_EQ(a.code, 0) << args;
		EXPECT_EQ(a.out, b.out) << args;
	}
}

TEST(Cli, PolylogExamples)
{
	auto half = json::parse(run("polylog --n 2 --z 0.5").out);
	EXPECT_NEAR(re(half.at("value")), oracle::li2_half, 1e-14);
	auto zero = json::parse(run("polylog --n 1 --z 0").out);
	EXPECT_EQ(re(zero.at("value")), 0.0);
	auto minus = json::parse(run("polylog --n 3 --z -1").out);
	EXPECT_NEAR(re(minus.at("value")), oracle::li3_minus_one, 1e-13);
	auto path = json::parse(run(expand("polylog --n 2 --path @samples/paths/continuation.json")).out);
	EXPECT_EQ(path.at("branch_offset"), -1);
}

TEST(Cli, VerifyAndDeligneExamples)
{
	auto v = run("verify --suite power-identity --n 8");
	EXPECT_EQ(v.code, 0);
	EXPECT_EQ(json::parse(v.out).at("pass"), true);
	auto d = run("deligne --subop lattice --N 6");
	EXPECT_EQ(d.code, 0);
	EXPECT_EQ(json::parse(d.out).at("pass"), true);
	for (const char* suite : {"generators", "exp", "filtration", "griffiths", "transversality", "ad-tower", "zeta"})
	{
		auto r = run(std::string("verify --suite ") + suite + " --n 4 --seed 3");
		EXPECT_EQ(r.code, 0) << suite << "\n" << r.out;
	}
}

TEST(Cli, BoundaryP1RecoversZeta)
{
	auto r = run("boundary --chart p1 --n 3");
	ASSERT_EQ(r.code, 0);
	auto slots = json::parse(r.out).at("lambda_slots");
	ASSERT_EQ(slots.size(), 2u);
	EXPECT_NEAR(slots[0].at("zeta_recovered").get<double>(), oracle::zeta2, 1e-6 * oracle::zeta2);
	EXPECT_NEAR(slots[1].at("zeta_recovered").get<double>(), oracle::zeta3, 1e-6 * oracle::zeta3);
}

TEST(Cli, PeriodMatchesOracle)
{
	auto r = json::parse(run(expand("period --n 3 --path @samples/paths/from_zero.json")).out);
	EXPECT_LT(r.at("oracle_diff").get<double>(), 1e-9);
	auto m = json::parse(run("monodromy --n 3 --puncture 1").out);
	EXPECT_LT(m.at("max_abs_diff").get<double>(), 1e-8);
}

TEST(Cli, CsvOutput)
{
	auto r = run("polylog --n 2 --z 0.5 --format csv");
	EXPECT_EQ(r.code, 0);
	EXPECT_EQ(r.out.rfind("key,value\n", 0), 0u);
	EXPECT_NE(r.out.find("value[0],0.582240526465012"), std::string::npos) << r.out;
}

TEST(Cli, ExitCodes)
{
	auto domain = run("polylog --n 2 --z 1");
	EXPECT_EQ(domain.code, 2);
	auto rec = json::parse(domain.out);
	EXPECT_EQ(rec.at("error").at("type"), "domain_error");
	EXPECT_EQ(rec.at("exit_code"), 2);

	auto conv = run("boundary --chart p1 --n 3 --tol 1e-14");
	EXPECT_EQ(conv.code, 3) << conv.out;
	EXPECT_EQ(json::parse(conv.out).at("error").at("type"), "convergence_error");

	auto bad = run("deligne --subop truncate --word \"a0 a2\" --N 3");
	EXPECT_EQ(bad.code, 1);
	EXPECT_EQ(json::parse(bad.out).at("error").at("type"), "invalid_argument");

	auto usage = run("polylog --n 0 --z 0.5");
	EXPECT_EQ(usage.code, 1);
	EXPECT_EQ(json::parse(usage.out).at("error").at("type"), "usage_error");
	EXPECT_EQ(run("frobnicate").code, 1);
	EXPECT_EQ(run("polylog --tol 1").code, 1);
	EXPECT_EQ(run("--help").code, 0);
	EXPECT_EQ(run("period --n 2 --path /nonexistent/path.json").code, 1);
}
