#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "causticlab/cli/commands.hpp"
#include "causticlab/cli/json_io.hpp"
#include "causticlab/cli/spec_file.hpp"
#include "causticlab/monodromy.hpp"
#include "fixtures.hpp"

using namespace causticlab;
using causticlab::testing::fixture;
using causticlab::testing::fixture_path;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
  json parsed() const { return json::parse(out); }
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "causticlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string& name) { return fixture_path(name).string(); }

// Runs the installed binary through the shell and returns its exit status.
int run_binary(const std::string& args, std::string* output = nullptr) {
  const std::string cmd = std::string(CAUSTICLAB_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return -1;
  std::array<char, 4096> buffer{};
  std::string text;
  while (const std::size_t n = fread(buffer.data(), 1, buffer.size(), pipe)) text.append(buffer.data(), n);
  const int status = pclose(pipe);
  if (output) *output = text;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

template <typename T>
void expect_round_trip(const T& value) {
  const json first = value;
  const T back = json::parse(first.dump()).get<T>();
  const json second = back;
  EXPECT_EQ(first, second);
}

}  // namespace

TEST(CliVerify, ValidPotentialPasses) {
  const Invocation r = invoke({"verify", fx("h3.json")});
  EXPECT_EQ(r.code, kExitOk) << r.out;
  EXPECT_TRUE(r.parsed().at("passed").get<bool>());
}

TEST(CliVerify, CorruptedPotentialFails) {
  const Invocation r = invoke({"verify", fx("h3_corrupted.json")});
  EXPECT_EQ(r.code, kExitCheckFailed) << r.out;
  EXPECT_GT(r.parsed().at("axioms").at("worst").at("associativity").get<double>(), 1e-10);
}

TEST(CliVerify, MissingFileIsAParseError) {
  const Invocation r = invoke({"verify", fx("does_not_exist.json")});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_EQ(r.parsed().at("error"), "ParseError");
}

TEST(CliVerify, UsageErrors) {
  EXPECT_EQ(invoke({"verify", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

TEST(CliFrame, H3HertlingInvariant) {
  const json j = invoke({"frame", fx("h3.json"), "--curve", "y-eq-z3", "--s", "1"}).parsed();
  EXPECT_NEAR(j.at("m").get<double>(), 5.0, 1e-10);
  EXPECT_NEAR(j.at("|V12|").get<double>(), 0.3, 1e-10);
}

TEST(CliFrame, B3AndA3HertlingInvariant) {
  for (const char* s : {"0.8", "1", "1.2"}) {
    const json j = invoke({"frame", fx("b3.json"), "--curve", "2y-3z2", "--s", s}).parsed();
    EXPECT_NEAR(j.at("m").get<double>(), 4.0, 1e-8) << "s=" << s;
  }
  const json j = invoke({"frame", fx("a3.json"), "--curve", "a3-caustic", "--s", "1"}).parsed();
  EXPECT_NEAR(j.at("m").get<double>(), 3.0, 1e-8);
}

TEST(CliFrame, UnknownCurveListsTheAvailableOnes) {
  const Invocation r = invoke({"frame", fx("h3.json"), "--curve", "nope", "--s", "1"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("y-eq-z3"), std::string::npos) << r.err;
}

TEST(CliClassify, SemisimpleAndCausticPoints) {
  EXPECT_EQ(invoke({"classify", fx("h3.json"), "--point", "0,2,1"}).parsed().at("classification").at("kind"),
            "Semisimple");
  EXPECT_EQ(invoke({"classify", fx("h3.json"), "--point", "0,1,1"}).parsed().at("classification").at("kind"),
            "Caustic");
}

TEST(CliMonodromy, VanishingResidueGivesIdentityStokes) {
  const Invocation r = invoke({"monodromy", "--system", fx("synthetic_v0.json")});
  ASSERT_EQ(r.code, kExitOk) << r.out;
  for (const auto& s : r.parsed().at("stokes"))
    EXPECT_LT(max_abs(s.at("S").get<CMatrix>() - CMatrix::Identity(3, 3)), 1e-9);
}

TEST(CliMonodromy, H3ExponentAndJsonFile) {
  const std::string out_file = ::testing::TempDir() + "h3_monodromy.json";
  const Invocation r = invoke({"monodromy", fx("h3.json"), "--curve", "y-eq-z3", "--s", "1", "--json", out_file});
  ASSERT_EQ(r.code, kExitOk) << r.out;
  std::ifstream in(out_file);
  const MonodromyData d = json::parse(in).get<MonodromyData>();
  EXPECT_LT(multiset_distance({d.B_exp(0, 0), d.B_exp(1, 1), d.B_exp(2, 2)}, {0.3, -0.3, 0.0}), 1e-10);
  EXPECT_NE(r.out.find("B_exp"), std::string::npos);
}

TEST(CliIsocheck, H3ComponentsPass) {
  const Invocation a = invoke({"isocheck", fx("h3.json"), "--curve", "y-eq-z3", "--samples", "5"});
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_LT(a.parsed().at("max_deviation").at("stokes").get<double>(), 1e-6);
  const Invocation b = invoke({"isocheck", fx("h3.json"), "--curve", "27y-plus-5z3"});
  EXPECT_EQ(b.code, kExitOk);
  for (const auto& sample : b.parsed().at("samples")) EXPECT_NEAR(sample.at("frame").at("m").get<double>(), 3.0, 1e-8);
}

TEST(CliIsocheck, ConstantGaugeIsACheckFailure) {
  EXPECT_EQ(invoke({"isocheck", fx("h3.json"), "--curve", "y-eq-z3", "--constant-gauge"}).code, kExitCheckFailed);
}

TEST(CliIsocheck, CrossingZeroIsADegeneracy) {
  const Invocation r = invoke({"isocheck", fx("h3.json"), "--curve", "y-eq-z3", "--s-begin", "-1", "--s-end", "1"});
  EXPECT_EQ(r.code, kExitDegenerate);
  EXPECT_NE(r.parsed().at("message").get<std::string>().find("s = 0"), std::string::npos) << r.out;
}

TEST(CliBinary, ExitCodes) {
  EXPECT_EQ(run_binary("verify " + fx("h3.json")), 0);
  EXPECT_EQ(run_binary("verify " + fx("h3_corrupted.json")), 1);
  EXPECT_EQ(run_binary("verify " + fx("missing.json")), 2);
  EXPECT_EQ(run_binary("frame " + fx("h3.json") + " --curve y-eq-z3 --s 0"), 3);
}

TEST(CliBinary, ThreadsFromEnvironment) {
  std::string serial, threaded;
  const std::string args = "monodromy " + fx("h3.json") + " --curve y-eq-z3 --s 1";
  ASSERT_EQ(run_binary(args, &serial), 0);
  const std::string env = "CAUSTICLAB_THREADS=3 ";
  const std::string cmd = env + CAUSTICLAB_CLI_PATH + " " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  std::array<char, 4096> buffer{};
  while (const std::size_t n = fread(buffer.data(), 1, buffer.size(), pipe)) threaded.append(buffer.data(), n);
  EXPECT_EQ(pclose(pipe), 0);
  EXPECT_EQ(serial, threaded);
  EXPECT_EQ(run_binary("monodromy " + fx("h3.json") + " --curve y-eq-z3 --s 1 --threads x"), 2);
}

TEST(JsonRoundTrip, ReportTypes) {
  const SpecFile spec = fixture("h3.json");
  const FrobeniusManifold M(spec.manifold);
  const CausticCurve& curve = spec.curve("y-eq-z3");
  const CausticFrame f = caustic_frame(M, curve.point(1.0), curve.tangents(1.0, 0));
  expect_round_trip(f);
  expect_round_trip(classify_point(M, curve.point(1.0)));
  expect_round_trip(M.verify_axioms(random_points(3, 2, 7), 1e-10));
  const MonodromyData d = compute_monodromy_data(f.U, f.V);
  expect_round_trip(d);
  IsocheckOptions o;
  CausticCurve short_curve = curve;
  short_curve.samples = 3;
  expect_round_trip(isocheck(M, short_curve, o));
  const json j = invoke({"frame", fx("h3.json"), "--curve", "y-eq-z3", "--s", "1"}).parsed();
  const FrameReport fr = j.get<FrameReport>();
  json expected = j;
  expected.erase("command");
  EXPECT_EQ(json(fr), expected);
}

TEST(Fixtures, ByteStable) {
  for (const char* name : {"a3.json", "b3.json", "h3.json", "h3_corrupted.json"}) {
    std::ifstream in(fixture_path(name));
    std::stringstream raw;
    raw << in.rdbuf();
    EXPECT_EQ(spec_to_json(fixture(name)).dump(2) + "\n", raw.str()) << name;
  }
}

TEST(Fixtures, SpecRoundTrip) {
  for (const char* name : {"a3.json", "b3.json", "h3.json"}) {
    const json j = spec_to_json(fixture(name));
    EXPECT_EQ(spec_to_json(parse_spec(j)), j) << name;
  }
}
