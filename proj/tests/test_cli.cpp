#include <sys/wait.h>

#include <array>
#include <cstdio>

#include <gtest/gtest.h>

#include "lenslab/lenslab.hpp"
#include "support/fixtures.hpp"

using namespace lenslab;

namespace {

struct Process {
  int exit_code;
  std::string out;
};

// Runs the built binary; stderr is discarded.
Process run(const std::string& args) {
  std::string cmd = std::string(LENSLAB_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string example_arg() { return "-w '" + fixtures::example_path() + "'"; }

}  // namespace

TEST(Cli, ProxyPullbackMatchesGoldenFile) {
  Process r = run(example_arg() + " construct proxy-pullback COSPAN_EX4");
  ASSERT_EQ(r.exit_code, 0);
  std::string golden =
      fixtures::read_file(std::string(LENSLAB_GOLDEN_DIR) + "/proxy_pullback_COSPAN_EX4.lenslab");
  EXPECT_EQ(r.out, golden);
  Workspace out = parse(r.out);
  Workspace ws = fixtures::example();
  EXPECT_EQ(out.get<LensSquare>("proxy-pullback(COSPAN_EX4).square"), ws.get<LensSquare>("SQ_EX4"));
  EXPECT_EQ(*out.get<CatPtr>("proxy-pullback(COSPAN_EX4)"), *ws.get<CatPtr>("D"));
  // Apex and legs print exactly as the hand-written D, Ḡ and F̄.
  const std::string apex = "proxy-pullback(COSPAN_EX4)";
  EXPECT_EQ(print(to_json(*out.get<CatPtr>(apex))), print(to_json(*ws.get<CatPtr>("D"))));
  EXPECT_EQ(print(to_json(out.get<Lens>(apex + ".left"), "D", "A")),
            print(to_json(ws.get<Lens>("Ḡ"), "D", "A")));
  EXPECT_EQ(print(to_json(out.get<Lens>(apex + ".right"), "D", "B")),
            print(to_json(ws.get<Lens>("F̄"), "D", "B")));
}

TEST(Cli, CheckExitCodes) {
  EXPECT_EQ(run(example_arg() + " check sync-minimal SPAN_EX4").exit_code, 1);
  EXPECT_EQ(run(example_arg() + " check independent SPAN_EX4").exit_code, 0);
  EXPECT_EQ(run(example_arg() + " check compatible SQ_EX4").exit_code, 0);
  EXPECT_EQ(run(example_arg() + " check lens F").exit_code, 0);
  EXPECT_EQ(run(example_arg() + " check sopf F").exit_code, 1);
  EXPECT_EQ(run(example_arg() + " validate D").exit_code, 0);
}

TEST(Cli, ErrorsExitTwo) {
  EXPECT_EQ(run(example_arg() + " check lens NOPE").exit_code, 2);
  EXPECT_EQ(run(example_arg() + " check flavour F").exit_code, 2);
  EXPECT_EQ(run(example_arg() + " frobnicate").exit_code, 2);
  EXPECT_EQ(run("-w /nonexistent/file.lenslab validate X").exit_code, 2);
  EXPECT_EQ(run("").exit_code, 2);
  EXPECT_EQ(run("gen category").exit_code, 2);
  EXPECT_EQ(run("gen category --seed x").exit_code, 2);
  EXPECT_EQ(run(example_arg() + " check lens SPAN_EX4").exit_code, 2);
}

TEST(Cli, ComparisonLensPreconditionExitsTwo) {
  Workspace ws = fixtures::example();
  Outcome core = execute(ws, {"construct", "sync-core", "SPAN_EX4"});
  ASSERT_EQ(core.exit_code, 0);
  Workspace both = *core.document;
  include_binding(both, ws, "SQ_EX4");
  Outcome out = execute(both, {"construct", "comparison-lens", "sync-core(SPAN_EX4).span", "SQ_EX4"});
  EXPECT_EQ(out.exit_code, 2);
  EXPECT_EQ(out.record["failed_preconditions"], Json::array({"sync-minimal"}));
}

TEST(Cli, VerifyUniversalProperty) {
  Workspace ws = fixtures::example();
  Outcome core = execute(ws, {"construct", "sync-core", "SQ_EX4"});
  ASSERT_EQ(core.exit_code, 0);
  Workspace doc = *core.document;
  include_binding(doc, ws, "SQ_EX4");
  Outcome v = execute(doc, {"verify", "universal-property", "SQ_EX4", "sync-core(SQ_EX4).span", "SPAN_EX4"});
  EXPECT_EQ(v.exit_code, 1);
  EXPECT_EQ(v.record["candidates"][0]["verdict"], "none");
  EXPECT_EQ(v.record["candidates"][1]["verdict"], "unique");
  Outcome ok = execute(ws, {"verify", "universal-property", "SQ_EX4", "SPAN_EX4"});
  EXPECT_EQ(ok.exit_code, 0);
}

TEST(Cli, JsonRecordCarriesWitnesses) {
  Process r = run("--json " + example_arg() + " check sync-minimal SPAN_EX4");
  EXPECT_EQ(r.exit_code, 1);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["command"], "check sync-minimal SPAN_EX4");
  EXPECT_EQ(j["exit"], 1);
  EXPECT_EQ(j["violations"][0]["law"], "non-lift-composite");
  EXPECT_EQ(j["violations"][0]["witnesses"], Json::array({"⟨a',b'⟩"}));
}

TEST(Cli, ConstructOutputsReload) {
  Workspace ws = fixtures::example();
  for (std::vector<std::string> cmd :
       {std::vector<std::string>{"construct", "cat-pullback", "COSPAN_EX4"},
        {"construct", "cat-pullback", "F", "G"},
        {"construct", "proxy-pullback", "COSPAN_EX4"},
        {"construct", "sync-core", "SPAN_EX4"},
        {"construct", "free-product", "A", "B"}}) {
    Outcome out = execute(ws, cmd);
    ASSERT_EQ(out.exit_code, 0) << out.text;
    Workspace back = parse(out.text);
    EXPECT_EQ(back, *out.document);
    EXPECT_EQ(print(back), out.text);
  }
  Outcome fp = execute(ws, {"construct", "free-product", "A", "B"});
  EXPECT_TRUE(fp.document->contains("A□B.P1"));
  EXPECT_TRUE(fp.document->contains("A□B.span"));
}

TEST(Cli, GeneratedDocumentsAreDeterministicAndLoadable) {
  for (const char* what : {"category", "lens", "cospan"}) {
    Process a = run(std::string("gen ") + what + " --seed 12 --max-objects 3 --max-extra-morphisms 4");
    Process b = run(std::string("gen ") + what + " --seed 12 --max-objects 3 --max-extra-morphisms 4");
    ASSERT_EQ(a.exit_code, 0) << what;
    EXPECT_EQ(a.out, b.out);
    Workspace ws = parse(a.out);
    EXPECT_EQ(ws.meta["seed"], 12);
    EXPECT_EQ(ws.meta["generator"], Rng::kAlgorithm);
  }
  Process c = run("gen cospan --seed 5 --dopf");
  Workspace ws = parse(c.out);
  EXPECT_TRUE(is_discrete_opfibration_lens(ws.get<LensCospan>("cospan").left));
}

TEST(Cli, GeneratedCospanFeedsConstruct) {
  Process gen = run("gen cospan --seed 3");
  ASSERT_EQ(gen.exit_code, 0);
  Workspace ws = parse(gen.out);
  Outcome pp = execute(ws, {"construct", "proxy-pullback", "cospan"});
  ASSERT_EQ(pp.exit_code, 0);
  Workspace doc = *pp.document;
  EXPECT_EQ(execute(doc, {"check", "independent", "proxy-pullback(cospan).span"}).exit_code, 0);
  EXPECT_EQ(execute(doc, {"check", "compatible", "proxy-pullback(cospan).square"}).exit_code, 0);
}
