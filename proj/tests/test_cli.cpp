#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "pmaps/report.hpp"
#include "support.hpp"

using namespace pmaps;
using namespace testing_support;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path fixture(const std::string& name) { return std::filesystem::path(PMAPS_FIXTURE_DIR) / name; }

ParseError parse_error_of(const std::string& text) {
  try {
    parse_document(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for: " << text;
  return ParseError("none", 0, 0);
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(PMAPS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Parser, RemarkMapLiteral) {
  const PolyMap f = parse_map("vars: X1 X2\nF1 = X2\nF2 = X1 + X2^2");
  EXPECT_EQ(f, fixtures::remark_2d());
}

TEST(Parser, RationalAndImaginaryCoefficients) {
  const PolyMap f = parse_map("vars: X1\nF1 = 1/2*X1 + 3*i");
  const auto ctx = f.context();
  EXPECT_EQ(f[0].coefficient(Monomial::variable(1, 0)), q(1, 2));
  EXPECT_EQ(f[0].constant_term(), Scalar(mpq_class(0), mpq_class(3)));
  EXPECT_EQ(parse_map("vars: X\nF1 = (1 + i)^2")[0].constant_term(), Scalar(mpq_class(0), mpq_class(2)));
}

TEST(Parser, Diagnostics) {
  const ParseError undeclared = parse_error_of("vars: X1 X2\nF1 = X9");
  EXPECT_EQ(undeclared.line(), 2U);
  EXPECT_EQ(undeclared.column(), 6U);
  EXPECT_NE(std::string(undeclared.what()).find("undeclared variable 'X9'"), std::string::npos);

  const ParseError zero_den = parse_error_of("vars: X\nF1 = 1/0*X");
  EXPECT_NE(std::string(zero_den.what()).find("malformed rational"), std::string::npos);
  EXPECT_EQ(zero_den.line(), 2U);

  const ParseError bad_den = parse_error_of("vars: X\nF1 = 1/X");
  EXPECT_NE(std::string(bad_den.what()).find("malformed rational"), std::string::npos);

  const ParseError implicit = parse_error_of("vars: X Y\nF1 = 2X");
  EXPECT_NE(std::string(implicit.what()).find("implicit multiplication"), std::string::npos);
  EXPECT_EQ(implicit.column(), 7U);

  EXPECT_NE(std::string(parse_error_of("vars: X\nF1 = X^-1").what()).find("exponent"), std::string::npos);
  EXPECT_NE(std::string(parse_error_of("vars: X\nF1 = (X + 1").what()).find("expected ')'"), std::string::npos);
  EXPECT_NE(std::string(parse_error_of("F1 = X").what()).find("vars"), std::string::npos);
  EXPECT_NE(std::string(parse_error_of("vars: X\nF2 = X").what()).find("F1..Fm"), std::string::npos);
  EXPECT_NE(std::string(parse_error_of("vars: X X\nF1 = X").what()).find("duplicate"), std::string::npos);
  EXPECT_NE(std::string(parse_error_of("vars: X\nF1 = X / 2").what()).find("division"), std::string::npos);
}

TEST(Parser, CommentsAndMetadata) {
  const MapDocument doc = parse_document("# header\nname: demo\nexpect: keller=true mu=-4\nvars: X1  # trailing\n\nF1 = X1 # c\n");
  EXPECT_EQ(doc.name, "demo");
  EXPECT_EQ(doc.expect.at("mu"), "-4");
  EXPECT_EQ(doc.map[0].to_string(), "X1");
}

TEST(Parser, RoundTripOnCorpusBuildersAndFiles) {
  for (const auto& fx : fixtures::corpus()) {
    const std::string text = render_map(fx.map);
    EXPECT_EQ(parse_map(text), fx.map) << fx.name;
    EXPECT_EQ(render_map(parse_map(text)), text);
    const MapDocument doc = parse_document(read_file(fixture(fx.name + ".pmap")));
    EXPECT_EQ(doc.map, fx.map) << fx.name;
    EXPECT_EQ(doc.name, fx.name);
    EXPECT_EQ(parse_document(render_document(doc)).map, doc.map);
  }
}

TEST(Parser, RoundTripOnRandomMaps) {
  Rng rng(91);
  for (int t = 0; t < 100; ++t) {
    const auto n = static_cast<std::size_t>(rng.integer(1, 4));
    const auto ctx = numbered_context("X", n);
    std::vector<MultiPoly> comps;
    for (long j = 0; j < rng.integer(1, 3); ++j) comps.push_back(rng.poly(ctx, 4, 6, true));
    const PolyMap f(ctx, std::move(comps));
    EXPECT_EQ(parse_map(render_map(f)), f);
  }
}

TEST(Parser, Vectors) {
  EXPECT_EQ(parse_vector("0, 1/2,-3"), (Vector{Scalar(0), q(1, 2), Scalar(-3)}));
  EXPECT_EQ(parse_vector("i"), (Vector{Scalar::imaginary_unit()}));
  EXPECT_THROW(parse_vector("1,,2"), ParseError);
}

TEST(RunCommand, AnalyzeRemarkMap) {
  const CommandResult r = run_command("analyze", read_file(fixture("remark_2d.pmap")));
  ASSERT_EQ(r.exit_code, exit_ok);
  EXPECT_EQ(r.report["keller"], true);
  EXPECT_EQ(r.report["sum_invertible"]["m"], 2);
  EXPECT_EQ(r.report["sum_invertible"]["mu"], "-4");
  EXPECT_EQ(r.report["classification"], "dth3-positive");
  ASSERT_TRUE(r.report["decomposition"].is_object());
  EXPECT_EQ(r.report["decomposition"]["H"][0], "X2^2");
}

TEST(RunCommand, LineOnQuartic) {
  CommandOptions opt;
  opt.beta = Vector(2);
  opt.gamma = unit(2, 0);
  const CommandResult r = run_command("line", read_file(fixture("quartic.pmap")), opt);
  ASSERT_EQ(r.exit_code, exit_ok);
  EXPECT_TRUE(r.report["witness"].is_null());
  EXPECT_EQ(r.report["collapse_certificate"]["node_poly"], "T^3 - 3/2*T + 1/4");
  EXPECT_EQ(r.report["collapse_certificate"]["residuals"], Json::array({"0", "0"}));

  opt.gamma = unit(2, 1);
  const CommandResult w = run_command("line", read_file(fixture("quartic.pmap")), opt);
  EXPECT_EQ(w.report["witness"], Json::array({"0", "1"}));
}

TEST(RunCommand, ExitCodes) {
  const CommandResult singular = run_command("inverse", read_file(fixture("square_x1.pmap")));
  EXPECT_EQ(singular.exit_code, exit_precondition);
  EXPECT_EQ(singular.report["error"]["message"], "singular linear part");
  EXPECT_EQ(run_command("analyze", std::string("vars: X\nF1 = Y")).exit_code, exit_parse);
  EXPECT_EQ(run_command("line", read_file(fixture("quartic.pmap"))).exit_code, exit_precondition);
  EXPECT_EQ(run_command("frobnicate", read_file(fixture("quartic.pmap"))).exit_code, exit_precondition);
  EXPECT_EQ(run_command("analyze", std::string("vars: X1 X2 X3 X4 X5 X6 X7\nF1 = X1")).exit_code, exit_ok);
  EXPECT_EQ(run_command("analyze", std::string("vars: A B C D E F G\nF1 = A\nF2 = B\nF3 = C\nF4 = D\nF5 = E\nF6 = F\nF7 = G"))
                .exit_code,
            exit_resource);
}

TEST(RunCommand, OtherCommands) {
  CommandOptions opt;
  opt.beta = Vector(2);
  opt.gamma = Vector{Scalar(1), Scalar(2)};
  const CommandResult mv = run_command("meanvalue", read_file(fixture("quartic.pmap")), opt);
  ASSERT_EQ(mv.exit_code, exit_ok);
  EXPECT_EQ(mv.report["holds"], true);

  CommandOptions id;
  id.s_max = 2;
  const CommandResult ident = run_command("identities", read_file(fixture("remark_2d.pmap")), id);
  ASSERT_EQ(ident.exit_code, exit_ok);
  EXPECT_EQ(ident.report["mu"], "-4");
  EXPECT_EQ(ident.report["conclusion_holds"], true);
  EXPECT_EQ(ident.report["quadratic_identity"]["holds"], true);

  const CommandResult inv = run_command("inverse", read_file(fixture("remark_2d.pmap")));
  ASSERT_EQ(inv.exit_code, exit_ok);
  EXPECT_EQ(inv.report["inverse"], Json::array({"-X1^2 + X2", "X1"}));
}

TEST(RunCommand, ReportsAreDeterministic) {
  CommandOptions opt;
  opt.beta = Vector(2);
  opt.gamma = unit(2, 0);
  for (const std::string cmd : {"analyze", "line", "inverse"}) {
    const std::string text = read_file(fixture("quartic.pmap"));
    EXPECT_EQ(run_command(cmd, text, opt).report.dump(), run_command(cmd, text, opt).report.dump());
  }
}

TEST(Cli, ExitCodesFromTheBinary) {
  EXPECT_EQ(run_cli("analyze " + fixture("remark_2d.pmap").string()), 0);
  EXPECT_EQ(run_cli("inverse " + fixture("square_x1.pmap").string()), 3);
  EXPECT_EQ(run_cli("line " + fixture("quartic.pmap").string() + " --beta 0,0 --gamma 1,0"), 0);
  EXPECT_EQ(run_cli("line " + fixture("quartic.pmap").string() + " --beta 0,0 --gamma 0,0"), 3);
  EXPECT_EQ(run_cli("line " + fixture("quartic.pmap").string() + " --beta 0,0 --gamma 1/0,0"), 2);
  const auto tmp = std::filesystem::temp_directory_path() / "pmaps_cli_test.json";
  EXPECT_EQ(run_cli("inverse " + fixture("remark_2d.pmap").string() + " --json " + tmp.string()), 0);
  EXPECT_EQ(Json::parse(read_file(tmp))["polynomial"], true);
  std::filesystem::remove(tmp);
}
