// pmaps: analyze polynomial maps given in the .pmap text format.
//
//   pmaps analyze fixtures/remark_2d.pmap
//   pmaps line fixtures/quartic.pmap --beta 0,0 --gamma 1,0
//   pmaps identities fixtures/dim5_first.pmap --kind det --smax 2

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "pmaps/report.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw pmaps::PreconditionError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact invertibility certificates for polynomial maps"};
  app.require_subcommand(1, 1);

  std::string input;
  std::string beta;
  std::string gamma;
  std::size_t m = 0;
  std::string kind = "det";
  std::size_t s_max = 3;
  unsigned max_degree = 0;
  std::string json_path;
  int digits = 6;
  bool compact = false;

  const std::map<std::string, std::string> descriptions{
      {"analyze", "Keller condition, sum-of-Jacobians determinant, decomposition, injectivity"},
      {"line", "rectifiability witness or collapse certificate on the line beta + T gamma"},
      {"meanvalue", "mean-value identity along the segment from beta to beta + gamma"},
      {"identities", "propagation of a determinant, minor or trace identity over symbolic blocks"},
      {"inverse", "truncated formal inverse with exact verification"}};
  for (const auto& name : pmaps::command_names()) {
    CLI::App* sub = app.add_subcommand(name, descriptions.at(name));
    sub->add_option("file", input, "map in .pmap format ('-' for stdin)")->required();
    sub->add_option("--json", json_path, "also write the report to this path");
    sub->add_flag("--compact", compact, "single-line JSON");
    if (name == "line" || name == "meanvalue") {
      sub->add_option("--beta", beta, "base point, comma-separated rationals")->required();
      sub->add_option("--gamma", gamma, "direction, comma-separated rationals")->required();
      sub->add_option("--digits", digits, "digits for approximate nodes (0 to omit)");
    }
    if (name == "analyze" || name == "identities") sub->add_option("--m", m, "number of evaluation blocks");
    if (name == "identities") {
      sub->add_option("--kind", kind, "det | minors:k | trace:k");
      sub->add_option("--smax", s_max, "largest weighted block count");
    }
    if (name == "inverse") sub->add_option("--max-degree", max_degree, "truncation degree (default (deg F)^(n-1))");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  pmaps::CommandResult result;
  try {
    pmaps::CommandOptions opt;
    if (!beta.empty()) opt.beta = pmaps::parse_vector(beta);
    if (!gamma.empty()) opt.gamma = pmaps::parse_vector(gamma);
    if (m != 0) opt.m = m;
    opt.kind = kind;
    opt.s_max = s_max;
    if (max_degree != 0) opt.max_degree = max_degree;
    opt.digits = digits;
    result = pmaps::run_command(command, read_input(input), opt);
  } catch (const pmaps::ParseError& e) {
    result = {pmaps::exit_parse, {{"error", {{"kind", "parse"}, {"message", e.what()}}}}};
  } catch (const pmaps::PreconditionError& e) {
    result = {pmaps::exit_precondition, {{"error", {{"kind", "precondition"}, {"message", e.what()}}}}};
  }

  const std::string text = result.report.dump(compact ? -1 : 2) + "\n";
  if (result.exit_code == pmaps::exit_ok) {
    std::cout << text;
  } else {
    std::cerr << text;
  }
  if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write '" << json_path << "'\n";
      return pmaps::exit_precondition;
    }
    out << text;
  }
  return result.exit_code;
}
