#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "cylindex/cli.hpp"

int main(int argc, char** argv) {
  using namespace cylindex;
  CLI::App app{"Boundary index pair of semi-periodic elliptic operators on the cylinder"};
  app.require_subcommand(1);

  RunConfig config;
  std::string format = "text";
  std::string side = "plus";
  std::vector<int> radii;
  std::optional<int> grid;
  std::optional<double> tol;

  const std::map<std::string, std::pair<Command, std::string>> commands{
      {"check", {Command::Check, "ellipticity and Fredholm criterion"}},
      {"index", {Command::Index, "topological index pair (winding / odd Chern integral)"}},
      {"oracle", {Command::Oracle, "analytic index pair by finite sections"}},
      {"verify", {Command::Verify, "run both routes and compare"}},
      {"calibrate", {Command::Calibrate, "Toeplitz and SU(2) calibrations and frozen conventions"}},
      {"svplot", {Command::Svplot, "singular value sweep of one boundary operator as CSV"}},
      {"fedosov", {Command::Fedosov, "odd Chern integral of a raw symbol grid"}},
      {"quantize", {Command::Quantize, "oracle index of a quantized raw symbol grid"}},
  };
  for (const auto& [name, entry] : commands) {
    CLI::App* sub = app.add_subcommand(name, entry.second);
    if (entry.first != Command::Calibrate) sub->add_option("--input,-i", config.input, "input JSON file")->required();
    sub->add_option("--out,-o", config.out, "output file (default: stdout)");
    sub->add_option("--format,-f", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--grid", grid, "grid points per periodic variable");
    sub->add_option("--radii", radii, "truncation radii, increasing")->delimiter(',');
    sub->add_option("--tol", tol, "kernel tolerance relative to the largest singular value");
    sub->add_flag("--allow-large", config.allow_large, "lift the oracle dimension cap");
    if (entry.first == Command::Verify) sub->add_flag("--runtimes", config.runtimes, "append runtimes to the report");
    if (entry.first == Command::Svplot)
      sub->add_option("--side", side, "minus or plus")->check(CLI::IsMember({"minus", "plus"}));
    sub->callback([&config, cmd = entry.first] { config.command = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  config.format = format == "json" ? OutputFormat::Json : OutputFormat::Text;
  config.side = side == "minus" ? Side::Minus : Side::Plus;
  config.radii = radii;
  config.grid = grid;
  config.tol = tol;
  return run(config, std::cout, std::cerr);
}
