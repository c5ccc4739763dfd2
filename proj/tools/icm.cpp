#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "icm/error.hpp"
#include "icm/fixtures.hpp"
#include "icm/report.hpp"

namespace {

constexpr int kUsageError = 2;

bool write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return true;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "icm: cannot write '" << path << "'\n";
    return false;
  }
  out << text;
  return true;
}

std::uint64_t parse_field(const std::string& s) {
  if (s == "rationals") return 0;
  try {
    std::size_t used = 0;
    const std::uint64_t p = std::stoull(s, &used);
    if (used == s.size()) return p;
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError("--field", "expected 'rationals' or a prime");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with integrally closed modules over k[x,y] localized at (x,y)"};
  app.require_subcommand(1);
  app.fallthrough();

  icm::ReportOptions opts;
  icm::Config cfg;
  std::string output;
  std::size_t max_depth = cfg.max_depth;
  app.add_flag("--strict", opts.strict, "Count mismatches on uncertified entries");
  app.add_option("--max-depth", max_depth, "Cap on the decomposition depth")->check(CLI::PositiveNumber);
  app.add_option("-o,--output", output, "Write the report here instead of stdout");

  std::string path, dot_path;
  auto* analyze = app.add_subcommand("analyze", "Invariants of each fixture entry");
  analyze->add_option("path", path, "Fixture file")->required();

  auto* hd = app.add_subcommand("hd", "Decomposition trees and their colength totals");
  hd->add_option("path", path, "Fixture file")->required();
  hd->add_option("--dot", dot_path, "Write the trees as DOT");

  auto* br = app.add_subcommand("br", "Multiplicities by both routes and the multiplicity formulas");
  br->add_option("path", path, "Fixture file")->required();
  br->add_option("--seed", opts.seed, "First reduction seed");
  br->add_option("--samples", opts.samples, "Reduction samples")->check(CLI::PositiveNumber);
  br->add_option("--growth", opts.growth, "Also fit the growth polynomial up to this n")->check(CLI::NonNegativeNumber);

  std::uint64_t gen_seed = 1;
  std::size_t count = 3;
  int rank = 2;
  std::string field = "32003", mode = "v";
  auto* fixtures = app.add_subcommand("fixtures", "Generate certified random fixtures");
  fixtures->add_option("--seed", gen_seed, "Generator seed");
  fixtures->add_option("--count", count, "Number of entries");
  fixtures->add_option("--rank", rank, "Rank of each entry")->check(CLI::PositiveNumber);
  fixtures->add_option("--field", field, "rationals or a prime");
  fixtures->add_option("--mode", mode, "v (V-contracted) or monomial")->check(CLI::IsMember({"v", "monomial"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }
  cfg.max_depth = max_depth;

  try {
    if (fixtures->parsed()) {
      const std::uint64_t p = parse_field(field);
      icm::FixtureFile f = icm::generate_fixtures(gen_seed, count, rank, p,
                                                  mode == "v" ? icm::FixtureMode::VContracted : icm::FixtureMode::Monomial, cfg);
      return write_text(output, icm::print_fixtures(f)) ? 0 : kUsageError;
    }
    const icm::FixtureFile file = icm::read_fixture_file(path, cfg);
    icm::Report rep;
    if (analyze->parsed()) rep = icm::analyze_report(file, opts, cfg);
    if (hd->parsed()) rep = icm::hd_report(file, opts, cfg);
    if (br->parsed()) rep = icm::br_report(file, opts, cfg);
    if (!write_text(output, rep.text)) return kUsageError;
    if (!dot_path.empty() && !write_text(dot_path, rep.dot)) return kUsageError;
    return rep.exit_code;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "icm: " << e.what() << "\n";
    return kUsageError;
  } catch (const icm::Error& e) {
    std::cerr << "icm: " << e.what() << "\n";
    return e.code() == icm::ErrorCode::ParseError || e.code() == icm::ErrorCode::InvalidArgument ? kUsageError : 1;
  }
}
