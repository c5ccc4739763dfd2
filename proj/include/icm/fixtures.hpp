#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "icm/module.hpp"

namespace icm {

enum class Certification { VContracted, MonomialComplete, Sum, Uncertified };

std::string certification_name(Certification c);

struct FixtureEntry {
  std::string name;
  Certification cert = Certification::Uncertified;
  int rank = 0;
  std::vector<Column> columns;  // as written
  TFModule module;              // unset when `error` is non-empty
  std::string error;
};

FixtureEntry make_entry(std::string name, Certification cert, TFModule m);

/// Line-based fixture file:
///
///   field prime 32003            (or: field rationals)
///   extension a t^2+1            (optional, repeatable)
///   vars x y
///   module mm
///   cert v-contracted
///   rank 2
///   column x, 0
///   column 0, y
///   end
///   ideal I                      (rank one shorthand)
///   gens x^2, x*y, y^3
///   end
///
/// `#` starts a comment.
struct FixtureFile {
  LocalRing ring;
  std::string field_line;
  std::vector<std::pair<std::string, std::string>> extensions;  // name, polynomial text
  std::vector<FixtureEntry> entries;
};

/// Throws Error(ParseError) with "line L, column C: ..." in the message.
FixtureFile parse_fixtures(const std::string& text, const Config& cfg = default_config());
std::string print_fixtures(const FixtureFile& file);
FixtureFile read_fixture_file(const std::string& path, const Config& cfg = default_config());

/// Empty file over GF(p) (p = 0 means the rationals).
FixtureFile empty_fixture_file(std::uint64_t p);

enum class FixtureMode { VContracted, Monomial };

/// V-contracted closures of random low-degree matrices, or Newton-closed
/// monomial ideals. Every entry is certified by construction.
FixtureFile generate_fixtures(std::uint64_t seed, std::size_t count, int rank, std::uint64_t p, FixtureMode mode,
                              const Config& cfg = default_config());

/// One random V-contracted module: rank r, nu <= max_nu, entries of degree <= max_degree.
TFModule random_v_contracted(const LocalRing& ring, std::uint64_t seed, int rank, int max_nu, int max_degree,
                             const Config& cfg = default_config());
/// One random Newton-closed monomial ideal with pure powers of degree <= max_power.
TFModule random_monomial_complete(const LocalRing& ring, std::uint64_t seed, int max_power);

}  // namespace icm
