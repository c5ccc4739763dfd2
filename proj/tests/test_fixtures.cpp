#include "doctest.h"

#include <string>

#include "icm/error.hpp"
#include "icm/fixtures.hpp"
#include "icm/multiplicity.hpp"
#include "icm/valuation.hpp"
#include "oracle.hpp"

using namespace icm;

namespace {

const char* kSample = R"(# two entries
field prime 32003
vars x y

module mm
cert v-contracted
rank 2
column x, 0
column 0, y   # trailing comment
column y, 0
column 0, x
end

ideal I
cert uncertified
gens x^2, x*y, y^3
end
)";

int error_line(const std::string& text) {
  try {
    parse_fixtures(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    std::string m = e.what();
    const auto at = m.find("line ");
    REQUIRE(at != std::string::npos);
    return std::stoi(m.substr(at + 5));
  }
  return 0;
}

}  // namespace

TEST_CASE("fixture parsing") {
  FixtureFile f = parse_fixtures(kSample);
  REQUIRE(f.entries.size() == 2);
  CHECK(f.entries[0].name == "mm");
  CHECK(f.entries[0].cert == Certification::VContracted);
  CHECK(f.entries[0].module.rank() == 2);
  CHECK(colength(f.entries[0].module) == 2);
  CHECK(f.entries[1].module.rank() == 1);
  CHECK(f.entries[1].module.column_count() == 3);
  CHECK(colength(f.entries[1].module) == 4);
}

TEST_CASE("fixture round trip") {
  FixtureFile f = parse_fixtures(kSample);
  std::string once = print_fixtures(f);
  FixtureFile g = parse_fixtures(once);
  CHECK(print_fixtures(g) == once);
  REQUIRE(g.entries.size() == f.entries.size());
  for (std::size_t i = 0; i < f.entries.size(); ++i) CHECK(modules_equal(f.entries[i].module, g.entries[i].module));

  FixtureFile q = parse_fixtures("field rationals\nextension a t^2+1\nideal J\ngens x^2+a*y^2, x*y^2, y^3\nend\n");
  CHECK(q.ring.field->degree() == 2);
  std::string qs = print_fixtures(q);
  CHECK(qs.find("extension a t^2+1") != std::string::npos);
  CHECK(print_fixtures(parse_fixtures(qs)) == qs);
}

TEST_CASE("fixture parse errors carry positions") {
  CHECK(error_line("field prime 32003\nmodule a\nrank 2\ncolumn x\nend\n") == 4);
  CHECK(error_line("ideal a\ngens x^2, y^^2\nend\n") == 2);
  CHECK(error_line("ideal a\ngens x, y\n") == 1);
  CHECK(error_line("bogus\n") == 1);
  CHECK(error_line("field rationals\nextension a t^2-1\n") == 2);
  CHECK(error_line("ideal a\ngens x, y\nend\nideal a\ngens x\nend\n") == 4);
  FixtureFile bad = parse_fixtures("module a\nrank 1\ncolumn 0\nend\nideal b\ngens x\nend\n");
  REQUIRE(bad.entries.size() == 2);
  CHECK(!bad.entries[0].error.empty());
  CHECK(bad.entries[1].error.empty());
  CHECK(print_fixtures(parse_fixtures(print_fixtures(bad))) == print_fixtures(bad));
  try {
    parse_fixtures("ideal a\ngens x, y^^2\nend\n");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 2, column 11:") != std::string::npos);
  }
}

TEST_CASE("generated fixtures are certified and reproducible") {
  FixtureFile a = generate_fixtures(7, 4, 2, 32003, FixtureMode::VContracted);
  FixtureFile b = generate_fixtures(7, 4, 2, 32003, FixtureMode::VContracted);
  CHECK(print_fixtures(a) == print_fixtures(b));
  for (const auto& e : a.entries) {
    CHECK(e.module.rank() == 2);
    CHECK(e.module.column_count() <= 7);
    CHECK(e.module.max_degree() <= 4);
    CHECK(is_contracted_from_V(e.module));
    std::vector<Column> cols = e.module.columns();
    CHECK(colength(e.module) == oracle::colength(cols, 2, 32003));
  }
  FixtureFile m = generate_fixtures(3, 6, 1, 32003, FixtureMode::Monomial);
  for (const auto& e : m.entries) {
    CHECK(e.cert == Certification::MonomialComplete);
    CHECK(modules_equal(monomial_ideal_closure(e.module), e.module));
  }
  CHECK_THROWS_AS(generate_fixtures(1, 1, 2, 32003, FixtureMode::Monomial), Error);
  CHECK(print_fixtures(parse_fixtures(print_fixtures(a))) == print_fixtures(a));
}
