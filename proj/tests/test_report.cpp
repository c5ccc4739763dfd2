#include "doctest.h"

#include <string>

#include "icm/report.hpp"
#include "oracle.hpp"

using namespace icm;

namespace {

const char* kFile = R"(field prime 32003
vars x y

module mm
cert v-contracted
rank 2
column x, 0
column y, 0
column 0, x
column 0, y
end

ideal I
cert uncertified
gens x^3, x^2*y, x^2+y^2
end

ideal J
cert monomial-complete
gens x^2, x*y, y^3
end

ideal cube
cert monomial-complete
gens x^3, x^2*y, x*y^2, y^3
end

ideal open
cert uncertified
gens x^2, y^2
end

ideal m
cert monomial-complete
gens x, y
end

module m2m
cert v-contracted
rank 2
column x^2, 0
column x*y, 0
column y^2, 0
column 0, x
column 0, y
end
)";

// The block of one entry.
std::string block(const std::string& text, const std::string& name) {
  const auto at = text.find("\nentry " + name + "\n");
  REQUIRE(at != std::string::npos);
  return text.substr(at, text.find("\nend\n", at) - at);
}

bool has(const std::string& s, const std::string& line) { return s.find("\n" + line + "\n") != std::string::npos; }

}  // namespace

TEST_CASE("analyze report") {
  FixtureFile f = parse_fixtures(kFile);
  Report r = analyze_report(f, {});
  CHECK(r.exit_code == 0);
  CHECK(r.text.rfind("icm-report 1\n", 0) == 0);
  std::string mm = block(r.text, "mm");
  CHECK(has(mm, "rank 2"));
  CHECK(has(mm, "nu 4"));
  CHECK(has(mm, "ord 2"));
  CHECK(has(mm, "colength 2"));
  CHECK(has(mm, "contracted true"));
  CHECK(has(mm, "v-contracted true"));
  CHECK(has(mm, "free false"));
  std::string i = block(r.text, "I");
  CHECK(has(i, "ord 2"));
  CHECK(has(i, "colength 5"));
  CHECK(has(i, "contracted true"));
  CHECK(has(i, "v-contracted false"));
  CHECK(analyze_report(f, {}).text == r.text);

  Report empty = analyze_report(empty_fixture_file(32003), {});
  CHECK(empty.exit_code == 0);
  CHECK(empty.text.find("entries 0\n") != std::string::npos);
  CHECK(empty.text.find("\nentry ") == std::string::npos);
}

TEST_CASE("bad entries are isolated") {
  FixtureFile f = parse_fixtures("module z\ncert sum\nrank 1\ncolumn 0\nend\nideal m\ngens x, y\nend\n");
  Report r = analyze_report(f, {});
  CHECK(r.exit_code == 1);
  CHECK(block(r.text, "z").find("error ") != std::string::npos);
  CHECK(has(block(r.text, "m"), "colength 1"));
}

TEST_CASE("hd report") {
  FixtureFile f = parse_fixtures(kFile);
  Report r = hd_report(f, {});
  std::string j = block(r.text, "J");
  CHECK(has(j, "total 4"));
  CHECK(has(j, "direct 4"));
  CHECK(has(j, "depth 2"));
  std::string c = block(r.text, "cube");
  CHECK(has(c, "total 6"));
  CHECK(has(c, "nodes 1"));
  // (x^2, y^2) is not integrally closed: its colength is 4
  std::vector<Column> open_gens{{f.entries[4].module.columns()[0]}, {f.entries[4].module.columns()[1]}};
  CHECK(oracle::colength(open_gens, 1, 32003) == 4);
  std::string o = block(r.text, "open");
  CHECK(has(o, "direct 4"));
  CHECK(has(o, "equal false"));
  CHECK(o.find("verdict mismatch (uncertified, not counted)") != std::string::npos);
  CHECK(r.exit_code == 0);
  ReportOptions strict;
  strict.strict = true;
  CHECK(hd_report(f, strict).exit_code == 1);
  CHECK(r.dot.find("digraph entry_J {") != std::string::npos);
}

TEST_CASE("br report") {
  FixtureFile f = parse_fixtures(kFile);
  ReportOptions o;
  o.growth = 5;
  Report r = br_report(f, o);
  std::string mm = block(r.text, "mm");
  CHECK(mm.find("e-reduction 3 ") != std::string::npos);
  CHECK(mm.find("e-growth 3 ") != std::string::npos);
  CHECK(has(mm, "routes-agree true"));
  CHECK(mm.find("check minors-formula holds lhs 3 rhs 3") != std::string::npos);
  CHECK(mm.find("check reduction-length holds lhs 1 rhs 1") != std::string::npos);
  CHECK(block(r.text, "m").find("e-reduction 1 ") != std::string::npos);
  std::string m2m = block(r.text, "m2m");
  CHECK(m2m.find("e-reduction 7 ") != std::string::npos);
  CHECK(m2m.find("check reduction-length holds lhs 3 rhs 3") != std::string::npos);
  CHECK(r.text.find("seed 1\n") != std::string::npos);
  CHECK(br_report(f, o).text == r.text);
}
