#include "icm/fixtures.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "icm/multiplicity.hpp"
#include "icm/unipoly.hpp"
#include "icm/valuation.hpp"

namespace icm {

namespace {

[[noreturn]] void fail(int line, int column, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

struct Cursor {
  std::string text;
  int line;
};

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

// Splits at top-level commas; returns (piece, column offset) pairs.
std::vector<std::pair<std::string, int>> split_commas(const std::string& s, int offset) {
  std::vector<std::pair<std::string, int>> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || (s[i] == ',' && depth == 0)) {
      out.emplace_back(s.substr(start, i - start), offset + static_cast<int>(start));
      start = i + 1;
    } else if (s[i] == '(') {
      ++depth;
    } else if (s[i] == ')') {
      --depth;
    }
  }
  return out;
}

BiPoly parse_at(const std::string& piece, int line, int column, const LocalRing& ring) {
  std::size_t lead = piece.find_first_not_of(" \t");
  if (lead == std::string::npos) fail(line, column + 1, "empty polynomial");
  try {
    return ring.parse(piece);
  } catch (const ParseFailure& e) {
    fail(line, column + e.column(), e.message());
  }
}

Certification parse_cert(const std::string& s, int line, int column) {
  if (s == "v-contracted") return Certification::VContracted;
  if (s == "monomial-complete") return Certification::MonomialComplete;
  if (s == "sum") return Certification::Sum;
  if (s == "uncertified") return Certification::Uncertified;
  fail(line, column, "unknown certification '" + s + "'");
}

std::string join_column(const Column& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) out += (i ? ", " : "") + c[i].to_string();
  return out;
}

BiPoly random_poly(const LocalRing& ring, std::mt19937_64& rng, int min_deg, int max_deg, int density) {
  BiPoly f = ring.zero();
  for (int d = min_deg; d <= max_deg; ++d)
    for (int b = 0; b <= d; ++b)
      if (static_cast<int>(rng() % 100) < density) {
        long long c = static_cast<long long>(rng() % 7) - 3;
        if (c == 0) c = 1;
        f += BiPoly::monomial(FieldElement::from_int(ring.field, c), d - b, b, ring.vars);
      }
  return f;
}

}  // namespace

std::string certification_name(Certification c) {
  switch (c) {
    case Certification::VContracted: return "v-contracted";
    case Certification::MonomialComplete: return "monomial-complete";
    case Certification::Sum: return "sum";
    case Certification::Uncertified: return "uncertified";
  }
  return "uncertified";
}

FixtureEntry make_entry(std::string name, Certification cert, TFModule m) {
  FixtureEntry e;
  e.name = std::move(name);
  e.cert = cert;
  e.rank = m.rank();
  e.columns = m.columns();
  e.module = std::move(m);
  return e;
}

FixtureFile empty_fixture_file(std::uint64_t p) {
  FixtureFile f;
  f.ring = LocalRing::root(p == 0 ? FieldTower::rationals() : FieldTower::prime_field(p));
  f.field_line = p == 0 ? "field rationals" : "field prime " + std::to_string(p);
  return f;
}

FixtureFile parse_fixtures(const std::string& text, const Config& cfg) {
  FixtureFile file = empty_fixture_file(cfg.default_modulus);
  bool field_seen = false, vars_seen = false, ring_used = false;
  std::istringstream is(text);
  std::string raw;
  int line = 0;

  enum class Block { None, Module, Ideal } block = Block::None;
  FixtureEntry cur;
  int rank = -1;
  int block_line = 0;
  std::vector<Column> cols;

  while (std::getline(is, raw)) {
    ++line;
    std::string s = raw.substr(0, raw.find('#'));
    std::vector<std::string> w = words(s);
    if (w.empty()) continue;
    const int kw_col = static_cast<int>(s.find(w[0])) + 1;
    const int rest_col = kw_col + static_cast<int>(w[0].size());
    const std::string rest = s.substr(static_cast<std::size_t>(rest_col - 1));
    const std::string& kw = w[0];

    if (block == Block::None) {
      if (kw == "field") {
        if (field_seen || ring_used) fail(line, kw_col, "field declared twice or after entries");
        field_seen = true;
        if (w.size() == 2 && w[1] == "rationals") {
          file.ring = LocalRing::root(FieldTower::rationals(), file.ring.vars);
          file.field_line = "field rationals";
        } else if (w.size() == 3 && w[1] == "prime") {
          std::uint64_t p = 0;
          try {
            p = std::stoull(w[2]);
          } catch (const std::exception&) {
            fail(line, rest_col, "bad modulus '" + w[2] + "'");
          }
          try {
            file.ring = LocalRing::root(FieldTower::prime_field(p), file.ring.vars);
          } catch (const Error& e) {
            fail(line, rest_col, e.what());
          }
          file.field_line = "field prime " + w[2];
        } else {
          fail(line, kw_col, "expected 'field rationals' or 'field prime <p>'");
        }
      } else if (kw == "extension") {
        if (ring_used) fail(line, kw_col, "extension after entries");
        if (w.size() < 3) fail(line, kw_col, "expected 'extension <name> <polynomial in t>'");
        const std::string poly_text = rest.substr(rest.find(w[1]) + w[1].size());
        LocalRing tmp = LocalRing::root(file.ring.field, {"t", "_"});
        BiPoly p = parse_at(poly_text, line, rest_col + static_cast<int>(rest.find(w[1]) + w[1].size()), tmp);
        try {
          Tower t = extend_tower(file.ring.field, p.restrict_variable(0).monic(), w[1], cfg);
          file.ring = LocalRing::root(t, file.ring.vars);
        } catch (const Error& e) {
          fail(line, kw_col, e.what());
        }
        file.extensions.emplace_back(w[1], p.restrict_variable(0).monic().to_string());
      } else if (kw == "vars") {
        if (vars_seen || ring_used) fail(line, kw_col, "vars declared twice or after entries");
        if (w.size() != 3 || w[1] == w[2]) fail(line, kw_col, "expected two distinct variable names");
        vars_seen = true;
        file.ring.vars = {w[1], w[2]};
      } else if (kw == "module" || kw == "ideal") {
        if (w.size() != 2) fail(line, kw_col, "expected '" + kw + " <name>'");
        for (const auto& e : file.entries)
          if (e.name == w[1]) fail(line, rest_col + 1, "duplicate entry name '" + w[1] + "'");
        ring_used = true;
        block = kw == "module" ? Block::Module : Block::Ideal;
        cur = FixtureEntry{};
        cur.name = w[1];
        rank = kw == "ideal" ? 1 : -1;
        cols.clear();
        block_line = line;
      } else {
        fail(line, kw_col, "unexpected '" + kw + "'");
      }
      continue;
    }

    if (kw == "cert") {
      if (w.size() != 2) fail(line, kw_col, "expected 'cert <tag>'");
      cur.cert = parse_cert(w[1], line, rest_col + 1);
    } else if (kw == "rank" && block == Block::Module) {
      if (w.size() != 2 || !cols.empty()) fail(line, kw_col, "rank must be a single number before the columns");
      try {
        rank = std::stoi(w[1]);
      } catch (const std::exception&) {
        fail(line, rest_col + 1, "bad rank");
      }
      if (rank < 0) fail(line, rest_col + 1, "negative rank");
    } else if (kw == "column" && block == Block::Module) {
      if (rank < 0) fail(line, kw_col, "rank must precede the columns");
      Column c;
      for (const auto& [piece, off] : split_commas(rest, rest_col - 1)) c.push_back(parse_at(piece, line, off, file.ring));
      if (static_cast<int>(c.size()) != rank)
        fail(line, kw_col, "column has " + std::to_string(c.size()) + " entries, rank is " + std::to_string(rank));
      cols.push_back(std::move(c));
    } else if (kw == "gens" && block == Block::Ideal) {
      for (const auto& [piece, off] : split_commas(rest, rest_col - 1))
        cols.push_back({parse_at(piece, line, off, file.ring)});
    } else if (kw == "end") {
      if (rank < 0) fail(line, kw_col, "module without rank");
      cur.rank = rank;
      cur.columns = cols;
      try {
        cur.module = TFModule(file.ring, rank, cols);
      } catch (const Error& e) {
        cur.error = e.what();
      }
      file.entries.push_back(std::move(cur));
      block = Block::None;
    } else {
      fail(line, kw_col, "unexpected '" + kw + "' inside an entry");
    }
  }
  if (block != Block::None) fail(block_line, 1, "entry '" + cur.name + "' is missing 'end'");
  return file;
}

std::string print_fixtures(const FixtureFile& file) {
  std::ostringstream os;
  os << file.field_line << "\n";
  for (const auto& [name, poly] : file.extensions) os << "extension " << name << " " << poly << "\n";
  os << "vars " << file.ring.vars[0] << " " << file.ring.vars[1] << "\n";
  for (const auto& e : file.entries) {
    os << "\n";
    if (e.rank == 1) {
      os << "ideal " << e.name << "\ncert " << certification_name(e.cert) << "\ngens ";
      for (std::size_t j = 0; j < e.columns.size(); ++j) os << (j ? ", " : "") << e.columns[j][0].to_string();
      os << "\nend\n";
    } else {
      os << "module " << e.name << "\ncert " << certification_name(e.cert) << "\nrank " << e.rank << "\n";
      for (const auto& c : e.columns) os << "column " << join_column(c) << "\n";
      os << "end\n";
    }
  }
  return os.str();
}

FixtureFile read_fixture_file(const std::string& path, const Config& cfg) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_fixtures(ss.str(), cfg);
}

TFModule random_v_contracted(const LocalRing& ring, std::uint64_t seed, int rank, int max_nu, int max_degree,
                             const Config& cfg) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 400; ++attempt) {
    const int ncols = rank + 1 + static_cast<int>(rng() % 2);
    std::vector<Column> cols;
    for (int j = 0; j < ncols; ++j) {
      Column c;
      for (int i = 0; i < rank; ++i) {
        const int low = static_cast<int>(rng() % 3);
        c.push_back(random_poly(ring, rng, low, low + static_cast<int>(rng() % 2), 30));
      }
      cols.push_back(std::move(c));
    }
    try {
      TFModule m(ring, rank, cols);
      if (!has_finite_colength(m, cfg) || colength(m, cfg) == 0) continue;
      TFModule p = v_contraction(m, cfg);
      if (static_cast<int>(p.column_count()) > max_nu || p.max_degree() > max_degree || colength(p, cfg) == 0) continue;
      return p;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::RankDeficient) throw;
    }
  }
  throw Error(ErrorCode::CapExceeded, "no V-contracted module within the requested bounds");
}

TFModule random_monomial_complete(const LocalRing& ring, std::uint64_t seed, int max_power) {
  std::mt19937_64 rng(seed);
  const int a = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_power));
  const int b = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_power));
  const FieldElement one = FieldElement::from_int(ring.field, 1);
  std::vector<BiPoly> gens{BiPoly::monomial(one, a, 0, ring.vars), BiPoly::monomial(one, 0, b, ring.vars)};
  const int extra = static_cast<int>(rng() % 3);
  for (int k = 0; k < extra && a > 1 && b > 1; ++k)
    gens.push_back(BiPoly::monomial(one, 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(a - 1)),
                                    1 + static_cast<int>(rng() % static_cast<std::uint64_t>(b - 1)), ring.vars));
  return monomial_ideal_closure(ideal(ring, gens));
}

FixtureFile generate_fixtures(std::uint64_t seed, std::size_t count, int rank, std::uint64_t p, FixtureMode mode,
                              const Config& cfg) {
  if (rank < 1) throw Error(ErrorCode::InvalidArgument, "rank must be positive");
  if (mode == FixtureMode::Monomial && rank != 1)
    throw Error(ErrorCode::InvalidArgument, "monomial fixtures are ideals (rank 1)");
  FixtureFile file = empty_fixture_file(p);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t s = seed * 1000003ULL + i;
    if (mode == FixtureMode::VContracted)
      file.entries.push_back(make_entry("v" + std::to_string(i + 1), Certification::VContracted,
                                        random_v_contracted(file.ring, s, rank, 7, 4, cfg)));
    else
      file.entries.push_back(make_entry("mono" + std::to_string(i + 1), Certification::MonomialComplete,
                                        random_monomial_complete(file.ring, s, 6)));
  }
  return file;
}

}  // namespace icm
