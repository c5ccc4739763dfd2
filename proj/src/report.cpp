#include "icm/report.hpp"

#include <functional>
#include <sstream>

#include "icm/hd.hpp"
#include "icm/multiplicity.hpp"
#include "icm/valuation.hpp"

namespace icm {

namespace {

const char* yes_no(bool b) { return b ? "true" : "false"; }

template <class T>
std::string joined(const std::vector<T>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

std::string generators(const TFModule& ideal_module) {
  std::string out;
  for (std::size_t j = 0; j < ideal_module.column_count(); ++j)
    out += (j ? ", " : "") + ideal_module.columns()[j][0].to_string();
  return out;
}

enum class Verdict { Pass, Mismatch, Error };

using EntryBody = std::function<Verdict(const FixtureEntry&, std::ostream&)>;

Report run(const char* command, const FixtureFile& file, const ReportOptions& opts, bool with_seed,
           const EntryBody& body) {
  std::ostringstream os;
  os << "icm-report " << kReportSchema << "\n";
  os << "engine " << kEngineVersion << "\n";
  os << "command " << command << "\n";
  os << file.field_line << "\n";
  for (const auto& [name, poly] : file.extensions) os << "extension " << name << " " << poly << "\n";
  if (with_seed) os << "seed " << opts.seed << "\n";
  os << "entries " << file.entries.size() << "\n";
  Report rep;
  for (const auto& e : file.entries) {
    os << "\nentry " << e.name << "\n";
    os << "cert " << certification_name(e.cert) << "\n";
    Verdict v = Verdict::Error;
    if (!e.error.empty()) {
      os << "error " << e.error << "\n";
    } else {
      std::ostringstream body_out;
      try {
        v = body(e, body_out);
        os << body_out.str();
      } catch (const Error& err) {
        os << body_out.str() << "error " << err.what() << "\n";
      }
    }
    const bool counted = e.cert != Certification::Uncertified || opts.strict;
    const char* name = v == Verdict::Pass ? "pass" : v == Verdict::Mismatch ? "mismatch" : "error";
    os << "verdict " << name << (v != Verdict::Pass && !counted ? " (uncertified, not counted)" : "") << "\n";
    os << "end\n";
    if (v != Verdict::Pass && counted) rep.exit_code = 1;
  }
  rep.text = os.str();
  return rep;
}

void write_check(std::ostream& os, const char* id, const FormulaCheck& c) {
  os << "check " << id << " ";
  if (!c.applicable) {
    os << "not-applicable";
  } else {
    os << (c.holds ? "holds" : "fails") << " lhs " << c.lhs << " rhs " << c.rhs;
    if (!c.per_seed.empty()) os << " per-seed " << joined(c.per_seed);
  }
  if (!c.detail.empty()) os << " (" << c.detail << ")";
  os << "\n";
}

std::string dot_name(const std::string& s) {
  std::string out = "entry_";
  for (char ch : s) out += std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_';
  return out;
}

}  // namespace

Report analyze_report(const FixtureFile& file, const ReportOptions& opts, const Config& cfg) {
  return run("analyze", file, opts, false, [&](const FixtureEntry& e, std::ostream& os) {
    TFModule s = double_dual_presentation(e.module, cfg);
    os << "presentation " << (has_finite_colength(e.module, cfg) ? "as-given" : "double-dual") << "\n";
    os << "rank " << s.rank() << "\n";
    const int lambda = colength(s, cfg);
    TFModule mg = minimal_generators(s, cfg);
    os << "nu " << mg.column_count() << "\n";
    os << "ord " << (lambda == 0 ? 0 : order(s, cfg)) << "\n";
    os << "minors " << generators(minimal_generators(minors_ideal(s, cfg), cfg)) << "\n";
    os << "colength " << lambda << "\n";
    os << "contracted " << yes_no(is_contracted(s, cfg)) << "\n";
    os << "v-contracted " << yes_no(is_contracted_from_V(s, cfg)) << "\n";
    os << "free " << yes_no(is_free(s, cfg)) << "\n";
    return Verdict::Pass;
  });
}

Report hd_report(const FixtureFile& file, const ReportOptions& opts, const Config& cfg) {
  std::ostringstream dot;
  Report rep = run("hd", file, opts, false, [&](const FixtureEntry& e, std::ostream& os) {
    HDReport h = hd_verify(e.module, cfg);
    os << "total " << h.total << "\n";
    os << "direct " << h.direct << "\n";
    os << "equal " << yes_no(h.equal) << "\n";
    os << "depth " << h.tree.depth() << "\n";
    os << "nodes " << h.tree.node_count() << "\n";
    os << "strict-descent " << yes_no(h.tree.strict_descent) << "\n";
    for (const HDNode* n : hd_nodes(h.tree)) {
      os << "node " << (n->point.empty() ? "root" : n->ring.path_string()) << " ord " << n->order << " term "
         << n->local_term << " degree " << n->degree_over_root << " colength " << n->colength << "\n";
    }
    dot << to_dot(h.tree, dot_name(e.name));
    return h.equal ? Verdict::Pass : Verdict::Mismatch;
  });
  rep.dot = dot.str();
  return rep;
}

Report br_report(const FixtureFile& file, const ReportOptions& opts, const Config& cfg) {
  return run("br", file, opts, true, [&](const FixtureEntry& e, std::ostream& os) {
    TFModule m = minimal_generators(double_dual_presentation(e.module, cfg), cfg);
    os << "colength " << colength(m, cfg) << "\n";
    MultiplicityEstimate est = br_multiplicity_samples(m, opts.seed, opts.samples, cfg);
    os << "e-reduction " << est.value << " seeds " << joined(est.seeds) << " samples " << joined(est.samples)
       << " stable " << yes_no(est.stable) << "\n";
    bool ok = true;
    if (opts.growth > 0) {
      GrowthTable g = br_multiplicity_growth(m, opts.growth, cfg);
      os << "e-growth " << g.multiplicity << " n-max " << opts.growth << " colengths " << joined(g.colengths)
         << " leading " << g.leading.get_str() << "\n";
      const bool agree = g.multiplicity == est.value;
      os << "routes-agree " << yes_no(agree) << "\n";
      ok = ok && agree;
    }
    os << "reduction-check multiplicity-criterion\n";
    const std::pair<const char*, FormulaCheck> checks[] = {
        {"reduction-length", verify_reduction_length(m, opts.seed, opts.samples, cfg)},
        {"local-formula", verify_local_formula(m, opts.seed, cfg)},
        {"minors-formula", verify_mult_formula(m, opts.seed, cfg)},
        {"tree-multiplicity", verify_tree_multiplicity(m, opts.seed, cfg)},
    };
    for (const auto& [id, c] : checks) {
      write_check(os, id, c);
      ok = ok && (!c.applicable || c.holds);
    }
    return ok ? Verdict::Pass : Verdict::Mismatch;
  });
}

}  // namespace icm
