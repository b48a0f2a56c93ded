#include "dihom/commands.hpp"

#include <fstream>
#include <sstream>

#include "dihom/homology.hpp"
#include "dihom/json_io.hpp"
#include "dihom/selftest.hpp"
#include "dihom/version.hpp"

namespace dihom {

const char* cli_version() { return tool_version; }

namespace {

Json load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw ParseError("cannot read '" + path + "'");
  return Json::parse(in);  // malformed JSON raises nlohmann's parse_error
}

EnrichedCategory load_category(const std::string& path, std::optional<int> dim) {
  return category_from_json(load_document(path), dim);
}

/* Reject input before computing with it; a category that fails its own
 * validators would only produce nonsense downstream. */
void require_valid(const EnrichedCategory& cat) {
  ValidationReport rep = validate_enriched_category(cat);
  if (rep.ok()) rep.absorb(validate_category(underlying_category(cat)), "underlying ");
  if (!rep.ok())
    throw BuilderError("input category fails validation at " + rep.issues.front().where + ": " +
                       rep.issues.front().what);
}

/* "n" or "a..b"; nullopt when malformed. */
std::optional<std::pair<int, int>> parse_degrees(const std::string& s) {
  auto number = [](const std::string& t) -> std::optional<int> {
    if (t.empty()) return std::nullopt;
    for (char c : t)
      if (c < '0' || c > '9') return std::nullopt;
    return std::stoi(t);
  };
  auto dots = s.find("..");
  if (dots == std::string::npos) {
    auto n = number(s);
    if (!n) return std::nullopt;
    return std::pair{*n, *n};
  }
  auto a = number(s.substr(0, dots));
  auto b = number(s.substr(dots + 2));
  if (!a || !b || *a > *b) return std::nullopt;
  return std::pair{*a, *b};
}

template <class F>
CommandResult guarded(F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    return {2, "", std::string("parse error: ") + e.what()};
  } catch (const Json::parse_error& e) {
    return {2, "", std::string("parse error: ") + e.what()};
  } catch (const BuilderError& e) {
    return {1, "", std::string("error: ") + e.what()};
  } catch (const std::exception& e) {
    return {1, "", std::string("error: ") + e.what()};
  }
}

/* Ties loose ring literals (an Fp value that never met a bound operand)
 * to the requested modulus, so reports print canonical residues. A no-op
 * over the integers and rationals. */
template <class K>
void bind_entries(const RingSpec& spec, Mat<K>& m) {
  const K zero = make_scalar<K>(spec, 0);
  for (long j = 0; j < m.cols(); ++j)
    for (long i = 0; i < m.rows(); ++i) m(i, j) = m(i, j) + zero;
}

template <class K>
ChainComplexK<K> bound_complex(const RingSpec& spec, const EnrichedCategory& cat,
                               const ChainData& data) {
  auto c = build_complex<K>(cat, data);
  if (spec.kind == RingSpec::Kind::prime_field) {
    for (auto& d : c.boundary) bind_entries(spec, d);
    for (auto& lvl : c.level) {
      bind_entries(spec, lvl.relations);
      for (auto& m : lvl.left) bind_entries(spec, m);
      for (auto& m : lvl.right) bind_entries(spec, m);
    }
  }
  return c;
}

template <class K>
Json presentation_json(const PresentedModule<K>& pm) {
  Json j;
  j["rank"] = pm.free_rank;
  Json factors = Json::array();
  for (const auto& f : pm.invariant_factors) factors.push_back(scalar_to_string(f));
  j["invariant_factors"] = factors;
  return j;
}

Json tool_header() {
  return Json{{"name", tool_name}, {"version", tool_version}};
}

std::vector<std::string> morphism_ids(const Category1& cat1) {
  std::vector<std::string> out;
  for (const auto& m : cat1.morphisms) out.push_back(m.name);
  return out;
}

template <class K>
Json homology_degree_json(const HomologyBimodule<K>& h, const std::vector<std::string>& ids) {
  Json j = presentation_json(h.classes.module);
  j["degree"] = h.degree;
  j["cycles"] = matrix_to_json(h.classes.cycles);
  std::vector<std::string> gens;
  for (long g = 0; g < h.classes.cycles.cols(); ++g)
    gens.push_back("h" + std::to_string(h.degree) + "." + std::to_string(g));
  j["module"] = module_to_json(gens, ids, h.module);
  return j;
}

template <class K>
CommandResult run_homology(const RingSpec& spec, const std::string& input,
                           const ReportOptions& opt) {
  EnrichedCategory cat = load_category(input, opt.dim);
  require_valid(cat);
  ChainData data = build_chain_data(cat);
  auto c = bound_complex<K>(spec, cat, data);

  int lo = 0, hi = c.top() - 1;
  if (!opt.degrees.empty()) {
    auto range = parse_degrees(opt.degrees);
    if (!range) return {2, "", "cannot parse degree range '" + opt.degrees + "'"};
    lo = range->first;
    hi = range->second;
    if (hi >= c.top())
      return {1, "",
              "degree " + std::to_string(hi) + " is not available at truncation " +
                  std::to_string(cat.truncation)};
  }

  Json report;
  report["schema"] = "homology-report.v1";
  report["tool"] = tool_header();
  report["ring"] = spec.name();
  report["truncation"] = cat.truncation;
  report["objects"] = cat.objects;
  auto ids = morphism_ids(data.cat1);
  Json degrees = Json::array();
  for (int n = lo; n <= hi; ++n) degrees.push_back(homology_degree_json(homology(c, n), ids));
  report["degrees"] = degrees;
  return {0, report.dump(2) + "\n", ""};
}

template <class K>
CommandResult run_relative(const RingSpec& spec, const std::string& input,
                           const std::vector<std::string>& sub_objects,
                           const ReportOptions& opt) {
  EnrichedCategory cat = load_category(input, opt.dim);
  require_valid(cat);
  auto sub = full_subcategory(cat, sub_objects);
  ChainData amb = build_chain_data(cat);
  ChainData inner = build_chain_data(sub.category);
  auto pair = relative_complex<K>(cat, amb, sub, inner);
  if (spec.kind == RingSpec::Kind::prime_field) {
    for (auto* cx : {&pair.full, &pair.sub, &pair.quotient}) {
      for (auto& d : cx->boundary) bind_entries(spec, d);
      for (auto& lvl : cx->level) {
        bind_entries(spec, lvl.relations);
        for (auto& m : lvl.left) bind_entries(spec, m);
        for (auto& m : lvl.right) bind_entries(spec, m);
      }
    }
    for (auto& m : pair.include_map) bind_entries(spec, m);
    for (auto& m : pair.project_map) bind_entries(spec, m);
  }
  auto report = les(pair);

  int lo = 0, hi = pair.full.top() - 1;
  if (!opt.degrees.empty()) {
    auto range = parse_degrees(opt.degrees);
    if (!range) return {2, "", "cannot parse degree range '" + opt.degrees + "'"};
    lo = range->first;
    hi = std::min(range->second, hi);
  }

  Json out;
  out["schema"] = "relative-report.v1";
  out["tool"] = tool_header();
  out["ring"] = spec.name();
  out["truncation"] = cat.truncation;
  out["objects"] = cat.objects;
  out["sub_objects"] = sub_objects;

  Json sizes = Json::array();
  for (int n = 0; n <= pair.full.top(); ++n)
    sizes.push_back(Json{{"degree", n},
                         {"full", pair.full.level[n].generators},
                         {"extended", pair.sub_indices[n].size()},
                         {"quotient", pair.quotient_indices[n].size()}});
  out["chain_sizes"] = sizes;

  Json degrees = Json::array();
  for (const auto& deg : report.degrees) {
    if (deg.degree < lo || deg.degree > hi) continue;
    Json d;
    d["degree"] = deg.degree;
    d["sub"] = presentation_json(deg.sub.classes.module);
    d["full"] = presentation_json(deg.full.classes.module);
    d["quotient"] = presentation_json(deg.quotient.classes.module);
    d["j_star"] = matrix_to_json(deg.j_star.matrix);
    d["p_star"] = matrix_to_json(deg.p_star.matrix);
    if (deg.degree >= 1) d["delta"] = matrix_to_json(deg.delta.matrix);
    d["lift_independent"] = deg.lift_independent;
    degrees.push_back(d);
  }
  out["degrees"] = degrees;

  Json nodes = Json::array();
  for (const auto& node : report.nodes) nodes.push_back(Json{{"node", node.node}, {"exact", node.exact}});
  out["nodes"] = nodes;
  out["ses"] = report.ses_ok;
  out["exact"] = report.exact;
  out["lifts"] = report.lifts_ok;

  Json transfer = Json::array();
  const K one = make_scalar<K>(spec, 1);
  for (int n = 0; n <= pair.full.top(); ++n) {
    auto tk = transfer_kernel<K>(amb, sub, inner, n, one);
    transfer.push_back(Json{{"degree", n},
                            {"triples", tk.domain.basis.size()},
                            {"kernel_zero", tk.kernel_zero},
                            {"domain_is_extended", tk.domain_is_extended},
                            {"extended_rank", tk.extended_rank}});
  }
  out["transfer"] = transfer;

  bool healthy = report.all_ok();
  return {healthy ? 0 : 1, out.dump(2) + "\n",
          healthy ? "" : "exactness failed; see the report"};
}

}  // namespace

CommandResult cmd_validate(const std::string& input, std::optional<int> dim) {
  return guarded([&]() -> CommandResult {
    EnrichedCategory cat = load_category(input, dim);
    std::ostringstream out;
    out << tool_name << " " << tool_version << "\n";
    out << "objects: " << cat.object_count() << "\n";
    out << "truncation: " << cat.truncation << "\n";

    bool ok = true;
    auto section = [&](const std::string& label, const ValidationReport& rep) {
      out << label << ": " << (rep.ok() ? "ok" : "failed") << "\n";
      for (const auto& it : rep.issues) out << "  " << it.where << ": " << it.what << "\n";
      ok = ok && rep.ok();
    };
    ValidationReport enriched = validate_enriched_category(cat);
    section("enriched structure", enriched);
    if (enriched.ok()) {
      section("underlying category", validate_category(underlying_category(cat)));
      section("translation action", check_translation_action(build_chain_data(cat)));
    }
    out << "result: " << (ok ? "valid" : "invalid") << "\n";
    return {ok ? 0 : 1, out.str(), ""};
  });
}

CommandResult cmd_homology(const std::string& input, const ReportOptions& opt) {
  return guarded([&]() -> CommandResult {
    auto spec = RingSpec::parse(opt.ring);
    if (!spec) return {2, "", "unknown ring '" + opt.ring + "' (use z, q, or fp:P)"};
    switch (spec->kind) {
      case RingSpec::Kind::integers:
        return run_homology<Int>(*spec, input, opt);
      case RingSpec::Kind::rationals:
        return run_homology<Rat>(*spec, input, opt);
      default:
        return run_homology<Fp>(*spec, input, opt);
    }
  });
}

CommandResult cmd_relative(const std::string& input, const std::vector<std::string>& sub_objects,
                           const ReportOptions& opt) {
  return guarded([&]() -> CommandResult {
    if (sub_objects.empty()) return {2, "", "relative needs at least one subcategory object"};
    auto spec = RingSpec::parse(opt.ring);
    if (!spec) return {2, "", "unknown ring '" + opt.ring + "' (use z, q, or fp:P)"};
    switch (spec->kind) {
      case RingSpec::Kind::integers:
        return run_relative<Int>(*spec, input, sub_objects, opt);
      case RingSpec::Kind::rationals:
        return run_relative<Rat>(*spec, input, sub_objects, opt);
      default:
        return run_relative<Fp>(*spec, input, sub_objects, opt);
    }
  });
}

CommandResult cmd_algebra(const std::string& input, std::optional<int> dim) {
  return guarded([&]() -> CommandResult {
    EnrichedCategory cat = load_category(input, dim);
    require_valid(cat);
    PathAlgebra pa = path_algebra(underlying_category(cat));
    Json doc = algebra_to_json(pa.algebra);
    doc["tool"] = tool_header();
    doc["objects"] = pa.objects;
    bool s_unital = true;
    try {
      require_s_unital(pa.algebra);
    } catch (const BuilderError&) {
      s_unital = false;
    }
    doc["properties"] = Json{{"dimension", pa.algebra.dim()},
                             {"idempotent", is_idempotent_algebra<Int>(pa.algebra)},
                             {"s_unital", s_unital}};
    return {0, doc.dump(2) + "\n", ""};
  });
}

CommandResult cmd_selftest(const std::string& only, bool inject_corruption) {
  return guarded([&]() -> CommandResult {
    auto results = run_selftest(only, inject_corruption);
    std::ostringstream out;
    int failures = 0;
    for (const auto& r : results) {
      if (r.pass) {
        out << "ok " << r.name;
        if (!r.detail.empty()) out << " (" << r.detail << ")";
        out << "\n";
      } else {
        ++failures;
        out << "FAIL " << r.name << ": " << r.detail << "\n";
      }
    }
    out << results.size() << " checks, " << failures << " failed\n";
    if (results.empty()) return {1, out.str(), "no checks match the filter"};
    return {failures == 0 ? 0 : 1, out.str(), ""};
  });
}

}  // namespace dihom
