#pragma once

// Command surface over the library: one subcommand per operation, JSON (or a
// plain table) on the output stream, diagnostics on the error stream.
// Exit codes: 0 ok, 1 a check failed, 2 invalid input, 3 resource cap hit.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "sl2fusion/errors.hpp"
#include "sl2fusion/fusion.hpp"
#include "sl2fusion/schubert.hpp"
#include "sl2fusion/testing/acceptance.hpp"
#include "sl2fusion/types.hpp"
#include "sl2fusion/verlinde.hpp"

namespace sl2f::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kInvalidInput = 2, kResourceCap = 3 };

/// "2,2,3" → {2, 2, 3}; no whitespace, no empty fields.
inline std::vector<int> parse_int_list(const std::string& text) {
  require(!text.empty(), "empty integer list");
  std::vector<int> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string field = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    int value = 0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    require(!field.empty() && ec == std::errc() && end == field.data() + field.size(),
            "malformed integer list '" + text + "'");
    out.push_back(value);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

inline int parse_int(const std::string& text) {
  const auto v = parse_int_list(text);
  require(v.size() == 1, "expected a single integer, got '" + text + "'");
  return v.front();
}

struct Report {
  Json result;
  Json checks = Json::array();

  void check(const std::string& name, bool pass, const std::string& detail = "") {
    checks.push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
  }
  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Json& c) { return c["pass"].get<bool>(); });
  }
};

inline Json character_json(const BigradedCharacter& ch) {
  Json terms = Json::array();
  for (const auto& [g, mult] : ch.terms()) terms.push_back({{"weight", g.weight}, {"tdeg", g.tdeg}, {"mult", mult}});
  return terms;
}

inline Json window_json(const TopWindow& w) {
  Json out = Json::object();
  for (const auto& [d, row] : w) {
    Json r = Json::object();
    for (const auto& [offset, mult] : row) r[std::to_string(offset)] = mult;
    out[std::to_string(d)] = r;
  }
  return out;
}

/// Builds a module for a cross-check only when it is cheap.
inline constexpr std::uint64_t kCrossCheckLimit = 2000;

inline void render_table(std::ostream& out, const std::string& command, const Json& input, const Report& r) {
  out << "command  " << command << "\n";
  out << "input    " << input.dump() << "\n";
  if (r.result.is_object()) {
    for (const auto& [key, value] : r.result.items()) out << key << "  " << value.dump() << "\n";
  } else {
    out << "result   " << r.result.dump() << "\n";
  }
  for (const auto& c : r.checks) {
    out << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>();
    const auto detail = c["detail"].get<std::string>();
    if (!detail.empty()) out << "  " << detail;
    out << "\n";
  }
}

/// Runs one command line (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fusion products of sl2 modules and their Schubert varieties"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "table"}));
  std::size_t cap = kDefaultDimensionCap;
  app.add_option("--cap", cap, "module dimension cap");

  std::string s1, s2, s3;
  bool recursive = false;
  int random_count = 0;
  std::uint64_t seed = 0;
  int max_n = 0;

  std::string command;
  Json input = Json::object();
  std::function<Report()> handler;

  auto sub = [&](const std::string& name, const std::string& help, std::vector<std::string> params,
                 std::function<Report()> body) {
    auto* s = app.add_subcommand(name, help);
    std::string* slots[] = {&s1, &s2, &s3};
    for (std::size_t k = 0; k < params.size(); ++k) s->add_option(params[k], *slots[k])->required();
    s->callback([&, name, params, body] {
      command = name;
      std::string* values[] = {&s1, &s2, &s3};
      for (std::size_t k = 0; k < params.size(); ++k) input[params[k]] = *values[k];
      handler = body;
    });
    return s;
  };

  sub("dim", "dimension of M^A", {"A"}, [&] {
    const WeightVector a(parse_int_list(s1));
    Report r;
    const auto d = build_module(a, cap, false).dimension();
    r.result = d;
    r.check("product_formula", d == a.product(), "prod a_i = " + std::to_string(a.product()));
    return r;
  });
  sub("char", "bigraded character of M^A", {"A"}, [&] {
    const WeightVector a(parse_int_list(s1));
    Report r;
    const auto ch = build_module(a, cap, false).character;
    r.result = {{"terms", character_json(ch)}, {"total", ch.total()}};
    r.check("product_formula", ch.total() == a.product());
    return r;
  });
  sub("relations", "divisibility of e(z)^i v by z^(n(i-1))", {"n", "i"}, [&] {
    const int n = parse_int(s1), i = parse_int(s2);
    Report r;
    const auto rep = check_relations(n, i);
    r.result = {{"ok", rep.ok}};
    if (rep.violation) r.result["violation"] = {{"i", rep.violation->first}, {"k", rep.violation->second}};
    r.check("relations", rep.ok);
    return r;
  });
  sub("submodule", "the submodule S_{i,i+1}(A)", {"A", "i"}, [&] {
    const WeightVector a(parse_int_list(s1));
    const int i = parse_int(s2);
    Report r;
    const auto s = build_submodule(a, i, cap);
    r.result = {{"dim", s.dimension()},
                {"construction", s.construction == SubmoduleCase::Generic ? "generic" : "equal_entries"},
                {"first_block", s.first_block.entries()},
                {"second_block", s.second_block.entries()}};
    if (auto cf = submodule_closed_form_dim(a, i)) {
      r.result["closed_form"] = *cf;
      r.check("closed_form", *cf == s.dimension());
    }
    const auto q = quotient_weights(a, i);
    r.check("exact_sequence", s.dimension() + q.product() == a.product(),
            "quotient dim " + std::to_string(q.product()));
    return r;
  });
  sub("exactseq", "dimension additivity of the exact sequence", {"A", "i"}, [&] {
    const WeightVector a(parse_int_list(s1));
    Report r;
    const auto rep = exact_sequence_check(a, parse_int(s2), cap);
    r.result = {{"submodule_dim", rep.submodule_dim}, {"quotient", rep.quotient.entries()},
                {"quotient_dim", rep.quotient_dim}, {"module_dim", rep.module_dim}, {"holds", rep.holds}};
    r.check("dim_additivity", rep.holds);
    return r;
  });
  sub("type", "type of a weakly increasing vector", {"A"}, [&] {
    Report r;
    r.result = type_of(parse_int_list(s1)).parts();
    return r;
  });
  sub("order", "compare two compositions", {"C1", "C2"}, [&] {
    const Composition a(parse_int_list(s1)), b(parse_int_list(s2));
    Report r;
    const bool le = leq(a, b), ge = leq(b, a);
    r.result = {{"leq", le}, {"geq", ge}, {"comparable", le || ge}};
    return r;
  });
  auto* poincare_cmd = sub("poincare", "Poincare polynomial of Sh_C", {"C"}, [&] {
    const Composition c(parse_int_list(s1));
    Report r;
    const auto p = poincare(c);
    r.result = {{"coefficients", p.even_coefficients()}, {"powers", "q^0, q^2, ..."}, {"polynomial", p.str()}};
    std::uint64_t prod = 1;
    for (int part : c.parts()) prod *= static_cast<std::uint64_t>(part + 1);
    r.check("value_at_one", p.at_one() == prod, "prod (i+1) = " + std::to_string(prod));
    if (recursive) {
      require(c.length() == 1, "--recursive needs a single-part composition");
      const auto rec = poincare_recursive_single(c.total());
      r.result["recursive"] = rec.even_coefficients();
      r.check("formula_equals_recursion", rec == p);
    }
    return r;
  });
  poincare_cmd->add_flag("--recursive", recursive, "also evaluate the single-block recursion");
  sub("isom", "isomorphism of Sh_A and Sh_B", {"A", "B"}, [&] {
    Report r;
    r.result = isomorphic(WeightVector(parse_int_list(s1)), WeightVector(parse_int_list(s2)));
    return r;
  });
  sub("morphism", "equivariant surjection Sh_C1 -> Sh_C2", {"C1", "C2"}, [&] {
    Report r;
    r.result = morphism_exists(Composition(parse_int_list(s1)), Composition(parse_int_list(s2)));
    return r;
  });
  sub("bundle-split", "fibration of Sh_C at block t", {"C", "t"}, [&] {
    const int t = parse_int(s2);
    require(t >= 1, "split point must be >= 1");
    Report r;
    const auto sp = bundle_split(Composition(parse_int_list(s1)), static_cast<std::size_t>(t));
    r.result = {{"fiber", sp.fiber.parts()}, {"base", sp.base.parts()}, {"identity_holds", sp.identity_holds}};
    r.check("poincare_factorization", sp.identity_holds);
    return r;
  });
  sub("bundle-exists", "existence of O(B) on Sh_C", {"B", "C"}, [&] {
    Report r;
    r.result = line_bundle_exists(BundleWeights(parse_int_list(s1)), Composition(parse_int_list(s2)));
    return r;
  });
  sub("sections", "dimension of the sections of O(B) on Sh_C", {"B", "C"}, [&] {
    const BundleWeights b(parse_int_list(s1));
    Report r;
    const auto d = sections_dim(b, Composition(parse_int_list(s2)));
    r.result = d;
    if (d <= kCrossCheckLimit) {
      std::vector<int> a = b.entries();
      for (int& x : a) ++x;
      const auto m = build_module(WeightVector(a), cap, false).dimension();
      r.check("module_dimension", m == d, "dim M^(B+1) = " + std::to_string(m));
    }
    return r;
  });
  sub("degrees", "degrees of O(B) on the curves C_j", {"B"}, [&] {
    Report r;
    r.result = curve_degrees(BundleWeights(parse_int_list(s1)));
    return r;
  });
  sub("picard", "rank of the admissible line-bundle lattice", {"C"}, [&] {
    Report r;
    r.result = picard_rank(Composition(parse_int_list(s1)));
    return r;
  });
  sub("coordring", "graded dimensions of the coordinate ring", {"A", "imax"}, [&] {
    const WeightVector a(parse_int_list(s1));
    Report r;
    const auto dims = coordinate_ring_dims(a, parse_int(s2));
    r.result = dims;
    for (std::size_t i = 1; i < dims.size() && dims[i] <= kCrossCheckLimit; ++i) {
      std::vector<int> ai = a.entries();
      for (int& x : ai) x = static_cast<int>(i) * (x - 1) + 1;
      const auto m = build_module(WeightVector(ai), cap, false).dimension();
      r.check("module_dimension_i" + std::to_string(i), m == dims[i]);
    }
    return r;
  });
  auto* flag_cmd = sub("flag-check", "flag conditions for the canonical flag and its translates", {"C"}, [&] {
    const Composition c(parse_int_list(s1));
    require(random_count >= 0, "--random must be >= 0");
    Report r;
    const auto chain = canonical_flag(c);
    const bool canonical = flag_membership(chain, c);
    std::mt19937_64 rng(seed);
    int preserved = 0;
    for (int k = 0; k < random_count; ++k) {
      preserved += flag_membership(group_act(random_group_element(c.total(), rng), chain), c);
    }
    r.result = {{"canonical", canonical}, {"random", random_count}, {"preserved", preserved}, {"seed", seed}};
    r.check("canonical_flag", canonical);
    if (random_count > 0) r.check("group_invariance", preserved == random_count);
    return r;
  });
  flag_cmd->add_option("--random", random_count, "number of random group elements");
  flag_cmd->add_option("--seed", seed, "random seed");
  sub("verlinde-fuse", "level-k fusion [a]*[b]", {"k", "a", "b"}, [&] {
    Report r;
    r.result = fuse(parse_int(s1), parse_int(s2), parse_int(s3)).coeffs;
    return r;
  });
  sub("verlinde-limit", "limit multiplicities at level b_n + 1", {"B"}, [&] {
    const BundleWeights b(parse_int_list(s1));
    Report r;
    const auto lim = limit_multiplicities(b);
    r.result = {{"level", lim.level}, {"coefficients", lim.coeffs}, {"boundary", lim.boundary},
                {"boundary_flag", lim.boundary_flag}};
    r.check("classical_limit", classical_limit_check(b.entries()));
    return r;
  });
  sub("stabilize", "top-anchored character stabilization", {"B", "imax", "degmax"}, [&] {
    const auto b = parse_int_list(s1);
    Report r;
    const auto rep = character_stabilization(b, parse_int(s2), parse_int(s3), cap);
    Json windows = Json::array();
    for (const auto& w : rep.windows) windows.push_back(window_json(w));
    Json steps = Json::array();
    for (const auto& st : rep.steps) steps.push_back({{"i", st.i}, {"equal_at_degree", st.equal_at_degree}});
    r.result = {{"dims", rep.dims}, {"expected_dims", rep.expected_dims}, {"windows", windows}, {"steps", steps},
                {"stabilized_from", rep.stabilized_from ? Json(*rep.stabilized_from) : Json(nullptr)}};
    r.check("section_dims", rep.dims == std::vector<std::size_t>(rep.expected_dims.begin(), rep.expected_dims.end()));
    r.check("stabilized", rep.stabilized_from.has_value());
    return r;
  });
  auto* self_cmd = sub("selftest", "run the acceptance suite", {}, [&] {
    Report r;
    acceptance::Options opts;
    opts.max_n = max_n;
    Json lines = Json::array();
    for (const auto& c : acceptance::run_all(opts)) {
      r.check("criterion_" + std::to_string(c.id), c.pass, c.name + ": " + c.detail);
      lines.push_back(acceptance::format_line(c));
    }
    r.result = {{"criteria", lines.size()}, {"lines", lines}};
    return r;
  });
  self_cmd->add_option("--max-n", max_n, "cap for the exhaustive ranges (0 = full)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }
  if (seed != 0 || random_count != 0) {
    input["random"] = random_count;
    input["seed"] = seed;
  }
  if (recursive) input["recursive"] = true;
  if (max_n != 0) input["max_n"] = max_n;

  Report report;
  try {
    report = handler();
  } catch (const ResourceLimit& e) {
    err << "resource cap: " << e.what() << "\n";
    out << Json{{"command", command}, {"input", input}, {"error", e.what()}}.dump(2) << "\n";
    return kResourceCap;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    out << Json{{"command", command}, {"input", input}, {"error", e.what()}}.dump(2) << "\n";
    return kInvalidInput;
  } catch (const std::domain_error& e) {
    err << "invalid input: " << e.what() << "\n";
    out << Json{{"command", command}, {"input", input}, {"error", e.what()}}.dump(2) << "\n";
    return kInvalidInput;
  }
  if (format == "table") {
    render_table(out, command, input, report);
  } else {
    out << Json{{"command", command}, {"input", input}, {"result", report.result}, {"checks", report.checks}}.dump(2)
        << "\n";
  }
  return report.all_pass() ? kOk : kCheckFailed;
}

}  // namespace sl2f::cli
