// Command-line front end. `run` is separate from main so tests can drive it.
#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ffmeter/ffmeter.hpp"

namespace ffm::cli {

enum ExitCode { kOk = 0, kViolation = 1, kUsage = 2, kInapplicable = 3 };

inline unsigned default_workers() {
  if (const char* env = std::getenv("FFMETER_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1 && v <= 1024) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

namespace detail {

inline std::string scalar(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

inline void render_human(const Json& j, std::ostream& out, const std::string& indent = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = j.is_object() ? it.key() : "-";
    const Json& v = it.value();
    const bool flat_array = v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_primitive(); });
    if (v.is_primitive() || flat_array || v.empty()) {
      out << indent << key << ": " << (flat_array ? v.dump() : scalar(v)) << "\n";
    } else {
      out << indent << key << ":\n";
      render_human(v, out, indent + "  ");
    }
  }
}

inline std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline void render_csv(const Json& report, std::ostream& out) {
  out << "kind,class,count,value,attains_q,witness\n";
  for (const auto& b : report["bounds"]) {
    const Json& e = b["extremal"];
    out << "bound_violations," << csv_cell(b["id"].get<std::string>()) << "," << b["applicable"].dump() << ","
        << b["violations"].dump() << ",," << (e.is_null() ? "" : csv_cell(e["witness"].get<std::string>())) << "\n";
  }
  for (const auto& b : report["bounds"]) {
    const Json& e = b["extremal"];
    if (e.is_null()) continue;
    out << "bound_min_slack," << csv_cell(b["id"].get<std::string>()) << "," << b["applicable"].dump() << ","
        << csv_cell(e["slack"].get<std::string>()) << ",," << csv_cell(e["witness"].get<std::string>()) << "\n";
  }
  const Json& s = report["stats"];
  for (const auto& [k, c] : s["codim_distribution"].items()) out << "codim," << k << "," << c.dump() << ",,,\n";
  for (const auto& [k, c] : s["weight_distribution"].items()) out << "weight," << k << "," << c.dump() << ",,,\n";
  for (const auto& m : s["deg_add_index_minimum"])
    out << "deg_add_index_min," << m["codim"].dump() << "," << m["functions"].dump() << ","
        << m["min_deg_times_add_index"].dump() << "," << m["attains_q"].dump() << ","
        << csv_cell(m["witness"].get<std::string>()) << "\n";
}

inline std::vector<std::string> split_ids(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  if (out.empty()) throw std::invalid_argument("--bounds: empty list");
  return out;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Complexity measures of self-maps of finite fields"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  std::string field_spec, modulus_spec, func_spec, span_spec, space_spec, bounds_spec = "all", format = "human";
  bool json = false;
  std::uint32_t exact_crk_max = 9;
  unsigned workers = default_workers();
  std::uint64_t seed = 0, compo_pairs = 1000;

  auto add_field = [&](CLI::App* sub) {
    sub->add_option("--field", field_spec, "Field as p^n")->required();
    sub->add_option("--modulus", modulus_spec, "Defining polynomial c0,c1,...,cn (low to high, monic)");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "json", "csv"}));
    sub->add_flag("--json", json, "Same as --format json");
  };

  auto* field_info = app.add_subcommand("field-info", "Field parameters and element encodings");
  add_field(field_info);
  field_info->add_option("--span", span_spec, "Also describe the F_p-span of these elements");

  auto* measure = app.add_subcommand("measure", "Degree, weight, additive index, Carlitz rank and multiplicative index");
  add_field(measure);
  measure->add_option("--func", func_spec, "table:..., coeffs:... or family:<name>[:params]")->required();
  measure->add_option("--exact-crk-max", exact_crk_max, "Largest q for which the Carlitz rank is computed exactly");

  auto* decompose = app.add_subcommand("decompose", "Write f as g(M(x)) + L(x) over its period subspace");
  add_field(decompose);
  decompose->add_option("--func", func_spec, "Function spec")->required();

  auto* verify = app.add_subcommand("verify", "Check bounds on one function or over a space of functions");
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep a space of functions and report statistics");
  for (auto* sub : {verify, sweep_cmd}) {
    add_field(sub);
    sub->add_option("--bounds", bounds_spec, "all, or a comma-separated list of bound ids");
    sub->add_option("--exact-crk-max", exact_crk_max, "Largest q for which the Carlitz rank is computed exactly");
    sub->add_option("--workers", workers, "Worker threads (default: FFMETER_WORKERS or 1)")->check(CLI::Range(1u, 1024u));
    sub->add_option("--seed", seed, "Seed for field-level randomized checks");
    sub->add_option("--compo-pairs", compo_pairs, "Random pairs for the composition checks");
  }
  verify->add_option("--func", func_spec, "Check a single function instead of a space");
  verify->add_option("--space", space_spec, "all-funcs, all-perms, zero-funcs, zero-nonvanishing, zero-perms, sample:COUNT:SEED, sample-perms:COUNT:SEED");
  sweep_cmd->add_option("--space", space_spec, "Function space")->required();

  auto* family = app.add_subcommand("family", "Build a named family");
  add_field(family);
  std::string family_spec;
  family->add_option("name", family_spec, "<name>[:p1,p2,...]")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "ffmeter: " << e.what() << "\n";
    return kUsage;
  }
  if (json) format = "json";

  try {
    std::optional<std::vector<std::uint32_t>> modulus;
    if (!modulus_spec.empty()) modulus = parse_modulus(modulus_spec);
    const FieldCtx ctx = parse_field(field_spec, modulus);
    if (format == "csv" && !sweep_cmd->parsed() && !(verify->parsed() && func_spec.empty()))
      throw std::invalid_argument("--format csv is only available for sweeps");

    Json doc{{"field", to_json(ctx)}};
    int code = kOk;

    if (field_info->parsed()) {
      doc["primitive_element"] = ctx.zeta();
      doc["lambda"] = ctx.lambda();
      if (!span_spec.empty()) {
        const Subspace u = parse_span(ctx, span_spec);
        doc["span"] = Json{{"dim", u.dim()},
                           {"basis", u.basis},
                           {"elements", enumerate(ctx, u)},
                           {"subspace_poly", format_coeffs(to_poly(ctx, subspace_poly(ctx, u)))}};
      }
    } else if (measure->parsed()) {
      const Func f = parse_func(ctx, func_spec);
      MeasureOptions opts;
      opts.exact_crk_max = exact_crk_max;
      doc["function"] = format_table(f);
      doc["interpolation"] = format_coeffs(interpolate(ctx, f));
      const Json measures = to_json(measure_all(ctx, f, opts));
      for (const auto& [k, v] : measures.items()) doc[k] = v;
    } else if (decompose->parsed()) {
      const Func f = parse_func(ctx, func_spec);
      doc["function"] = format_table(f);
      doc["decomposition"] = to_json(ctx, additive_decompose(ctx, f));
    } else if (family->parsed()) {
      const Func f = build(ctx, parse_family(family_spec));
      doc["family"] = family_spec;
      doc["function"] = format_table(f);
      doc["interpolation"] = format_coeffs(interpolate(ctx, f));
    } else if (verify->parsed() && !func_spec.empty()) {
      if (!space_spec.empty()) throw std::invalid_argument("--func and --space are mutually exclusive");
      const auto ids = expand_bound_ids(detail::split_ids(bounds_spec));
      const Func f = parse_func(ctx, func_spec);
      MeasureOptions opts;
      opts.exact_crk_max = exact_crk_max;
      const MeasureReport r = measure_all(ctx, f, opts);
      doc["function"] = format_table(f);
      doc["measures"] = to_json(r);
      Json verdicts = Json::array();
      bool any_applicable = false, violated = false;
      for (const auto& v : check_function(ctx, f, r)) {
        if (std::find(ids.begin(), ids.end(), v.id) == ids.end()) continue;
        any_applicable = any_applicable || v.applicable;
        violated = violated || (v.applicable && !v.holds && !v.provisional);
        verdicts.push_back(to_json(v));
      }
      doc["verdicts"] = verdicts;
      code = violated ? kViolation : any_applicable ? kOk : kInapplicable;
    } else {
      if (space_spec.empty()) throw std::invalid_argument("verify needs --func or --space");
      SweepOptions opts;
      opts.bound_ids = detail::split_ids(bounds_spec);
      opts.workers = workers;
      opts.exact_crk_max = exact_crk_max;
      opts.compo_seed = seed;
      opts.compo_pairs = compo_pairs;
      const SweepReport report = sweep(ctx, parse_space(space_spec), opts);
      doc = to_json(ctx, report);
      code = report.total_violations() > 0 ? kViolation : report.total_applicable() == 0 ? kInapplicable : kOk;
    }

    if (format == "json") {
      out << doc.dump(2) << "\n";
    } else if (format == "csv") {
      detail::render_csv(doc, out);
    } else {
      detail::render_human(doc, out);
    }
    return code;
  } catch (const std::invalid_argument& e) {
    err << "ffmeter: " << e.what() << "\n";
    return kUsage;
  } catch (const std::overflow_error& e) {
    err << "ffmeter: " << e.what() << "\n";
    return kUsage;
  } catch (const std::length_error& e) {
    err << "ffmeter: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "ffmeter: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace ffm::cli
