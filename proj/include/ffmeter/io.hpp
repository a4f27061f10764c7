// Text formats for functions and fields, and JSON serialization of reports.
#pragma once

#include <json.hpp>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ffmeter/bounds.hpp"
#include "ffmeter/families.hpp"
#include "ffmeter/field.hpp"
#include "ffmeter/linalg.hpp"
#include "ffmeter/measures.hpp"
#include "ffmeter/poly.hpp"
#include "ffmeter/sweep.hpp"

namespace ffm {

using Json = nlohmann::ordered_json;

inline std::vector<std::uint64_t> parse_uint_list(const std::string& text, const std::string& what) {
  std::vector<std::uint64_t> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
      if (item.empty() || item[0] == '-' || item[0] == '+') throw std::invalid_argument("");
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw std::invalid_argument(what + ": '" + item + "' is not a non-negative integer");
    out.push_back(v);
  }
  if (text.back() == ',') throw std::invalid_argument(what + ": trailing comma");
  return out;
}

inline std::vector<Elem> parse_elems(const FieldCtx& ctx, const std::string& text, const std::string& what) {
  std::vector<Elem> out;
  for (auto v : parse_uint_list(text, what)) {
    if (v >= ctx.q()) throw std::invalid_argument(what + ": " + std::to_string(v) + " is not a field element (q = " + std::to_string(ctx.q()) + ")");
    out.push_back(static_cast<Elem>(v));
  }
  return out;
}

inline std::vector<std::uint32_t> parse_modulus(const std::string& text) {
  std::vector<std::uint32_t> out;
  for (auto v : parse_uint_list(text, "modulus")) {
    if (v > UINT32_MAX) throw std::invalid_argument("modulus: coefficient too large");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

/// `span:v1,v2,...`, or the bare list.
inline Subspace parse_span(const FieldCtx& ctx, std::string text) {
  if (text.rfind("span:", 0) == 0) text = text.substr(5);
  if (text.rfind("span=", 0) == 0) text = text.substr(5);
  return span(ctx, parse_elems(ctx, text, "span"));
}

/// `family:<name>[:p1,p2,...]`; indicator and subspace_poly also take `span=v1,v2`.
inline FamilySpec parse_family(const std::string& text) {
  FamilySpec spec;
  const auto colon = text.find(':');
  spec.name = text.substr(0, colon);
  if (spec.name.empty()) throw std::invalid_argument("family spec: missing name");
  bool known = false;
  for (const auto& n : family_names()) known = known || n == spec.name;
  if (!known) throw std::invalid_argument("unknown family '" + spec.name + "'");
  if (colon == std::string::npos) return spec;
  std::string params = text.substr(colon + 1);
  if (params.rfind("span=", 0) == 0) params = params.substr(5);
  spec.params = parse_uint_list(params, "family " + spec.name);
  return spec;
}

/// `table:v0,...,v{q-1}`, `coeffs:a0,a1,...` or `family:...`.
inline Func parse_func(const FieldCtx& ctx, const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("function spec '" + text + "': expected table:, coeffs: or family:");
  const std::string kind = text.substr(0, colon), rest = text.substr(colon + 1);
  if (kind == "table") {
    Func f{parse_elems(ctx, rest, "table")};
    if (f.size() != ctx.q())
      throw std::invalid_argument("table: expected " + std::to_string(ctx.q()) + " values, got " + std::to_string(f.size()));
    return f;
  }
  if (kind == "coeffs") {
    Poly poly{parse_elems(ctx, rest, "coeffs")};
    if (poly.coeffs.empty()) throw std::invalid_argument("coeffs: empty coefficient list");
    return to_func(ctx, reduce(ctx, poly));
  }
  if (kind == "family") return build(ctx, parse_family(rest));
  throw std::invalid_argument("function spec: unknown kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline std::string format_list(const std::vector<Elem>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + std::to_string(values[i]);
  return s;
}

inline std::string format_table(const Func& f) { return "table:" + format_list(f.table); }
inline std::string format_coeffs(const Poly& poly) { return "coeffs:" + format_list(poly.coeffs.empty() ? std::vector<Elem>{0} : poly.coeffs); }

inline std::string format_rational(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

inline Json to_json(const FieldCtx& ctx) {
  return Json{{"p", ctx.p()}, {"n", ctx.n()}, {"q", ctx.q()}, {"modulus", ctx.modulus()}, {"zeta", ctx.zeta()}};
}

inline Json degree_json(const Degree& d) { return d ? Json(*d) : Json("-inf"); }

inline Json to_json(const MeasureReport& r) {
  Json j;
  j["degree"] = degree_json(r.degree);
  j["weight"] = r.weight;
  j["add_index"] = r.add_index;
  j["codim"] = r.codim;
  j["permutation"] = r.permutation;
  if (r.carlitz_rank) {
    j["carlitz_rank"] = Json{{r.carlitz_rank->exact ? "exact" : "lower_bound", r.carlitz_rank->value}};
    if (r.carlitz_rank->certificate) j["carlitz_params"] = r.carlitz_rank->certificate->params;
  } else {
    j["carlitz_rank"] = nullptr;
  }
  j["mobius_lower_bound"] = r.mobius_lower_bound ? Json(*r.mobius_lower_bound) : Json(nullptr);
  j["mult_index"] = r.mult_index ? Json(*r.mult_index) : Json("undefined");
  if (r.cyclotomic) j["cyclotomic"] = Json{{"ell", r.cyclotomic->ell}, {"r", r.cyclotomic->r}, {"branch_constants", r.cyclotomic->branch_constants}};
  return j;
}

inline Json to_json(const BoundVerdict& v) {
  Json j{{"id", v.id}, {"applicable", v.applicable}, {"holds", v.holds}};
  if (v.applicable) {
    j["lhs"] = format_rational(v.lhs);
    j["relation"] = to_string(v.relation);
    j["rhs"] = format_rational(v.rhs);
    j["vacuous"] = v.vacuous;
  }
  if (v.provisional) j["provisional"] = true;
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

inline Json to_json(const FieldCtx& ctx, const AdditiveDecomposition& d) {
  Json consts = Json::array();
  for (const auto& [rep, c] : d.coset_constants) consts.push_back(Json{rep, c});
  return Json{{"codim", d.codim},
              {"add_index", ipow(ctx.p(), d.codim)},
              {"period_subspace", d.period_subspace.basis},
              {"kernel_poly", format_coeffs(to_poly(ctx, d.kernel_poly))},
              {"linear_part", format_coeffs(to_poly(ctx, d.linear_part))},
              {"outer", format_coeffs(d.outer)},
              {"coset_constants", consts}};
}

inline Json to_json(const BoundTally& t) {
  Json j{{"id", t.id},
         {"evaluated", t.evaluated},
         {"applicable", t.applicable},
         {"holds", t.holds},
         {"violations", t.violations},
         {"vacuous", t.vacuous},
         {"provisional", t.provisional}};
  if (t.tightest) {
    j["extremal"] = Json{{"slack", format_rational(t.tightest->slack)},
                         {"lhs", format_rational(t.tightest->lhs)},
                         {"rhs", format_rational(t.tightest->rhs)},
                         {"witness", format_table(t.tightest->witness)}};
  } else {
    j["extremal"] = nullptr;
  }
  j["first_violation"] = t.first_violation ? Json(format_table(*t.first_violation)) : Json(nullptr);
  Json notes = Json::object();
  for (const auto& [k, c] : t.notes) notes[k] = c;
  j["notes"] = notes;
  return j;
}

inline Json to_json(const FieldCtx& ctx, const SweepStats& s) {
  Json codim = Json::object(), weight = Json::object(), mins = Json::array();
  for (const auto& [k, c] : s.codim_histogram) codim[std::to_string(k)] = c;
  for (const auto& [k, c] : s.weight_histogram) weight[std::to_string(k)] = c;
  for (const auto& [k, rec] : s.deg_addind_min)
    mins.push_back(Json{{"codim", k},
                        {"add_index", ipow(ctx.p(), k)},
                        {"functions", rec.count},
                        {"min_deg_times_add_index", rec.min_product},
                        {"attains_q", rec.min_product == ctx.q()},
                        {"witness", format_table(rec.witness)}});
  std::ostringstream ws;
  ws << s.weight_sum;
  return Json{{"functions", s.functions},
              {"permutations", s.permutations},
              {"weight_sum", ws.str()},
              {"mean_weight", format_rational(s.mean_weight())},
              {"codim_distribution", codim},
              {"weight_distribution", weight},
              {"deg_add_index_minimum", mins},
              {"mult_index_undefined", s.mult_index_undefined}};
}

inline Json to_json(const FieldCtx& ctx, const SweepReport& r) {
  Json bounds = Json::array();
  for (const auto& b : r.bounds) bounds.push_back(to_json(b));
  return Json{{"field", to_json(ctx)}, {"space", r.space.to_string()}, {"bounds", bounds}, {"stats", to_json(ctx, r.stats)}};
}

}  // namespace ffm
