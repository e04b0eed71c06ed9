#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ipsforge/certificates.hpp"
#include "ipsforge/errors.hpp"
#include "ipsforge/gf.hpp"
#include "ipsforge/lowerbounds.hpp"
#include "ipsforge/mvpoly.hpp"
#include "json.hpp"

namespace ipsforge::io {

using json = nlohmann::json;
using gf::Field;
using mvpoly::Poly;
using mvpoly::VarLayout;

struct RunConfig {
  std::string subcommand;
  gf::u64 p = 2;
  unsigned k = 1;
  std::string family;
  std::size_t n = 0;
  gf::u64 seed = 0;
  std::string format = "json";
  std::string out;
  std::map<std::string, std::string> extra;
};

inline json to_json(const RunConfig& c) {
  json j = {{"subcommand", c.subcommand}, {"p", c.p},     {"k", c.k},           {"family", c.family},
            {"n", c.n},                   {"seed", c.seed}, {"format", c.format}, {"out", c.out}};
  for (const auto& [key, v] : c.extra) j["params"][key] = v;
  return j;
}

// Parses JSON text, reporting syntax errors by line and column.
inline json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::parse_error,
                source + ": invalid JSON at line " + std::to_string(line) + ", column " + std::to_string(col));
  }
}

inline json poly_list(const std::vector<Poly>& ps, const VarLayout& layout) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(mvpoly::format(p, layout));
  return a;
}

inline json to_json(const certificates::CertStats& s) {
  return {{"max_degree", s.max_degree}, {"total_sparsity", s.total_sparsity}, {"modeled_depth", s.modeled_depth}};
}

inline json to_json(const certificates::Provenance& p) {
  json params = json::object();
  for (const auto& [k, v] : p.params) params[k] = v;
  return {{"constructor", p.constructor}, {"params", params}};
}

inline json instance_json(const Field& f, const VarLayout& layout, const std::vector<Poly>& axioms,
                          const std::string& family) {
  return {{"field", f.spec().to_string()}, {"vars", layout.to_string()}, {"instance", poly_list(axioms, layout)},
          {"family", family}};
}

inline json certificate_json(const Field& f, const VarLayout& layout, const std::vector<Poly>& axioms,
                             const certificates::Certificate& cert, const std::string& family) {
  json j = instance_json(f, layout, axioms, family);
  j["A"] = poly_list(cert.A, layout);
  j["B"] = poly_list(cert.B, layout);
  j["provenance"] = to_json(cert.provenance);
  j["stats"] = to_json(cert.stats);
  return j;
}

namespace detail {

template <class T>
T get(const json& j, const char* key, const std::string& source) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::parse_error, source + ": missing key '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::parse_error, source + ": key '" + key + "' has the wrong type");
  }
}

inline std::vector<Poly> parse_polys(const json& j, const char* key, const Field& f, const VarLayout& layout,
                                     const std::string& source) {
  const auto texts = get<std::vector<std::string>>(j, key, source);
  std::vector<Poly> out;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    try {
      out.push_back(mvpoly::parse(texts[i], f, layout));
    } catch (const Error& e) {
      throw Error(ErrorCode::parse_error, source + ": " + key + "[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return out;
}

}  // namespace detail

struct LoadedInstance {
  std::shared_ptr<const Field> field;
  VarLayout layout;
  std::vector<Poly> axioms;
  std::string family;
};

// Reuses `field` when the file names the same spec, so polynomials from two
// files can be combined; a different spec is a FieldMismatch.
inline LoadedInstance load_instance(const json& j, const std::string& source,
                                    std::shared_ptr<const Field> field = nullptr) {
  const auto spec_text = detail::get<std::string>(j, "field", source);
  gf::FieldSpec spec;
  try {
    spec = gf::FieldSpec::parse(spec_text);
  } catch (const Error& e) {
    throw Error(ErrorCode::parse_error, source + ": " + e.what());
  }
  if (field && field->spec() != spec)
    throw Error(ErrorCode::field_mismatch, source + ": field " + spec_text + " differs from " + field->spec().to_string());
  if (!field) field = std::make_shared<const Field>(spec);
  LoadedInstance li;
  li.field = field;
  try {
    li.layout = VarLayout::parse(detail::get<std::string>(j, "vars", source));
  } catch (const Error& e) {
    throw Error(ErrorCode::parse_error, source + ": vars: " + e.what());
  }
  li.axioms = detail::parse_polys(j, "instance", *field, li.layout, source);
  li.family = j.contains("family") && j["family"].is_string() ? j["family"].get<std::string>() : "";
  return li;
}

struct LoadedCertificate {
  LoadedInstance instance;
  certificates::Certificate cert;
};

inline LoadedCertificate load_certificate(const json& j, const std::string& source) {
  LoadedCertificate lc{load_instance(j, source), {}};
  const Field& f = *lc.instance.field;
  lc.cert.A = detail::parse_polys(j, "A", f, lc.instance.layout, source);
  lc.cert.B = detail::parse_polys(j, "B", f, lc.instance.layout, source);
  if (j.contains("provenance")) {
    const json& p = j["provenance"];
    lc.cert.provenance.constructor = detail::get<std::string>(p, "constructor", source);
    if (p.contains("params"))
      lc.cert.provenance.params = detail::get<std::map<std::string, std::string>>(p, "params", source);
  }
  lc.cert.stats = certificates::cert_stats(lc.cert);
  return lc;
}

inline json to_json(const lowerbounds::TrialReport& r) {
  return {{"kind", r.kind},
          {"n", r.n},
          {"p", r.p},
          {"k", r.k},
          {"seed", r.seed},
          {"beta", r.beta},
          {"trials", r.trials},
          {"successes", r.successes},
          {"successes_all_subsets", r.successes_all_subsets},
          {"rate", r.rate()},
          {"rate_all_subsets", r.rate_all_subsets()},
          {"bound_single", r.bound_single},
          {"bound_union", r.bound_union},
          {"bound_union_exact", r.bound_union_exact},
          {"vacuous_single", r.vacuous_single},
          {"vacuous_union", r.vacuous_union},
          {"sigma_union", r.sigma(r.bound_union)}};
}

inline json subset_names(std::size_t mask, std::size_t n) {
  json a = json::array();
  for (std::size_t i = 0; i < n; ++i)
    if (mask >> i & 1) a.push_back("x" + std::to_string(i + 1));
  return a;
}

inline json to_json(const lowerbounds::ScanReport& r) {
  json degenerate = json::array();
  for (auto m : r.degenerate) degenerate.push_back(subset_names(m, r.n));
  return {{"n", r.n},
          {"degenerate", degenerate},
          {"worst", subset_names(r.worst_mask, r.n)},
          {"worst_deficit", r.worst_deficit},
          {"all_full", r.all_full()}};
}

inline json to_json(const lowerbounds::SparsityReport& r) {
  return {{"n", r.n}, {"sparsity", r.sparsity}, {"bound", r.bound}, {"holds", r.holds()}};
}

inline json to_json(const lowerbounds::WidthReport& r) {
  return {{"order", r.order}, {"cut_ranks", r.cut_ranks}, {"width", r.width}};
}

inline json to_json(const lowerbounds::TopCoeffReport& r) {
  const Field& f = *r.interpolated.field();
  return {{"alternating", f.format(r.alternating)},
          {"closed_form", f.format(r.closed_form)},
          {"interpolated", f.format(r.interpolated)},
          {"agree", r.agree()}};
}

}  // namespace ipsforge::io
