// ipsforge command-line front end: instance generation, certificate
// construction and verification, lower-bound oracles and experiment suites.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ipsforge/certificates.hpp"
#include "ipsforge/errors.hpp"
#include "ipsforge/experiments.hpp"
#include "ipsforge/gf.hpp"
#include "ipsforge/io.hpp"
#include "ipsforge/lowerbounds.hpp"
#include "ipsforge/mvpoly.hpp"
#include "ipsforge/rng.hpp"
#include "ipsforge/symfun.hpp"

namespace {

using namespace ipsforge;
using gf::Field;
using gf::FieldElem;
using gf::FieldTower;
using gf::u64;
using io::json;
using mvpoly::Poly;
using mvpoly::VarLayout;

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// 1 usage/parse, 2 mathematically expected failure, 3 internal.
int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::parse_error:
    case ErrorCode::usage:
    case ErrorCode::field_mismatch:
      return 1;
    case ErrorCode::satisfiable_instance:
    case ErrorCode::satisfiable_system:
    case ErrorCode::no_certificate_at_degree:
    case ErrorCode::beta_in_subfield:
    case ErrorCode::zero_denominator:
      return 2;
    default:
      return 3;
  }
}

struct Options {
  io::RunConfig cfg;
  std::string poly;
  std::string instance_file;
  std::string cert_file;
  std::string constructor;
  std::string oracle;
  std::string suite;
  std::string lifted = "fixed-order";
  std::string left;
  std::string order;
  std::string csv;
  std::string vars;
  std::size_t trials = 200;
  std::size_t terms = 0;
  std::size_t m = 2;
  long degree = -1;
  std::size_t max_degree = 6;
  long zero_index = 0;
  bool canonical = false;
  bool timings = false;
};

struct Built {
  std::shared_ptr<const FieldTower> tower;
  std::shared_ptr<const Field> field;
  VarLayout layout;
  std::vector<Poly> axioms;
  std::string family;
};

std::shared_ptr<const Field> ext_of(const std::shared_ptr<const FieldTower>& t) {
  return std::shared_ptr<const Field>(t, &t->ext());
}

// "c*e_d" terms joined by + and -, systems separated by ';'.
std::vector<Poly> parse_symmetric(const std::string& text, const Field& f, std::size_t n) {
  std::vector<Poly> sys;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) {
    symfun::ElemSymExpansion x{std::vector<FieldElem>(n + 1, f.zero())};
    std::size_t pos = 0;
    auto skip = [&] {
      while (pos < part.size() && part[pos] == ' ') ++pos;
    };
    auto fail = [&](const std::string& why) {
      return Error(ErrorCode::parse_error, "symmetric polynomial '" + part + "': " + why + " at column " + std::to_string(pos + 1));
    };
    skip();
    if (pos == part.size()) throw fail("empty polynomial");
    bool first = true;
    while (pos < part.size()) {
      bool neg = false;
      if (part[pos] == '+' || part[pos] == '-') {
        neg = part[pos] == '-';
        ++pos;
        skip();
      } else if (!first) {
        throw fail("expected '+' or '-'");
      }
      first = false;
      FieldElem c = f.one();
      bool have = false;
      if (pos < part.size() && std::isdigit(static_cast<unsigned char>(part[pos]))) {
        u64 v = 0;
        const std::size_t s = pos;
        while (pos < part.size() && std::isdigit(static_cast<unsigned char>(part[pos]))) ++pos;
        if (!gf::detail::parse_u64(part.substr(s, pos - s), v)) throw fail("bad coefficient");
        c = f.from_index(v % f.p());
        have = true;
        skip();
        if (pos < part.size() && part[pos] == '*') {
          ++pos;
          skip();
          if (pos >= part.size() || part[pos] != 'e') throw fail("expected e<d> after '*'");
        }
      }
      std::size_t d = 0;
      if (pos < part.size() && part[pos] == 'e') {
        ++pos;
        const std::size_t s = pos;
        while (pos < part.size() && std::isdigit(static_cast<unsigned char>(part[pos]))) ++pos;
        u64 v = 0;
        if (!gf::detail::parse_u64(part.substr(s, pos - s), v)) throw fail("expected degree after 'e'");
        if (v > n) throw Error(ErrorCode::out_of_range, "e" + std::to_string(v) + " exceeds n = " + std::to_string(n));
        d = static_cast<std::size_t>(v);
      } else if (!have) {
        throw fail("expected coefficient or e<d>");
      }
      x.lambdas[d] += neg ? -c : c;
      skip();
    }
    sys.push_back(symfun::expand(f, x));
  }
  return sys;
}

Built build_instance(Options& o) {
  const auto& c = o.cfg;
  const std::string& fam = c.family;
  Built b;
  Rng rng(c.seed);
  if (!o.instance_file.empty()) {
    std::ifstream in(o.instance_file);
    if (!in) throw Error(ErrorCode::usage, "cannot open " + o.instance_file);
    std::stringstream buf;
    buf << in.rdbuf();
    const json j = io::parse_json(buf.str(), o.instance_file);
    const auto spec = gf::FieldSpec::parse(io::detail::get<std::string>(j, "field", o.instance_file));
    std::shared_ptr<const Field> reuse;
    if (spec.k % 2 == 0) {
      auto t = FieldTower::make(spec.p, spec.k / 2);
      if (t->ext().spec() == spec) {
        b.tower = t;
        reuse = ext_of(t);
      }
    }
    auto li = io::load_instance(j, o.instance_file, reuse);
    b.field = li.field;
    b.layout = li.layout;
    b.axioms = std::move(li.axioms);
    b.family = li.family;
    return b;
  }
  const std::size_t n = c.n;
  if (fam == "linear-shifted" || fam == "sparse-shifted") {
    b.tower = FieldTower::make(c.p, c.k);
    b.field = ext_of(b.tower);
    b.layout = VarLayout::single('x', n);
    b.family = fam;
    if (!o.poly.empty()) {
      b.axioms.push_back(mvpoly::parse(o.poly, *b.field, b.layout));
      return b;
    }
    const FieldElem beta = b.tower->sample_beta(rng);
    Poly f = Poly::constant(*b.field, n, -beta);
    if (fam == "linear-shifted") {
      for (std::size_t i = 0; i < n; ++i) f += Poly::variable(*b.field, n, i).scale(b.tower->embed(b.tower->base().sample(rng)));
    } else {
      const std::size_t terms = o.terms ? o.terms : n;
      const std::size_t maxdeg = o.degree > 0 ? static_cast<std::size_t>(o.degree) : 3;
      for (std::size_t t = 0; t < terms; ++t) {
        mvpoly::ExpVector e(n, 0);
        for (std::size_t tries = 0; mvpoly::total_degree(e) == 0 && tries < 64; ++tries)
          for (std::size_t i = 0; i < n; ++i) e[i] = rng.below(n) < maxdeg ? 1 : 0;
        if (mvpoly::total_degree(e) == 0) e[rng.below(n)] = 1;
        FieldElem a = b.tower->base().sample(rng);
        while (a.is_zero()) a = b.tower->base().sample(rng);
        f.add_term(e, b.tower->embed(a));
      }
    }
    b.axioms.push_back(std::move(f));
    return b;
  }
  if (fam == "linear-base") {
    b.field = Field::make(c.p, c.k);
    b.layout = VarLayout::single('x', n);
    b.family = fam;
    if (!o.poly.empty()) {
      b.axioms.push_back(mvpoly::parse(o.poly, *b.field, b.layout));
      return b;
    }
    auto L = experiments::random_unsat_linear(*b.field, n, rng, 2000);
    if (!L)
      throw Error(ErrorCode::satisfiable_instance, "no unsatisfiable linear instance found over " + b.field->spec().to_string());
    b.axioms.push_back(std::move(*L));
    return b;
  }
  if (fam == "lifted-fixed-order" || fam == "lifted-any-order") {
    b.tower = FieldTower::make(c.p, c.k);
    b.field = ext_of(b.tower);
    const auto kind = fam == "lifted-fixed-order" ? lowerbounds::LiftedKind::fixed_order : lowerbounds::LiftedKind::any_order;
    auto li = lowerbounds::lifted_instance(kind, n, b.tower, c.seed);
    b.layout = li.instance.vars;
    b.axioms = li.instance.axioms;
    b.family = fam;
    return b;
  }
  if (fam == "symmetric") {
    b.field = Field::make(c.p, c.k);
    b.layout = VarLayout::single('x', n);
    b.family = "symmetric-system";
    b.axioms = o.poly.empty() ? experiments::random_unsat_symmetric(*b.field, n, o.m, rng)
                              : parse_symmetric(o.poly, *b.field, n);
    return b;
  }
  throw Error(ErrorCode::usage, "unknown family '" + fam + "'");
}

std::string default_constructor(const std::string& family) {
  if (family == "linear-shifted" || family == "linear") return "frobenius";
  if (family == "sparse-shifted" || family == "lifted-fixed-order" || family == "lifted-any-order" ||
      family == "lifted-subset-sum")
    return "sparse";
  if (family == "linear-base") return "lowdegree";
  if (family == "symmetric" || family == "symmetric-system") return "symmetric";
  throw Error(ErrorCode::usage, "no default constructor for family '" + family + "'; pass --constructor");
}

const FieldTower& need_tower(const Built& b, const std::string& what) {
  if (!b.tower) throw Error(ErrorCode::usage, what + " needs an instance over a tower extension field");
  return *b.tower;
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.cfg.out, std::ios::binary);
  if (!f) throw Error(ErrorCode::usage, "cannot write " + o.cfg.out);
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string certificate_text(const Built& b, const certificates::Certificate& cert) {
  std::ostringstream os;
  os << "field " << b.field->spec().to_string() << "\nconstructor " << cert.provenance.constructor << "\n";
  for (std::size_t i = 0; i < b.axioms.size(); ++i) os << "f" << i + 1 << " = " << mvpoly::format(b.axioms[i], b.layout) << "\n";
  for (std::size_t i = 0; i < cert.A.size(); ++i) os << "A" << i + 1 << " = " << mvpoly::format(cert.A[i], b.layout) << "\n";
  for (std::size_t j = 0; j < cert.B.size(); ++j)
    if (!cert.B[j].is_zero()) os << "B" << j + 1 << " = " << mvpoly::format(cert.B[j], b.layout) << "\n";
  os << "max_degree " << cert.stats.max_degree << "\ntotal_sparsity " << cert.stats.total_sparsity << "\nmodeled_depth "
     << cert.stats.modeled_depth << "\n";
  return os.str();
}

int cmd_gen(Options& o, std::ostream& out) {
  const Built b = build_instance(o);
  json j = io::instance_json(*b.field, b.layout, b.axioms, b.family);
  j["run_config"] = io::to_json(o.cfg);
  if (b.tower) j["base_field"] = b.tower->base().spec().to_string();
  if (o.cfg.format == "text") {
    std::ostringstream os;
    os << "field " << b.field->spec().to_string() << "\nvars " << b.layout.to_string() << "\n";
    for (const auto& a : b.axioms) os << mvpoly::format(a, b.layout) << "\n";
    emit(o, os.str(), out);
  } else {
    emit(o, dump(j), out);
  }
  return 0;
}

int cmd_refute(Options& o, std::ostream& out, std::ostream& err) {
  const Built b = build_instance(o);
  const std::string ctor = o.constructor.empty() ? default_constructor(b.family.empty() ? o.cfg.family : b.family) : o.constructor;
  o.cfg.extra["constructor"] = ctor;
  certificates::Certificate cert;
  if (ctor == "frobenius") {
    if (b.axioms.size() != 1) throw Error(ErrorCode::arity_mismatch, "frobenius expects one axiom");
    cert = certificates::refute_linear_frobenius(b.axioms[0], need_tower(b, "frobenius"));
  } else if (ctor == "sparse") {
    if (b.axioms.size() != 1) throw Error(ErrorCode::arity_mismatch, "sparse expects one axiom");
    cert = certificates::refute_sparse(b.axioms[0], need_tower(b, "sparse"));
  } else if (ctor == "lowdegree") {
    if (b.axioms.size() != 1) throw Error(ErrorCode::arity_mismatch, "lowdegree expects one axiom");
    cert = certificates::refute_linear_lowdegree(b.axioms[0]);
  } else if (ctor == "symmetric") {
    cert = certificates::refute_symmetric_system(b.axioms, b.field->p());
  } else if (ctor == "nullstellensatz") {
    if (o.degree >= 0) {
      auto c = certificates::solve_nullstellensatz(b.axioms, static_cast<std::size_t>(o.degree));
      if (!c) throw Error(ErrorCode::no_certificate_at_degree, "no certificate with degree <= " + std::to_string(o.degree));
      cert = std::move(*c);
    } else {
      auto c = certificates::min_degree_nullstellensatz(b.axioms, o.max_degree);
      if (!c) throw Error(ErrorCode::no_certificate_at_degree, "no certificate with degree <= " + std::to_string(o.max_degree));
      cert = std::move(c->second);
    }
  } else {
    throw Error(ErrorCode::usage, "unknown constructor '" + ctor + "'");
  }
  const auto rep = certificates::verify(b.axioms, cert);
  if (o.cfg.format == "text") {
    emit(o, certificate_text(b, cert), out);
  } else {
    json j = io::certificate_json(*b.field, b.layout, b.axioms, cert, b.family);
    j["run_config"] = io::to_json(o.cfg);
    if (b.tower) j["base_field"] = b.tower->base().spec().to_string();
    emit(o, dump(j), out);
  }
  if (!rep.valid) {
    err << dump(json{{"error", "internal"}, {"message", "constructed certificate failed verification"}});
    return 3;
  }
  return 0;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::usage, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int cmd_verify(Options& o, std::ostream& out) {
  if (o.cert_file.empty()) throw Error(ErrorCode::usage, "verify needs --cert FILE");
  auto lc = io::load_certificate(io::parse_json(read_file(o.cert_file), o.cert_file), o.cert_file);
  std::vector<Poly> axioms = lc.instance.axioms;
  if (!o.instance_file.empty()) {
    auto li = io::load_instance(io::parse_json(read_file(o.instance_file), o.instance_file), o.instance_file, lc.instance.field);
    if (!(li.layout == lc.instance.layout))
      throw Error(ErrorCode::arity_mismatch, "instance variables " + li.layout.to_string() + " differ from certificate's " +
                                                 lc.instance.layout.to_string());
    axioms = std::move(li.axioms);
  }
  const auto rep = certificates::verify(axioms, lc.cert);
  if (o.cfg.format == "text") {
    std::ostringstream os;
    os << (rep.valid ? "valid" : "INVALID") << "\nresidual " << mvpoly::format(rep.residual, lc.instance.layout)
       << "\nmax_degree " << rep.stats.max_degree << "\ntotal_sparsity " << rep.stats.total_sparsity << "\nmodeled_depth "
       << rep.stats.modeled_depth << "\n";
    emit(o, os.str(), out);
  } else {
    json j = {{"valid", rep.valid},
              {"residual", mvpoly::format(rep.residual, lc.instance.layout)},
              {"residual_terms", rep.residual.sparsity()},
              {"stats", io::to_json(rep.stats)},
              {"field", lc.instance.field->spec().to_string()},
              {"run_config", io::to_json(o.cfg)}};
    emit(o, dump(j), out);
  }
  return rep.valid ? 0 : 2;
}

std::vector<std::size_t> parse_var_list(const std::string& text, const VarLayout& layout) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove(item.begin(), item.end(), ' '), item.end());
    u64 idx = 0;
    if (item.size() < 2 || !gf::detail::parse_u64(item.substr(1), idx))
      throw Error(ErrorCode::parse_error, "bad variable name '" + item + "'");
    auto v = layout.index(item[0], idx);
    if (!v) throw Error(ErrorCode::parse_error, "unknown variable '" + item + "'");
    out.push_back(*v);
  }
  return out;
}

struct OraclePoly {
  std::shared_ptr<const void> owner;  // keeps f's field alive
  Poly f;
  VarLayout layout;
  std::vector<std::size_t> left, right, order;
  double bound = 0;  // 2^n for the lifted fixed-order instance
};

// The polynomial for rank / eval-dim / roabp-width: --poly over --vars, or
// ml of 1/(lifted instance).
OraclePoly oracle_poly(Options& o) {
  const auto& c = o.cfg;
  std::optional<OraclePoly> op;
  if (!o.poly.empty()) {
    auto field = Field::make(c.p, c.k);
    const VarLayout layout = o.vars.empty() ? VarLayout::single('x', c.n) : VarLayout::parse(o.vars);
    op = OraclePoly{field, mvpoly::parse(o.poly, *field, layout), layout, {}, {}, {}, 0};
    o.cfg.extra["poly"] = o.poly;
  } else {
    if (o.lifted != "any-order" && o.lifted != "fixed-order") throw Error(ErrorCode::usage, "--instance must be fixed-order or any-order");
    auto tower = FieldTower::make(c.p, c.k);
    const auto kind = o.lifted == "any-order" ? lowerbounds::LiftedKind::any_order : lowerbounds::LiftedKind::fixed_order;
    auto li = lowerbounds::lifted_instance(kind, c.n, tower, c.seed);
    op = OraclePoly{tower, lowerbounds::ml_inverse(li.poly()), li.instance.vars, {}, {}, {}, std::ldexp(1.0, static_cast<int>(c.n))};
    o.cfg.extra["instance"] = o.lifted;
  }
  const std::size_t nv = op->f.nvars();
  if (!o.left.empty()) {
    op->left = parse_var_list(o.left, op->layout);
  } else {
    // Default cut: the first block against the rest.
    const std::size_t first = op->layout.blocks().front().count;
    for (std::size_t i = 0; i < first && i < nv; ++i) op->left.push_back(i);
    if (op->layout.blocks().size() == 1)
      op->left.resize(nv / 2);
  }
  for (std::size_t i = 0; i < nv; ++i)
    if (std::find(op->left.begin(), op->left.end(), i) == op->left.end()) op->right.push_back(i);
  if (!o.order.empty()) {
    op->order = parse_var_list(o.order, op->layout);
  } else {
    for (std::size_t i = 0; i < nv; ++i) op->order.push_back(i);
  }
  return *op;
}

json names(const std::vector<std::size_t>& vars, const VarLayout& layout) {
  json a = json::array();
  for (auto v : vars) a.push_back(layout.name(v));
  return a;
}

int cmd_oracle(Options& o, std::ostream& out) {
  const auto& c = o.cfg;
  const std::string& which = o.oracle;
  o.cfg.extra["oracle"] = which;
  json j;
  if (which == "degree-trial") {
    o.cfg.extra["trials"] = std::to_string(o.trials);
    j = io::to_json(lowerbounds::degree_trial(c.n, *FieldTower::make(c.p, c.k), o.trials, c.seed));
  } else if (which == "scan" || which == "sparsity" || which == "top-coeff" || which == "ml-inverse") {
    auto tower = FieldTower::make(c.p, c.k);
    Rng rng(c.seed);
    auto alphas = experiments::random_base_alphas(*tower, c.n, rng);
    const FieldElem beta = tower->sample_beta(rng);
    if (which == "scan" && o.zero_index > 0) {
      if (static_cast<std::size_t>(o.zero_index) > c.n) throw Error(ErrorCode::out_of_range, "--zero exceeds n");
      alphas[static_cast<std::size_t>(o.zero_index - 1)] = tower->ext().zero();
      o.cfg.extra["zero"] = std::to_string(o.zero_index);
    }
    json al = json::array();
    for (const auto& a : alphas) al.push_back(tower->ext().format(a));
    if (which == "scan") j = io::to_json(lowerbounds::restricted_degree_scan(alphas, beta));
    if (which == "sparsity") j = io::to_json(lowerbounds::sparsity_probe(alphas, beta));
    if (which == "top-coeff") j = io::to_json(lowerbounds::top_coeff(alphas, beta));
    if (which == "ml-inverse") {
      const Poly f = lowerbounds::ml_inverse(alphas, beta);
      j = {{"ml_inverse", mvpoly::format(f)}, {"degree", f.degree()}, {"sparsity", f.sparsity()}, {"bound_degree_base", c.k * (c.p - 1)}};
    }
    j["alphas"] = al;
    j["beta"] = tower->ext().format(beta);
    j["field"] = tower->ext().spec().to_string();
  } else if (which == "numerator") {
    auto f = Field::make(c.p, c.k);
    Rng rng(c.seed);
    const FieldElem beta = f->sample(rng);
    j = {{"n", c.n}, {"beta", f->format(beta)}, {"coefficient", f->format(lowerbounds::numerator_monomial_check(*f, c.n, beta))},
         {"expected", "1"}, {"field", f->spec().to_string()}};
  } else if (which == "rank" || which == "eval-dim" || which == "roabp-width") {
    const OraclePoly op = oracle_poly(o);
    j = {{"left", names(op.left, op.layout)}, {"right", names(op.right, op.layout)}, {"field", op.f.field().spec().to_string()}};
    if (op.bound > 0) j["bound"] = op.bound;
    if (which == "rank") {
      const auto cm = lowerbounds::coefficient_matrix(op.f, op.left, op.right);
      j["rank"] = lowerbounds::rank(cm);
      j["rows"] = cm.row_labels.size();
      j["cols"] = cm.col_labels.size();
      if (!o.csv.empty()) {
        std::ofstream csv(o.csv, std::ios::binary);
        if (!csv) throw Error(ErrorCode::usage, "cannot write " + o.csv);
        csv << lowerbounds::to_csv(cm, op.layout);
      }
    } else if (which == "eval-dim") {
      j["eval_dimension"] = lowerbounds::eval_dimension(op.f, op.left, op.right);
      j["rank"] = lowerbounds::rank(lowerbounds::coefficient_matrix(op.f, op.left, op.right));
    } else {
      const auto w = lowerbounds::roabp_width(op.f, op.order);
      j = io::to_json(w);
      j["order"] = names(op.order, op.layout);
      j["field"] = op.f.field().spec().to_string();
      if (op.bound > 0) j["bound"] = op.bound;
    }
  } else {
    throw Error(ErrorCode::usage, "unknown oracle '" + which + "'");
  }
  j["run_config"] = io::to_json(o.cfg);
  emit(o, dump(j), out);
  return 0;
}

// Runs one CLI invocation twice in-process and compares the bytes.
bool in_process_determinism(std::string& detail) {
  const std::vector<std::vector<std::string>> cmds = {
      {"refute", "--family", "linear-shifted", "--p", "2", "--k", "3", "--n", "4", "--seed", "7"},
      {"oracle", "degree-trial", "--n", "4", "--p", "2", "--k", "12", "--trials", "50", "--seed", "1"}};
  for (const auto& cmd : cmds) {
    std::ostringstream a, b, ea, eb;
    const int ra = run_cli(cmd, a, ea);
    const int rb = run_cli(cmd, b, eb);
    if (ra != 0 || rb != 0 || a.str() != b.str() || a.str().empty()) {
      detail = "outputs differ for '" + cmd[0] + " " + cmd[1] + "'";
      return false;
    }
  }
  detail = "byte-identical in-process reruns of refute and oracle";
  return true;
}

int cmd_experiment(Options& o, std::ostream& out, std::ostream& err) {
  if (o.suite == "acceptance") {
    experiments::AcceptanceOptions opt;
    opt.seed = o.cfg.seed;
    opt.cli_determinism = in_process_determinism;
    const auto results = experiments::run_acceptance(opt);
    bool all = true;
    for (const auto& r : results) all = all && r.passed;
    if (o.cfg.format == "text") {
      std::ostringstream os;
      for (const auto& r : results) {
        std::string line = experiments::format_line(r);
        if (o.canonical) line = line.substr(0, line.rfind(" ("));
        os << line << "\n";
      }
      emit(o, os.str(), out);
    } else {
      json j = experiments::acceptance_json(results, o.cfg.seed, o.timings);
      j["run_config"] = io::to_json(o.cfg);
      emit(o, dump(j), out);
    }
    if (!all) err << "acceptance: at least one criterion failed\n";
    return all ? 0 : 2;
  }
  if (o.suite == "sweep-frobenius") {
    json j = experiments::sweep_frobenius(o.cfg.seed);
    j["run_config"] = io::to_json(o.cfg);
    if (o.cfg.format == "text") {
      std::ostringstream os;
      os << "p k n deg_A bound_kp total_sparsity valid\n";
      for (const auto& r : j["rows"])
        os << r["p"] << ' ' << r["k"] << ' ' << r["n"] << ' ' << r["deg_A"] << ' ' << r["bound_kp"] << ' '
           << r["total_sparsity"] << ' ' << r["valid"] << "\n";
      emit(o, os.str(), out);
    } else {
      emit(o, dump(j), out);
    }
    return 0;
  }
  throw Error(ErrorCode::usage, "unknown suite '" + o.suite + "'");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ipsforge: Nullstellensatz certificates and lower-bound oracles over finite fields"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  u64 p = 2;
  std::size_t n = 4;
  unsigned kval = 1;
  app.add_option("--p", p, "field characteristic")->default_val(2);
  auto* kopt = app.add_option("--k", kval, "base field degree (oracles default to 12)");
  app.add_option("--n", n, "number of variables / instance size")->default_val(4);
  app.add_option("--seed", o.cfg.seed, "seed for randomized runs")->default_val(1);
  app.add_option("--format", o.cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}))->default_val("json");
  app.add_option("--out", o.cfg.out, "write output to this file");
  app.add_flag("--canonical", o.canonical, "drop timings from text output");

  auto* gen = app.add_subcommand("gen", "generate an instance");
  auto* refute = app.add_subcommand("refute", "construct and self-verify a certificate");
  for (auto* sc : {gen, refute}) {
    sc->add_option("--family", o.cfg.family,
                   "linear-shifted | linear-base | sparse-shifted | lifted-fixed-order | lifted-any-order | symmetric");
    sc->add_option("--poly", o.poly, "explicit polynomial (symmetric: e.g. \"e1+e2+1\", ';' separates a system)");
    sc->add_option("--instance", o.instance_file, "instance JSON file instead of a family");
    sc->add_option("--terms", o.terms, "support size for sparse-shifted");
    sc->add_option("--m", o.m, "number of polynomials for random symmetric systems");
    sc->add_option("--degree", o.degree, "monomial degree (sparse-shifted) or fixed solver bound (nullstellensatz)");
  }
  refute->add_option("--constructor", o.constructor, "frobenius | sparse | lowdegree | nullstellensatz | symmetric");
  refute->add_option("--max-degree", o.max_degree, "largest bound tried by the minimum-degree search");

  auto* verify = app.add_subcommand("verify", "verify a certificate file");
  verify->add_option("--cert", o.cert_file, "certificate JSON")->required();
  verify->add_option("--instance", o.instance_file, "instance JSON to verify against");

  auto* oracle = app.add_subcommand("oracle", "lower-bound oracles");
  oracle->add_option("name", o.oracle,
                     "degree-trial | scan | sparsity | top-coeff | ml-inverse | numerator | rank | eval-dim | roabp-width")
      ->required();
  oracle->add_option("--trials", o.trials, "trials for degree-trial");
  oracle->add_option("--instance", o.lifted, "fixed-order | any-order lifted instance");
  oracle->add_option("--poly", o.poly, "explicit polynomial instead of a lifted instance");
  oracle->add_option("--vars", o.vars, "variable layout for --poly, e.g. x2,y2");
  oracle->add_option("--left", o.left, "left side of the partition, e.g. x1,x2");
  oracle->add_option("--order", o.order, "variable order for roabp-width");
  oracle->add_option("--csv", o.csv, "write the coefficient matrix as CSV");
  oracle->add_option("--zero", o.zero_index, "scan: set alpha_i = 0 (1-based)");

  auto* experiment = app.add_subcommand("experiment", "experiment suites");
  experiment->add_option("suite", o.suite, "acceptance | sweep-frobenius")->required();
  experiment->add_flag("--timings", o.timings, "include per-criterion seconds in JSON");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << dump(json{{"error", "usage"}, {"message", e.what()}});
    return 1;
  }
  o.cfg.p = p;
  o.cfg.n = n;
  const bool is_oracle = oracle->parsed();
  o.cfg.k = kopt->count() ? kval : (is_oracle ? 12u : 1u);
  try {
    if (o.cfg.k == 0) throw Error(ErrorCode::degenerate_tower, "k must be at least 1");
    if (gen->parsed()) {
      o.cfg.subcommand = "gen";
      if (o.cfg.family.empty() && o.instance_file.empty()) throw Error(ErrorCode::usage, "gen needs --family");
      return cmd_gen(o, out);
    }
    if (refute->parsed()) {
      o.cfg.subcommand = "refute";
      if (o.cfg.family.empty() && o.instance_file.empty()) throw Error(ErrorCode::usage, "refute needs --family or --instance");
      if (!o.poly.empty()) o.cfg.extra["poly"] = o.poly;
      if (!o.instance_file.empty()) o.cfg.extra["instance"] = o.instance_file;
      return cmd_refute(o, out, err);
    }
    if (verify->parsed()) {
      o.cfg.subcommand = "verify";
      o.cfg.extra["cert"] = o.cert_file;
      if (!o.instance_file.empty()) o.cfg.extra["instance"] = o.instance_file;
      return cmd_verify(o, out);
    }
    if (is_oracle) {
      o.cfg.subcommand = "oracle";
      return cmd_oracle(o, out);
    }
    o.cfg.subcommand = "experiment";
    o.cfg.family = o.suite;
    return cmd_experiment(o, out, err);
  } catch (const Error& e) {
    err << dump(json{{"error", error_name(e.code())}, {"message", e.what()}});
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << dump(json{{"error", "internal"}, {"message", e.what()}});
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}
