#pragma once

// The powerops command line. `run` takes the arguments after the program name
// and writes to the given streams, so it can be driven from tests.

#include "powerops/completion.hpp"
#include "powerops/lambda_free.hpp"
#include "powerops/symrep.hpp"
#include "powerops/theta_free.hpp"
#include "powerops/verification.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace powerops::cli {

using json = nlohmann::json;

enum ExitCode { ok = 0, verification_failed = 1, usage_error = 2, unsupported = 3 };

/// Integers become JSON numbers when they fit in 64 bits, decimal strings
/// otherwise.
inline json to_json(const Int &x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

inline json to_json(const std::vector<Int> &xs) {
  json a = json::array();
  for (auto const &x : xs) a.push_back(to_json(x));
  return a;
}

inline json to_json(const IntMatrix &m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline json to_json(const GroupClass &g) {
  return {{"group", g.to_string()}, {"free_rank", g.free_rank}, {"torsion", to_json(g.torsion)}};
}

namespace detail {

inline bool is_scalar(const json &j) { return !j.is_array() && !j.is_object(); }

inline std::string scalar_text(const json &j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "none";
  return j.dump();
}

inline void pretty(std::ostream &os, const json &j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json &v = it.value();
    os << pad << it.key() << ":";
    if (is_scalar(v)) {
      os << " " << scalar_text(v) << "\n";
    } else if (v.is_array() && std::all_of(v.begin(), v.end(), is_scalar)) {
      os << " ";
      for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << scalar_text(v[i]);
      os << "\n";
    } else if (v.is_array()) {
      os << "\n";
      for (auto const &item : v) {
        if (item.is_object()) {
          os << pad << "  -\n";
          pretty(os, item, indent + 4);
        } else if (item.is_array()) {
          os << pad << "  ";
          for (std::size_t i = 0; i < item.size(); ++i) os << (i ? "\t" : "") << scalar_text(item[i]);
          os << "\n";
        } else {
          os << pad << "  " << scalar_text(item) << "\n";
        }
      }
    } else {
      os << "\n";
      pretty(os, v, indent + 2);
    }
  }
}

inline void tsv(std::ostream &os, const json &j, const std::string &prefix) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it.value().is_object()) tsv(os, it.value(), key);
    else os << key << "\t" << (is_scalar(it.value()) ? scalar_text(it.value()) : it.value().dump()) << "\n";
  }
}

inline long require_prime(long p) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime, got " + std::to_string(p));
  return p;
}

inline std::vector<std::string> labels(const std::vector<LambdaMonomial> &basis) {
  std::vector<std::string> out;
  for (auto const &m : basis) out.push_back(m.to_string());
  return out;
}

inline std::vector<std::string> labels(const std::vector<ThetaMonomial> &basis) {
  std::vector<std::string> out;
  for (auto const &m : basis) out.push_back(m.to_string());
  return out;
}

} // namespace detail

/// Renders a result document in the requested format.
inline void emit(std::ostream &os, const json &doc, const std::string &format) {
  if (format == "json") {
    os << doc.dump(2) << "\n";
  } else if (format == "tsv") {
    detail::tsv(os, doc, "");
  } else {
    detail::pretty(os, doc, 0);
  }
}

struct Options {
  std::string format = "pretty";
  std::string module, basis = "canonical", parity = "even", suite = "all";
  int n = 0, m = 1, k = 1;
  std::optional<long> p;
  std::optional<int> cap, max_k, max_m;
};

inline json document(const std::string &command, json inputs, json result, std::vector<std::string> citations) {
  return {{"command", command}, {"inputs", std::move(inputs)}, {"result", std::move(result)}, {"citations", std::move(citations)}};
}

inline json cmd_tn(const Options &o) {
  json inputs{{"n", o.n}};
  if (o.p) {
    const long p = detail::require_prime(*o.p);
    ModuleExpr m = parse_module(o.module, p);
    inputs["module"] = m.to_string();
    inputs["p"] = p;
    json result{{"group", hat_tn(m, o.n, p).to_string()}, {"completed", true}};
    return document("tn", inputs, result,
                    {"completed T_n is L0 T_n on the underlying finitely generated group",
                     "T_n of a finitely presented group from the reflexive coequalizer of free lambda-rings"});
  }
  ModuleExpr m = parse_module(o.module);
  inputs["module"] = m.to_string();
  Presentation pres = m.presentation();
  json result = to_json(tn_presented(pres, o.n));
  result["completed"] = false;
  result["generators"] = detail::labels(tn_free_basis(static_cast<int>(pres.generators), o.n));
  return document("tn", inputs, result, {"T_n of a finitely presented group from the reflexive coequalizer of free lambda-rings"});
}

inline json cmd_theta(const Options &o) {
  const long p = detail::require_prime(o.p.value_or(0));
  if (o.parity != "even" && o.parity != "odd") throw std::invalid_argument("parity must be even or odd");
  const Parity parity = o.parity == "even" ? Parity::even : Parity::odd;
  json inputs{{"p", p}, {"n", o.n}, {"parity", o.parity}};
  auto basis = free_theta_basis(p, o.n, parity);
  json result{{"basis", detail::labels(basis)}, {"rank", basis.size()}};
  std::vector<std::string> citations{
      "the free graded theta-algebra on one generator is Z_p[x, theta x, ...] (even) or an exterior algebra on y, psi y, ... (odd), with theta^i x and psi^i y of weight p^i"};
  if (!o.module.empty()) {
    if (parity == Parity::odd) throw unsupported_input("theta: a module is only supported with even parity");
    ModuleExpr m = parse_module(o.module, p);
    inputs["module"] = m.to_string();
    result["module_group"] = to_json(theta_tn_presented(p, m.presentation(), o.n));
    citations.push_back("weight n part of the free theta-algebra on a finitely generated group, over Z_p");
  }
  return document("theta", inputs, result, citations);
}

inline json cmd_transfer(const Options &o) {
  if (o.m < 1) throw std::invalid_argument("m must be at least 1");
  const long p = o.p.value_or(0);
  if (p < 1) throw std::invalid_argument("p must be at least 1");
  if (o.basis != "paper" && o.basis != "canonical") throw std::invalid_argument("basis must be paper or canonical");
  TransferMatrix t = transfer_matrix(o.m, p);
  json inputs{{"m", o.m}, {"p", p}, {"basis", o.basis}};
  json result;
  std::vector<std::string> basis;
  if (o.basis == "paper") {
    for (auto const &[name, lambda] : paper_basis(o.m)) basis.push_back(name + " " + lambda.to_string());
    result["matrix"] = to_json(in_paper_basis(t));
  } else {
    for (auto const &lambda : t.labels) basis.push_back(lambda.to_string());
    result["matrix"] = to_json(t.matrix);
  }
  result["basis"] = basis;
  std::vector<Int> poly = characteristic_polynomial(t.matrix);
  result["char_poly"] = to_json(poly);
  if (p >= 2) {
    TransferSpectrum s = transfer_spectrum(o.m, p);
    result["eigenvalues"] = to_json(s.eigenvalues);
    result["class_eigenvalues"] = to_json(s.class_eigenvalues);
    result["nilpotency_index"] = s.nilpotency_index ? json(*s.nilpotency_index) : json(nullptr);
  } else {
    result["eigenvalues"] = to_json(std::vector<Int>(t.labels.size(), Int(1)));
    result["class_eigenvalues"] = to_json(std::vector<Int>(t.labels.size(), Int(1)));
    result["nilpotency_index"] = nullptr;
  }
  std::vector<std::string> classes;
  for (auto const &c : t.labels) classes.push_back(c.to_string());
  result["classes"] = classes;
  return document("transfer", inputs, result,
                  {"t(m,p) is the sum of Ind o Res over Young subgroups indexed by ordered p-part compositions of m",
                   "t(m,p) is nilpotent mod p with eigenvalues p^{l_c} over conjugacy classes c"});
}

inline json cmd_complete(const Options &o) {
  const long p = detail::require_prime(o.p.value_or(0));
  ModuleExpr m = parse_module(o.module, p);
  CompletionResult r = l_complete(m, p);
  return document("complete", {{"expr", m.to_string()}, {"p", p}}, {{"L0", r.L0.to_string()}, {"L1", r.L1.to_string()}},
                  {"L_s M sits in 0 -> lim^1 Tor_{s+1}(Z/p^k, M) -> L_s M -> lim Tor_s(Z/p^k, M) -> 0"});
}

inline json cmd_keyconst(const Options &o) {
  const long p = detail::require_prime(o.p.value_or(0));
  if (o.n < 0) throw std::invalid_argument("n must be non-negative");
  const int max_k = o.max_k.value_or(8);
  if (max_k < 1) throw std::invalid_argument("max-k must be at least 1");
  auto k = key_constant(o.n, p, max_k);
  const Int bound = oracle::partition_numbers(o.n)[static_cast<std::size_t>(o.n)];
  return document("keyconst", {{"n", o.n}, {"p", p}, {"max_k", max_k}},
                  {{"k", k ? json(*k) : json(nullptr)}, {"partition_bound", to_json(bound)}},
                  {"least k with Z/p (x) T_m(Z) -> Z/p (x) T_m(Z/p^k) an isomorphism for all m <= n",
                   "the key constant may be taken to be the partition number p(n)"});
}

inline json cmd_adams(const Options &o) {
  if (o.k < 1) throw std::invalid_argument("k must be at least 1");
  const int cap = o.cap.value_or(o.k);
  GradedLambdaElement psi = adams(o.k, cap);
  json terms = json::array();
  for (auto const &[mono, c] : psi.terms()) terms.push_back({{"monomial", mono.to_string()}, {"coefficient", to_json(c)}});
  json result{{"psi", psi.to_string()}, {"terms", terms}};
  if (o.p) {
    const long p = detail::require_prime(*o.p);
    std::vector<Int> combo{Int(1)};
    result["theta"] = theta_from_lambda(p, combo, std::max(cap, static_cast<int>(p))).to_string();
  }
  return document("adams", {{"k", o.k}, {"cap", cap}}, result,
                  {"Newton's identity expresses psi^k in lambda^1, ..., lambda^k",
                   "theta(x) = (psi^p(x) - x^p) / p"});
}

inline std::pair<json, bool> cmd_verify(const Options &o) {
  namespace v = verification;
  auto selected = v::select(o.suite);
  v::Bounds bounds{o.max_m, o.max_k};
  json suites = json::array();
  std::vector<std::string> citations;
  bool passed = true;
  for (auto const &s : selected) {
    json checks = json::array();
    bool suite_passed = true;
    for (auto const &c : s.run(bounds)) {
      suite_passed &= c.passed;
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}, {"citation", c.citation}});
      if (std::find(citations.begin(), citations.end(), c.citation) == citations.end()) citations.push_back(c.citation);
    }
    passed &= suite_passed;
    suites.push_back({{"name", s.name}, {"criterion", s.criterion}, {"passed", suite_passed}, {"checks", checks}});
  }
  json inputs{{"suite", o.suite}};
  if (o.max_m) inputs["max_m"] = *o.max_m;
  if (o.max_k) inputs["max_k"] = *o.max_k;
  return {document("verify", inputs, {{"passed", passed}, {"suites", suites}}, citations), passed};
}

/// Runs one command line; returns the process exit status.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"powerops: power operations at height 1"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "json, tsv or pretty")->check(CLI::IsMember({"json", "tsv", "pretty"}));
  app.fallthrough();

  auto *tn = app.add_subcommand("tn", "T_n of a module");
  tn->add_option("--module", o.module, "module expression")->required();
  tn->add_option("--n", o.n, "weight")->required()->check(CLI::NonNegativeNumber);
  tn->add_option("--p", o.p, "prime; completes the result when given");

  auto *th = app.add_subcommand("theta", "free theta-algebra in one weight");
  th->add_option("--p", o.p, "prime")->required();
  th->add_option("--n", o.n, "weight")->required()->check(CLI::NonNegativeNumber);
  th->add_option("--parity", o.parity, "even or odd generator")->check(CLI::IsMember({"even", "odd"}));
  th->add_option("--module", o.module, "module expression (even parity)");

  auto *tr = app.add_subcommand("transfer", "transfer matrix t(m,p)");
  tr->add_option("--m", o.m, "symmetric group degree")->required();
  tr->add_option("--p", o.p, "number of blocks")->required();
  tr->add_option("--basis", o.basis, "paper or canonical")->check(CLI::IsMember({"paper", "canonical"}));

  auto *co = app.add_subcommand("complete", "derived p-completion");
  co->add_option("--expr", o.module, "module expression")->required();
  co->add_option("--p", o.p, "prime")->required();

  auto *kc = app.add_subcommand("keyconst", "key constant k(n)");
  kc->add_option("--n", o.n, "weight")->required()->check(CLI::NonNegativeNumber);
  kc->add_option("--p", o.p, "prime")->required();
  kc->add_option("--max-k", o.max_k, "largest k tried");

  auto *ad = app.add_subcommand("adams", "Adams operation in terms of lambda operations");
  ad->add_option("--k", o.k, "index")->required();
  ad->add_option("--cap", o.cap, "weight cap");
  ad->add_option("--p", o.p, "prime; also print theta");

  auto *ve = app.add_subcommand("verify", "run reproduction checks");
  ve->add_option("--suite", o.suite, "suite name, all, or none");
  ve->add_option("--max-m", o.max_m, "size bound for suites that take one");
  ve->add_option("--max-k", o.max_k, "largest k tried for key constants");

  std::vector<std::string> argv_storage{"powerops"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char *> argv;
  for (auto &a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &e) {
    app.exit(e, out, err);
    return ok;
  } catch (const CLI::CallForAllHelp &e) {
    app.exit(e, out, err);
    return ok;
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return usage_error;
  }

  try {
    json doc;
    int status = ok;
    if (*tn) doc = cmd_tn(o);
    else if (*th) doc = cmd_theta(o);
    else if (*tr) doc = cmd_transfer(o);
    else if (*co) doc = cmd_complete(o);
    else if (*kc) doc = cmd_keyconst(o);
    else if (*ad) doc = cmd_adams(o);
    else {
      auto [d, passed] = cmd_verify(o);
      doc = std::move(d);
      status = passed ? ok : verification_failed;
    }
    emit(out, doc, o.format);
    return status;
  } catch (const unsupported_input &e) {
    err << "unsupported input: " << e.what() << "\n";
    return unsupported;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const defect_error &e) {
    err << "internal check failed: " << e.what() << "\n";
    return verification_failed;
  }
}

} // namespace powerops::cli
