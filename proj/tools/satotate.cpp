#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "satotate/charpoly.hpp"
#include "satotate/errors.hpp"
#include "satotate/lpoly.hpp"
#include "satotate/moments.hpp"
#include "satotate/sampling.hpp"
#include "satotate/serialize.hpp"
#include "satotate/stgroup.hpp"
#include "satotate/trace_cache.hpp"

using namespace satotate;

namespace {

struct Common {
  int m = 0;
  std::string out;
  std::string format = "json";
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  int generator = 0;
};

void emit(const Common& c, const std::string& text) {
  if (c.out.empty() || c.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary | std::ios::trunc);
  if (!f) throw DomainError("cannot open output file " + c.out);
  f << text;
  if (!f) throw InternalError("write failed for " + c.out);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void require_format(const Common& c, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (c.format == a) return;
  }
  std::string list;
  for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
  throw DomainError("--format must be one of: " + list);
}

int generator_for(const CurveFamily& f, const Common& c) {
  return c.generator ? c.generator : default_generator(f);
}

std::filesystem::path cache_path_for(const CurveFamily& f, const std::string& flag) {
  return flag.empty() ? default_cache_path(f.m()) : std::filesystem::path(flag);
}

// ---- gamma

struct GammaArgs {
  std::string matrix = "gamma";
  std::string match;
};

int run_gamma(const Common& c, const GammaArgs& a) {
  const CurveFamily f(c.m);
  if (!a.match.empty()) {
    std::ifstream in(a.match);
    if (!in) throw DomainError("cannot read " + a.match);
    Json target;
    try {
      target = Json::parse(in);
    } catch (const nlohmann::json::exception& ex) {
      throw DomainError(std::string("malformed JSON in ") + a.match + ": " + ex.what());
    }
    const auto found = find_generator(f, block_matrix_from_json(target, f.coefficient_level()));
    if (!found) throw DomainError("no generator reproduces " + a.match);
    Json out;
    out["m"] = f.m();
    out["generator"] = *found;
    emit(c, dump(out));
    return 0;
  }
  const int gen = generator_for(f, c);
  BlockUnitaryMatrix m(f.genus(), f.coefficient_level());
  if (a.matrix == "gamma") {
    m = build_gamma(f, gen);
  } else if (a.matrix == "gamma-adjusted") {
    m = build_gamma_beta_compatible(f, gen);
  } else if (a.matrix == "gamma-prime" || a.matrix == "gamma-prime-printed" || a.matrix == "beta") {
    if (!f.is_even()) throw DomainError(a.matrix + " exists only for m = 2p");
    m = a.matrix == "beta"          ? build_beta(f)
        : a.matrix == "gamma-prime" ? build_gamma_prime(f)
                                    : build_printed_gamma_prime(f);
  } else if (a.matrix == "alpha") {
    m = build_alpha(f);
  } else {
    throw DomainError("unknown --matrix " + a.matrix);
  }
  require_format(c, {"json", "text"});
  emit(c, c.format == "json" ? dump(to_json(m)) : m.to_string());
  return 0;
}

// ---- verify

int run_verify(const Common& c) {
  const CurveFamily f(c.m);
  const int gen = generator_for(f, c);
  const auto checks = verify_family(f, gen);
  std::optional<BlockUnitaryMatrix> gp;
  if (f.is_even()) gp = build_gamma_prime(f);
  const auto order = component_order_facts(f, build_gamma_beta_compatible(f, gen), gp);
  bool ok = order.all_hold();
  for (const auto& ch : checks) ok = ok && (ch.passed || !ch.required);
  require_format(c, {"json", "text"});
  if (c.format == "json") {
    Json out;
    out["m"] = f.m();
    out["generator"] = gen;
    out["passed"] = ok;
    out["checks"] = to_json(checks);
    out["order"] = to_json(order);
    emit(c, dump(out));
  } else {
    std::ostringstream s;
    for (const auto& ch : checks) {
      s << (ch.passed ? "ok   " : ch.required ? "FAIL " : "note ") << ch.name;
      if (!ch.detail.empty()) s << ": " << ch.detail;
      s << "\n";
    }
    for (const auto& fact : order.facts) {
      s << (fact.holds ? "ok   " : "FAIL ") << fact.name;
      if (!fact.detail.empty()) s << ": " << fact.detail;
      s << "\n";
    }
    s << (ok ? "verified" : "verification failed") << " m=" << f.m() << " generator=" << gen << "\n";
    emit(c, s.str());
  }
  if (!ok) std::cerr << "satotate: verification failed for m=" << f.m() << "\n";
  return ok ? 0 : 2;
}

// ---- charpoly

struct CharPolyArgs {
  std::optional<int> k;
  std::optional<int> j;
  std::string base_field = "Q";
};

int run_charpoly(const Common& c, const CharPolyArgs& a) {
  const CurveFamily f(c.m);
  const int gen = generator_for(f, c);
  std::vector<Component> comps;
  if (a.k) {
    comps.push_back({*a.k, a.j.value_or(0)});
  } else {
    comps = components(f, parse_base_field(a.base_field));
    if (a.j) std::erase_if(comps, [&](const Component& x) { return x.j != *a.j; });
  }
  require_format(c, {"json", "text"});
  Json arr = Json::array();
  std::ostringstream text;
  for (const auto& comp : comps) {
    const CharPoly cp = char_poly_component(f, comp.k, comp.j, gen);
    if (c.format == "json") {
      Json entry;
      entry["k"] = comp.k;
      entry["j"] = comp.j;
      entry["charpoly"] = to_json(cp);
      arr.push_back(std::move(entry));
    } else {
      text << "P_{" << comp.label() << "} = " << cp.to_string() << "\n";
    }
  }
  if (c.format == "json") {
    Json out;
    out["m"] = f.m();
    out["generator"] = gen;
    out["components"] = std::move(arr);
    emit(c, dump(out));
  } else {
    emit(c, text.str());
  }
  return 0;
}

// ---- moments-exact

struct MomentsArgs {
  int i = 1;
  int nmax = 10;
  std::string base_field = "Q";
  std::size_t term_budget = kDefaultTermBudget;
};

int run_moments_exact(const Common& c, const MomentsArgs& a) {
  const CurveFamily f(c.m);
  MomentOptions opt;
  opt.generator = c.generator;
  opt.threads = static_cast<int>(c.threads);
  opt.term_budget = a.term_budget;
  const MomentTable t = moment_table(f, parse_base_field(a.base_field), a.i, a.nmax, opt);
  require_format(c, {"json", "csv", "text"});
  if (c.format == "json") {
    emit(c, dump(to_json(t)));
  } else if (c.format == "csv") {
    std::ostringstream s;
    write_csv(s, t);
    emit(c, s.str());
  } else {
    std::ostringstream s;
    s << "M[mu_" << t.i << "] = (";
    for (int n = 0; n <= t.n_max; ++n) s << (n ? ", " : "") << to_string(t.averaged[n]);
    s << ")\n";
    for (std::size_t k = 0; k < t.components.size(); ++k) {
      s << "  " << t.components[k].label() << ": (";
      for (int n = 0; n <= t.n_max; ++n) s << (n ? ", " : "") << to_string(t.per_component[k][n]);
      s << ")\n";
    }
    emit(c, s.str());
  }
  return 0;
}

// ---- scan and the consumers of scanned records

struct ScanArgs {
  u64 bound = 0;
  unsigned depth = 1;
  std::string cache;
  bool no_cache = false;
  std::optional<u64> residue;
  std::optional<u64> modulus;
};

std::vector<TraceRecord> collect(const Common& c, const CurveFamily& f, const ScanArgs& a,
                                 ScanStats* stats) {
  ScanConfig cfg;
  cfg.family = f;
  cfg.prime_bound = a.bound;
  cfg.depth = a.depth;
  cfg.worker_count = c.threads;
  if (!a.no_cache) cfg.cache_path = cache_path_for(f, a.cache);
  return scan(cfg, stats);
}

std::vector<TraceRecord> cached_records(const CurveFamily& f, const ScanArgs& a) {
  if (a.no_cache) throw DomainError("--no-cache needs --bound to compute records");
  return TraceCache::load(cache_path_for(f, a.cache), f.m()).records();
}

void apply_congruence(std::vector<TraceRecord>& records, const ScanArgs& a) {
  if (a.residue.has_value() != a.modulus.has_value()) {
    throw DomainError("--residue and --modulus go together");
  }
  if (!a.modulus) return;
  if (*a.modulus == 0) throw DomainError("--modulus must be positive");
  const Congruence cong{*a.residue % *a.modulus, *a.modulus};
  std::erase_if(records, [&](const TraceRecord& r) { return !cong.matches(r.q); });
}

int run_scan(const Common& c, const ScanArgs& a) {
  const CurveFamily f(c.m);
  if (a.bound < 3) throw DomainError("--bound must be at least 3");
  ScanStats stats;
  auto records = collect(c, f, a, &stats);
  apply_congruence(records, a);
  require_format(c, {"json", "csv"});
  if (c.format == "csv") {
    std::ostringstream s;
    s << "q,a1";
    for (unsigned d = 2; d <= a.depth; ++d) s << ",e" << d;
    s << "\n";
    for (const auto& r : records) {
      s << r.q << "," << r.a;
      for (i64 e : r.deep) s << "," << e;
      s << "\n";
    }
    emit(c, s.str());
    return 0;
  }
  Json out;
  out["m"] = f.m();
  out["bound"] = a.bound;
  out["depth"] = a.depth;
  out["primes"] = records.size();
  out["computed"] = stats.computed;
  out["reused"] = stats.reused;
  out["cache"] = a.no_cache ? "" : cache_path_for(f, a.cache).string();
  emit(c, dump(out));
  return 0;
}

struct NumericArgs {
  std::vector<int> orders{2, 4, 6, 8};
  int i = 1;
};

int run_moments_numeric(const Common& c, const ScanArgs& a, const NumericArgs& n) {
  const CurveFamily f(c.m);
  ScanArgs sa = a;
  if (n.i > 1) sa.depth = std::max<unsigned>(sa.depth, n.i);
  std::vector<TraceRecord> records = a.bound ? collect(c, f, sa, nullptr) : cached_records(f, sa);
  apply_congruence(records, a);
  if (records.empty()) throw DomainError("no trace records; run scan first or pass --bound");
  const auto est = numeric_moments(records, n.i, n.orders);
  require_format(c, {"json", "text"});
  if (c.format == "json") {
    Json out;
    out["m"] = f.m();
    out["i"] = n.i;
    out["N"] = records.size();
    out["max_prime"] = records.back().q;
    Json arr = Json::array();
    for (const auto& e : est) arr.push_back(to_json(e));
    out["moments"] = std::move(arr);
    emit(c, dump(out));
  } else {
    std::ostringstream s;
    for (const auto& e : est) {
      s << "M_" << e.n << " = " << e.value << " +- " << e.standard_error << " (N=" << e.samples
        << ")\n";
    }
    emit(c, s.str());
  }
  return 0;
}

struct HistogramArgs {
  std::string source = "sample";
  std::size_t count = 1000000;
  std::uint64_t seed = 1;
  int bins = 200;
  int i = 1;
};

int run_histogram(const Common& c, const ScanArgs& a, const HistogramArgs& h) {
  const CurveFamily f(c.m);
  if (h.i < 1 || h.i > f.genus()) throw DomainError("--i out of range");
  std::vector<double> values;
  if (h.source == "sample") {
    values = haar_sample(f, h.seed, h.count, BaseField::Q, c.generator).column(h.i);
  } else if (h.source == "scan") {
    ScanArgs sa = a;
    sa.depth = std::max<unsigned>(sa.depth, h.i);
    auto records = a.bound ? collect(c, f, sa, nullptr) : cached_records(f, sa);
    apply_congruence(records, a);
    for (const auto& r : records) {
      if (h.i > 1 && static_cast<int>(r.deep.size()) < h.i - 1) {
        throw DomainError("cached record lacks depth " + std::to_string(h.i));
      }
      const double e = static_cast<double>(h.i == 1 ? r.a : r.deep[h.i - 2]);
      values.push_back(e / std::pow(static_cast<double>(r.q), 0.5 * h.i));
    }
  } else {
    throw DomainError("--source must be sample or scan");
  }
  const double edge = binomial(2 * f.genus(), h.i).get_d();
  require_format(c, {"csv"});
  std::ostringstream s;
  make_histogram(values, -edge, edge, h.bins).write_csv(s);
  emit(c, s.str());
  return 0;
}

// ---- check-conjectures

struct ConjectureArgs {
  std::vector<int> ms;
  int m_min = 3;
  int m_max = 23;
  int nmax = 6;
  bool strict = false;
};

int run_check_conjectures(Common c, const ConjectureArgs& a) {
  std::vector<int> ms = a.ms;
  if (c.m) ms.push_back(c.m);
  if (ms.empty()) {
    for (int m = a.m_min; m <= a.m_max; ++m) {
      const int p = m % 2 ? m : m / 2;
      if (p >= 3 && is_prime(static_cast<u64>(p))) ms.push_back(m);
    }
  }
  MomentOptions opt;
  opt.generator = c.generator;
  Json rows = Json::array();
  std::ostringstream text;
  bool all = true;
  for (int m : ms) {
    const CurveFamily f(m);
    for (const auto& r : check_conjectures(f, a.nmax, opt)) {
      all = all && r.status != "fail";
      Json j;
      j["check"] = r.name;
      j["m"] = r.m;
      j["k"] = r.k;
      j["j"] = r.j;
      j["status"] = r.status;
      if (!r.detail.empty()) j["detail"] = r.detail;
      rows.push_back(std::move(j));
      text << r.status << " " << r.name << " m=" << r.m << " k=" << r.k << " j=" << r.j;
      if (!r.detail.empty()) text << "  " << r.detail;
      text << "\n";
    }
  }
  require_format(c, {"json", "text"});
  if (c.format == "json") {
    Json out;
    out["all_pass"] = all;
    out["results"] = std::move(rows);
    emit(c, dump(out));
  } else {
    emit(c, text.str());
  }
  return all || !a.strict ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sato-Tate groups and moment statistics of y^2 = x^m - 1"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub, bool need_m) {
    auto* opt = sub->add_option("--m", common.m, "family exponent, p or 2p");
    if (need_m) opt->required();
    sub->add_option("--out", common.out, "output path (default stdout)");
    sub->add_option("--format", common.format, "json, csv or text");
    sub->add_option("--threads", common.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--generator", common.generator, "generator a of the unit group");
  };

  GammaArgs gamma_args;
  auto* gamma = app.add_subcommand("gamma", "print a group generator as a block matrix");
  add_common(gamma, true);
  gamma->add_option("--matrix", gamma_args.matrix,
                    "gamma, gamma-adjusted, gamma-prime, gamma-prime-printed, alpha, beta");
  auto* match = gamma->add_option("--match", gamma_args.match,
                                  "JSON block matrix; report the generator reproducing it");
  match->excludes(gamma->get_option("--generator"));

  auto* verify = app.add_subcommand("verify", "check twisted Lefschetz and group-order facts");
  add_common(verify, true);

  CharPolyArgs cp_args;
  auto* charpoly = app.add_subcommand("charpoly", "characteristic polynomials per component");
  add_common(charpoly, true);
  auto* kopt = charpoly->add_option("--k", cp_args.k, "component exponent k");
  charpoly->add_option("--j", cp_args.j, "gamma' exponent j");
  charpoly->add_option("--base-field", cp_args.base_field, "Q or Qi")->excludes(kopt);

  MomentsArgs mo_args;
  auto* moments = app.add_subcommand("moments-exact", "exact Haar moments of a_i");
  add_common(moments, true);
  moments->add_option("--i", mo_args.i, "coefficient index");
  moments->add_option("--nmax", mo_args.nmax, "largest moment order")->check(CLI::NonNegativeNumber);
  moments->add_option("--base-field", mo_args.base_field, "Q or Qi");
  moments->add_option("--term-budget", mo_args.term_budget, "Laurent term limit per power");

  ScanArgs scan_args;
  auto add_scan = [&](CLI::App* sub, bool need_bound) {
    auto* b = sub->add_option("--bound", scan_args.bound, "prime bound");
    if (need_bound) b->required();
    sub->add_option("--depth", scan_args.depth, "L-polynomial coefficients per prime");
    auto* cache = sub->add_option("--cache", scan_args.cache, "cache file");
    sub->add_flag("--no-cache", scan_args.no_cache, "do not read or write the cache")->excludes(cache);
    sub->add_option("--residue", scan_args.residue, "keep primes q = residue mod modulus");
    sub->add_option("--modulus", scan_args.modulus, "modulus for --residue");
  };
  auto* scan_cmd = app.add_subcommand("scan", "Frobenius traces over primes, cached");
  add_common(scan_cmd, true);
  add_scan(scan_cmd, true);

  NumericArgs num_args;
  auto* numeric = app.add_subcommand("moments-numeric", "moments of scanned normalized traces");
  add_common(numeric, true);
  add_scan(numeric, false);
  numeric->add_option("--n", num_args.orders, "moment orders");
  numeric->add_option("--i", num_args.i, "coefficient index");

  HistogramArgs hist_args;
  auto* histogram = app.add_subcommand("histogram", "CSV histogram of sampled or scanned a_i");
  add_common(histogram, true);
  add_scan(histogram, false);
  histogram->add_option("--source", hist_args.source, "sample or scan");
  histogram->add_option("--count", hist_args.count, "number of Haar draws");
  histogram->add_option("--seed", hist_args.seed, "random seed");
  histogram->add_option("--bins", hist_args.bins, "number of bins");
  histogram->add_option("--i", hist_args.i, "coefficient index");

  ConjectureArgs cj_args;
  auto* conj = app.add_subcommand("check-conjectures", "pass/fail matrix for coprime components");
  add_common(conj, false);
  conj->add_option("--ms", cj_args.ms, "families to check");
  conj->add_option("--m-min", cj_args.m_min, "smallest m of the range");
  conj->add_option("--m-max", cj_args.m_max, "largest m of the range");
  conj->add_option("--nmax", cj_args.nmax, "largest moment order for the zero-moment check");
  conj->add_flag("--strict", cj_args.strict, "exit 2 when a check fails");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (histogram->parsed() && histogram->count("--format") == 0) common.format = "csv";
  try {
    if (gamma->parsed()) return run_gamma(common, gamma_args);
    if (verify->parsed()) return run_verify(common);
    if (charpoly->parsed()) return run_charpoly(common, cp_args);
    if (moments->parsed()) return run_moments_exact(common, mo_args);
    if (scan_cmd->parsed()) return run_scan(common, scan_args);
    if (numeric->parsed()) return run_moments_numeric(common, scan_args, num_args);
    if (histogram->parsed()) return run_histogram(common, scan_args, hist_args);
    if (conj->parsed()) return run_check_conjectures(common, cj_args);
  } catch (const DomainError& e) {
    std::cerr << "satotate: " << e.what() << "\n";
    return 1;
  } catch (const InternalError& e) {
    std::cerr << "satotate: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "satotate: internal error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
