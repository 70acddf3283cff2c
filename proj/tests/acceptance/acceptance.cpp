// One PASS/FAIL line per acceptance criterion. With arguments, runs only the named criteria.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "satotate/charpoly.hpp"
#include "satotate/lpoly.hpp"
#include "satotate/moments.hpp"
#include "satotate/sampling.hpp"
#include "satotate/serialize.hpp"
#include "satotate/stgroup.hpp"
#include "satotate/trace_cache.hpp"

using namespace satotate;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> notes;  // printed under the verdict line

  void fail(const std::string& why) {
    pass = false;
    notes.push_back("mismatch: " + why);
  }
  void note(const std::string& s) { notes.push_back(s); }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x, int digits = 4) {
  std::ostringstream o;
  o.precision(digits);
  o << x;
  return o.str();
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

// stdout of a shell command and its exit status
std::pair<std::string, int> run(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {"", -1};
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {out, WIFEXITED(status) ? WEXITSTATUS(status) : -1};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string cli() { return SATOTATE_CLI_PATH; }
std::string golden(int m) { return std::string(SATOTATE_GOLDEN_DIR) + "/gamma_m" + std::to_string(m) + ".json"; }

// ---------------------------------------------------------------------------------------------

Outcome golden_gamma() {
  Outcome r;
  double worst = 0.0;
  for (int m : {7, 10, 11, 13, 14, 17}) {
    const auto t0 = Clock::now();
    const auto [out, code] = run(cli() + " gamma --m " + std::to_string(m));
    const double dt = seconds_since(t0);
    worst = std::max(worst, dt);
    if (code != 0) r.fail("gamma --m " + std::to_string(m) + " exited " + std::to_string(code));
    if (out != read_file(golden(m))) r.fail("m=" + std::to_string(m) + " output differs from the tabulated matrix");
    if (dt >= 1.0) r.fail("m=" + std::to_string(m) + " took " + fmt(dt) + " s");
    const auto [match, mcode] = run(cli() + " gamma --m " + std::to_string(m) + " --match " + golden(m));
    const Json j = Json::parse(match, nullptr, false);
    const int a = default_generator(CurveFamily(m));
    if (mcode != 0 || j.is_discarded() || j.value("generator", 0) != a) {
      r.fail("--match for m=" + std::to_string(m) + " did not return generator " + std::to_string(a));
    }
    r.note("m=" + std::to_string(m) + " generator " + std::to_string(a) + ", " + fmt(dt, 3) + " s");
  }
  r.summary = "gamma JSON byte-identical to the tabulated matrices, m=7,10,11,13,14,17 (slowest " +
              fmt(worst, 3) + " s)";
  return r;
}

Outcome twisted_lefschetz() {
  Outcome r;
  const auto t0 = Clock::now();
  const std::vector<int> ms{5, 7, 10, 11, 13, 14, 17, 19, 22};
  std::size_t checks = 0;
  for (int m : ms) {
    const CurveFamily f(m);
    for (const auto& c : verify_family(f, default_generator(f))) {
      ++checks;
      if (c.required && !c.passed) r.fail("m=" + std::to_string(m) + " " + c.name + ": " + c.detail);
    }
    const auto [out, code] = run(cli() + " verify --m " + std::to_string(m) + " --format text");
    if (code != 0) r.fail("verify --m " + std::to_string(m) + " exited " + std::to_string(code));
  }
  const double dt = seconds_since(t0);
  if (dt >= 10.0) r.fail("total runtime " + fmt(dt) + " s");
  r.summary = "exact conjugation identities (" + std::to_string(checks) + " checks) and verify exit 0 for m=" +
              join(ms) + " in " + fmt(dt, 3) + " s";
  return r;
}

Outcome group_orders() {
  Outcome r;
  std::vector<int> ms;
  for (int p : {3, 5, 7, 11, 13, 17, 19, 23}) {
    const CurveFamily f(p);
    const int n = f.coefficient_level();
    const int g = f.genus();
    for (int a : unit_group_generators(f)) {
      const auto gamma = build_gamma(f, a);
      const std::string tag = "m=" + std::to_string(p) + " a=" + std::to_string(a);
      if (gamma.power(p - 1) != -BlockUnitaryMatrix::identity(g, n)) r.fail(tag + ": gamma^(p-1) != -Id");
      const auto half = gamma.power(g);
      bool pm_j = half.is_block_diagonal();
      for (int i = 0; i < g && pm_j; ++i) {
        const Block b = half.block(i, i);
        pm_j = b == Block::j(n) || b == -Block::j(n);
      }
      if (!pm_j) r.fail(tag + ": gamma^((p-1)/2) is not diag(+-J)");
      for (int e = 1; e < p - 1; ++e) {
        if (gamma.power(e) == -BlockUnitaryMatrix::identity(g, n)) r.fail(tag + ": -Id reached early");
      }
    }
    ms.push_back(p);
  }
  for (int m : {3, 5, 6, 7, 10, 11, 13, 14, 17, 19, 22, 23}) {
    const CurveFamily f(m);
    std::optional<BlockUnitaryMatrix> gp;
    if (f.is_even()) gp = build_gamma_prime(f);
    for (const auto& fact : component_order_facts(f, build_gamma_beta_compatible(f, default_generator(f)), gp).facts) {
      if (!fact.holds) r.fail("m=" + std::to_string(m) + " " + fact.name + ": " + fact.detail);
    }
  }
  r.summary = "gamma^(p-1) = -Id and gamma^((p-1)/2) = diag(+-J) for every generator, p=" + join(ms) +
              "; component counts for m <= 23";
  return r;
}

// (T^4 -+ x T^2 + 1)^2 after normalization: L(T) = (1 + b T^2 + q^2 T^4)^2 with 2b = c_2.
bool is_square_quartic_in_t2(const std::vector<Int>& l, u64 q) {
  if (l.size() != 9) return false;
  for (int i = 1; i < 9; i += 2) {
    if (l[i] != 0) return false;
  }
  if (l[2] % 2 != 0) return false;
  const Int b = l[2] / 2, qq = Int(static_cast<unsigned long>(q * q));
  return l[4] == b * b + 2 * qq && l[6] == 2 * b * qq && l[8] == qq * qq;
}

Outcome symbolic_charpolys() {
  Outcome r;
  const auto t0 = Clock::now();
  std::vector<std::string> ok, bad;
  auto item = [&](const std::string& name, bool passed, const std::string& detail = "") {
    (passed ? ok : bad).push_back(name);
    if (!passed) r.fail(name + (detail.empty() ? "" : ": got " + detail));
  };

  {
    const CurveFamily f(11);
    const int nv = 5;
    item("m=11 P_5 = (T^2+1)^5", char_poly_component(f, 5, 0) == CharPoly::from_integers(nv, {1, 0, 1}).pow(5));
    item("m=11 P_1 = T^10+1", char_poly_component(f, 1, 0) == CharPoly::binomial(10, LaurentPoly(nv, 1)));
    for (int k : {2, 4, 6, 8}) {
      const auto cp = char_poly_component(f, k, 0);
      bool shape = cp.coefficient(0) == LaurentPoly(nv, 1) && cp.coefficient(10) == LaurentPoly(nv, 1);
      for (int i = 1; i < 10 && shape; ++i) shape = i == 5 || cp.coefficient(i).is_zero();
      const auto& mid = cp.coefficient(5);
      if (shape && mid.term_count() == 2) {
        const auto& [e0, c0] = mid.terms()[0];
        const auto& [e1, c1] = mid.terms()[1];
        shape = c0 == c1 && (c0 == 1 || c0 == -1);
        for (int v = 0; v < nv && shape; ++v) shape = (e0[v] == 1 || e0[v] == -1) && e1[v] == -e0[v];
      } else {
        shape = false;
      }
      item("m=11 P_" + std::to_string(k) + " = (T^5 +- u)(T^5 +- ~u), u a monomial unit", shape, cp.to_string());
      if (k == 2) {
        Exponents e{};
        e[0] = 1, e[1] = -1, e[2] = 1, e[3] = 1, e[4] = 1;
        const auto w = LaurentPoly::monomial(nv, e);
        item("m=11 P_2 unit is u1*~u2*u3*u4*u5 with the tabulated generator", mid == w + w.conj(), mid.to_string());
      }
      r.note("m=11 k=" + std::to_string(k) + ": " + cp.to_string());
    }
  }

  {
    const CurveFamily f(10);
    const int nv = 2;
    const auto u1 = LaurentPoly::variable(nv, 0), u2 = LaurentPoly::variable(nv, 1);
    CharPoly p00 = CharPoly::from_integers(nv, {1});
    for (const auto& u : {u1, u2}) {
      const auto lin = CharPoly::linear(u) * CharPoly::linear(u.conj());
      p00 = p00 * lin * lin;
    }
    item("m=10 P_{0,0} = prod (T-u_i)^2 (T-~u_i)^2", char_poly_component(f, 0, 0) == p00);
    const auto t4 = CharPoly::binomial(4, LaurentPoly(nv, 1));
    bool quartic = true;
    for (auto [k, j] : std::vector<std::pair<int, int>>{{1, 0}, {3, 0}, {1, 1}, {3, 1}}) {
      quartic = quartic && char_poly_component(f, k, j) == t4 * t4;
    }
    item("m=10 P_{1,0} = P_{3,0} = P_{1,1} = P_{3,1} = (T^4+1)^2", quartic);
    item("m=10 P_{2,0} = (T^2+1)^4",
         char_poly_component(f, 2, 0) == CharPoly::from_integers(nv, {1, 0, 1}).pow(4));
    // printed: ((T^2 -+ w)(T^2 -+ ~w))^2 with w = u1 ~u2
    const auto w = u1 * u2.conj();
    const auto x = w + w.conj();
    CharPoly printed01 = CharPoly::binomial(4, LaurentPoly(nv, 1)) * CharPoly::binomial(4, LaurentPoly(nv, 1));
    printed01.set_coefficient(6, -(x * Int(2)));
    printed01.set_coefficient(4, LaurentPoly(nv, 4) + w * w + (w * w).conj());
    printed01.set_coefficient(2, -(x * Int(2)));
    CharPoly printed21 = printed01;
    printed21.set_coefficient(6, x * Int(2));
    printed21.set_coefficient(2, x * Int(2));
    const auto got01 = char_poly_component(f, 0, 1), got21 = char_poly_component(f, 2, 1);
    item("m=10 P_{0,1} as printed", got01 == printed01, got01.to_string());
    item("m=10 P_{2,1} as printed", got21 == printed21, got21.to_string());

    // Arithmetic evidence, independent of component labels: both printed j = 1 forms make the
    // L-polynomial a square of 1 + b T^2 + q^2 T^4.
    std::vector<std::string> nonsquare, pure;
    for (u64 q : sieve_primes(90)) {
      if (!is_good_prime(f, q) || q % 4 != 3) continue;
      const auto l = full_lpoly(f, q, lpoly_coeffs(f, q, 4));
      if (!is_square_quartic_in_t2(l, q)) nonsquare.push_back(std::to_string(q));
      std::vector<Int> ref{1, 0, 4, 0, 6, 0, 4, 0, 1};
      bool is_pure = true;
      for (int i = 0; i <= 8; i += 2) {
        Int s = ref[i];
        for (int t = 0; t < i / 2; ++t) s *= Int(static_cast<unsigned long>(q));
        is_pure = is_pure && l[i] == s;
      }
      if (is_pure) pure.push_back(std::to_string(q));
    }
    std::string ns, ps;
    for (const auto& s : nonsquare) ns += " " + s;
    for (const auto& s : pure) ps += " " + s;
    r.note("m=10 evidence: L(T) of C_10 is not a square of 1 + bT^2 + q^2T^4 at q =" + ns +
           " (q = 11 mod 20), so no printed j=1 form fits those Frobenius classes");
    r.note("m=10 evidence: L(T) = (1 + qT^2)^4 at q =" + ps +
           " (q = 7, 19 mod 20), matching the computed u-free P_{0,1} = (T^2+1)^4");
  }

  int families = 0;
  for (int m : {3, 5, 7, 11, 13, 17, 19, 23, 6, 10, 14, 22}) {
    const CurveFamily f(m);
    bool all = true;
    std::string which;
    for (const auto& c : check_general_forms(f)) {
      if (c.conjecture) continue;
      if (!c.passed) {
        all = false;
        which += " " + c.statement;
      }
    }
    item("m=" + std::to_string(m) + " product and (T^2+1)^g forms", all, which);
    ++families;
  }

  const double dt = seconds_since(t0);
  if (dt >= 300.0) r.fail("runtime " + fmt(dt) + " s");
  r.summary = std::to_string(ok.size()) + "/" + std::to_string(ok.size() + bad.size()) +
              " char poly identities hold (m=11 examples, m=10 examples, general forms for " +
              std::to_string(families) + " families) in " + fmt(dt, 3) + " s";
  return r;
}

// ---------------------------------------------------------------------------------------------
// Exact moment goldens

struct Printed {
  std::string label;
  int m;
  BaseField base;
  int i;
  std::vector<int> ks;  // component indices (k with j = 0), empty for the averaged sequence
  std::vector<long long> values;  // from n = 0
};

// E[a_i^n] on the identity component by averaging over an N-th root-of-unity grid with N > the
// largest exponent, evaluated straight from the eigenvalues.
long double grid_identity_moment(const CurveFamily& f, int i, int n) {
  const int nv = f.variable_count();
  const int g = f.genus();
  const int N = 2 * n + 1;
  std::vector<int> idx(nv, 0);
  long double total = 0;
  long long points = 0;
  while (true) {
    std::vector<std::complex<long double>> lambda;
    for (int k = 1; k <= g; ++k) {
      const int v = f.is_even() ? std::min(k, g + 1 - k) - 1 : k - 1;
      const long double th = 2 * std::numbers::pi_v<long double> * idx[v] / N;
      lambda.emplace_back(std::cos(th), std::sin(th));
      lambda.emplace_back(std::cos(th), -std::sin(th));
    }
    std::vector<std::complex<long double>> e(2 * g + 1, 0);
    e[0] = 1;
    for (const auto& l : lambda) {
      for (int t = 2 * g; t >= 1; --t) e[t] += e[t - 1] * l;
    }
    const long double ai = ((i % 2) ? -1.0L : 1.0L) * e[i].real();
    total += std::pow(ai, n);
    ++points;
    int v = 0;
    while (v < nv && ++idx[v] == N) idx[v++] = 0;
    if (v == nv) break;
  }
  return total / points;
}

Outcome exact_moments() {
  Outcome r;
  const auto t0 = Clock::now();
  const auto Q = BaseField::Q, Qi = BaseField::Qi;
  std::vector<Printed> printed{
      // C_11 over Q
      {"C11 mu1 k=0", 11, Q, 1, {0}, {1, 0, 10, 0, 270, 0, 10900}},
      {"C11 mu1 k!=0", 11, Q, 1, {1, 2, 3, 4, 5, 6, 7, 8, 9}, {1, 0, 0, 0}},
      {"C11 mu1 average", 11, Q, 1, {}, {1, 0, 1, 0, 27, 0, 1090}},
      {"C11 mu2 k=5", 11, Q, 2, {5}, {1, 5, 25, 125, 625, 3125, 15625}},
      {"C11 mu2 k=0", 11, Q, 2, {0}, {1, 5, 65, 1205, 28105, 751405}},
      {"C11 mu2 other k", 11, Q, 2, {1, 2, 3, 4, 6, 7, 8, 9}, {1, 0, 0, 0}},
      {"C11 mu2 average", 11, Q, 2, {}, {1, 1, 9, 133, 2873, 75453, 2200605}},
      {"C11 mu3 k=0", 11, Q, 3, {0}, {1, 0, 240, 0, 13810800, 0, 1619350617600}},
      {"C11 mu3 k!=0", 11, Q, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9}, {1, 0, 0, 0}},
      {"C11 mu3 average", 11, Q, 3, {}, {1, 0, 24, 0, 1381080, 0, 161935061760}},
      {"C11 mu4 k=5", 11, Q, 4, {5}, {1, 10, 100, 1000, 10000, 1000000}},
      {"C11 mu4 k=0", 11, Q, 4, {0}, {1, 10, 540, 45880, 4972360, 618777360, 84302436000}},
      {"C11 mu4 other k", 11, Q, 4, {1, 2, 3, 4, 6, 7, 8, 9}, {1, 0, 0, 0}},
      {"C11 mu4 average", 11, Q, 4, {}, {1, 2, 64, 4688, 498236, 61887736, 8430343600}},
      {"C11 mu5 k=2,4,6,8", 11, Q, 5, {2, 4, 6, 8}, {1, 0, 2, 0, 6, 0, 20}},
      {"C11 mu5 k=0", 11, Q, 5, {0}, {1, 0, 712, 0, 9343296, 0, 227820497920}},
      {"C11 mu5 odd k", 11, Q, 5, {1, 3, 5, 7, 9}, {1, 0, 0, 0}},
      {"C11 mu5 average", 11, Q, 5, {}, {1, 0, 72, 0, 934332, 0, 22782049800}},
      // C_10 over Q(i)
      {"C10/Qi mu1 k=0", 10, Qi, 1, {0}, {1, 0, 16, 0, 576, 0, 25600}},
      {"C10/Qi mu1 k!=0", 10, Qi, 1, {1, 2, 3}, {1, 0, 0, 0}},
      {"C10/Qi mu1 average", 10, Qi, 1, {}, {1, 0, 4, 0, 144, 0, 6400}},
      {"C10/Qi mu2 k=2", 10, Qi, 2, {2}, {1, 4, 16, 64, 256}},
      {"C10/Qi mu2 k=0", 10, Qi, 2, {0}, {1, 8, 132, 2528, 54052, 1223328}},
      {"C10/Qi mu2 k=1,3", 10, Qi, 2, {1, 3}, {1, 0, 0, 0}},
      {"C10/Qi mu2 average", 10, Qi, 2, {}, {1, 3, 37, 648, 13577, 306088, 7188580}},
      {"C10/Qi mu3 k=0", 10, Qi, 3, {0}, {1, 18, 648, 30624, 1621908, 91353608}},
      {"C10/Qi mu3 k!=0", 10, Qi, 3, {1, 2, 3}, {1, 0, 0, 0}},
      {"C10/Qi mu3 average", 10, Qi, 3, {}, {1, 0, 108, 0, 176112, 0, 372704640}},
      {"C10/Qi mu4 k=1,3", 10, Qi, 4, {1, 3}, {1, 2, 4, 8, 16, 32}},
      {"C10/Qi mu4 k=2", 10, Qi, 4, {2}, {1, 6, 36, 216, 1296, 7776}},
      {"C10/Qi mu4 k=0", 10, Qi, 4, {0}, {1, 0, 16, 0, 576, 0, 25600}},
      {"C10/Qi mu4 average", 10, Qi, 4, {}, {1, 7, 173, 7714, 405809, 22840362}},
      // C_10 over Q, first trace through order 10
      {"C10 mu1 k=j=0", 10, Q, 1, {0}, {1, 0, 16, 0, 576, 0, 25600, 0, 1254400, 0, 65028096}},
      {"C10 mu1 average", 10, Q, 1, {}, {1, 0, 2, 0, 72, 0, 3200, 0, 156800, 0, 8128512}},
  };
  // first-trace table rows (even orders 2..8)
  const std::vector<std::pair<int, std::vector<long long>>> table{
      {5, {1, 9, 100, 1225}},        {7, {1, 15, 310, 7455}},      {10, {2, 72, 3200, 156800}},
      {11, {1, 27, 1090, 55195}},    {13, {1, 33, 1660, 106785}},  {14, {2, 120, 9920, 954240}},
      {17, {1, 45, 3160, 290605}},   {19, {1, 51, 4090, 432915}},  {22, {2, 216, 34880, 7064960}}};

  MomentOptions opts;
  opts.threads = static_cast<int>(worker_count());
  std::map<std::tuple<int, BaseField, int>, MomentTable> cache;
  auto table_for = [&](int m, BaseField base, int i, int n_max) -> const MomentTable& {
    auto key = std::make_tuple(m, base, i);
    auto it = cache.find(key);
    if (it == cache.end() || it->second.n_max < n_max) {
      it = cache.insert_or_assign(key, moment_table(CurveFamily(m), base, i, n_max, opts)).first;
    }
    return it->second;
  };

  int compared = 0, matched = 0;
  std::vector<std::string> known;
  for (const auto& s : printed) {
    const int n_max = static_cast<int>(s.values.size()) - 1;
    const auto& t = table_for(s.m, s.base, s.i, 10);
    for (int n = 0; n <= n_max; ++n) {
      const Rational want(static_cast<long>(s.values[n]));
      std::vector<Rational> got;
      if (s.ks.empty()) {
        got.push_back(t.averaged[n]);
      } else {
        for (int k : s.ks) got.emplace_back(t.per_component[k][n]);
      }
      for (const auto& v : got) {
        ++compared;
        if (v == want) {
          ++matched;
          continue;
        }
        const std::string where = s.label + " n=" + std::to_string(n) + ": printed " +
                                  std::to_string(s.values[n]) + ", computed " + to_string(v);
        if (s.label == "C11 mu4 k=5" && n == 5 && v == Rational(100000)) {
          known.push_back(where + " (10^n; the printed 10000 -> 1000000 step skips 100000)");
          continue;
        }
        std::string oracle;
        if (!s.ks.empty() && s.ks.front() == 0 && s.ks.size() == 1) {
          const long double gv = grid_identity_moment(CurveFamily(s.m), s.i, n);
          oracle = "; root-of-unity grid oracle gives " + std::to_string(std::llround(gv));
        }
        r.fail(where + oracle);
      }
    }
  }
  for (const auto& [m, row] : table) {
    const auto& t = table_for(m, Q, 1, 8);
    for (int n = 2, idx = 0; n <= 8; n += 2, ++idx) {
      ++compared;
      if (t.averaged[n] == Rational(static_cast<long>(row[idx]))) {
        ++matched;
      } else {
        r.fail("first-trace row m=" + std::to_string(m) + " M_" + std::to_string(n) + ": printed " +
               std::to_string(row[idx]) + ", computed " + to_string(t.averaged[n]));
      }
    }
  }
  // averaging denominator for C_10 over Q
  {
    const auto& t = table_for(10, Q, 1, 10);
    const auto& id = t.per_component[0];
    const std::size_t count = t.components.size();
    const bool by_count = Rational(id[2]) / Rational(static_cast<long>(count)) == Rational(2);
    const bool by_16 = Rational(id[2]) / Rational(16) == Rational(2);
    known.push_back("C10 mu1 average: the " + std::to_string(count) +
                    "-component denominator 2(p-1) reproduces the printed (1,0,2,0,72,...)" +
                    (by_count ? "" : " [NOT]") + "; a denominator of 16 would give " +
                    to_string(Rational(id[2]) / Rational(16)) + (by_16 ? " as well" : " instead"));
    if (!by_count) r.fail("C10 averaging denominator");
  }
  for (const auto& k : known) r.note("flagged printed discrepancy: " + k);
  const double dt = seconds_since(t0);
  if (dt >= 600.0) r.fail("runtime " + fmt(dt) + " s");
  r.summary = std::to_string(matched) + "/" + std::to_string(compared) +
              " printed moment values reproduced exactly (C11, C10 over Q(i), C10 over Q, nine first-trace rows), " +
              std::to_string(known.size()) + " flagged, in " + fmt(dt, 3) + " s";
  return r;
}

Outcome multinomial_oracle() {
  Outcome r;
  int cells = 0;
  for (int m : {3, 5, 6, 7, 10, 11, 13}) {
    const CurveFamily f(m);
    const auto seq = component_moment_sequence(f, 0, 0, 1, 8);
    for (int n = 0; n <= 8; ++n) {
      ++cells;
      const Int conv = multinomial_mu1_moment(f, n);
      if (seq[n] != conv) {
        r.fail("m=" + std::to_string(m) + " n=" + std::to_string(n) + ": constant term " + seq[n].get_str() +
               ", convolution " + conv.get_str());
      }
    }
  }
  r.summary = "identity-component first-trace moments equal the multinomial convolution, m <= 13, n <= 8 (" +
              std::to_string(cells) + " cells)";
  return r;
}

Outcome point_count_oracle() {
  Outcome r;
  int exhaustive = 0, bounded = 0;
  for (int m : {3, 5, 7, 10, 11, 14}) {
    const CurveFamily f(m);
    for (u64 q : sieve_primes(200)) {
      if (!is_good_prime(f, q)) continue;
      ++exhaustive;
      const i64 want = static_cast<i64>(q) + 1 - oracle::brute_point_count(m, q);
      const i64 got = trace_a1(f, q);
      if (got != want) r.fail("m=" + std::to_string(m) + " q=" + std::to_string(q));
    }
    const double g = f.genus();
    for (u64 q : sieve_primes(10000)) {
      if (!is_good_prime(f, q)) continue;
      ++bounded;
      const i64 a = trace_a1(f, q);
      if (std::abs(static_cast<double>(a)) > 2 * g * std::sqrt(static_cast<double>(q))) {
        r.fail("Weil bound m=" + std::to_string(m) + " q=" + std::to_string(q));
      }
      if (q % f.p() != 1 && a != 0) r.fail("nonzero trace m=" + std::to_string(m) + " q=" + std::to_string(q));
    }
  }
  r.summary = "traces equal exhaustive counts (" + std::to_string(exhaustive) + " pairs, q <= 200); Weil bound and " +
              "vanishing off 1 mod p (" + std::to_string(bounded) + " pairs, q <= 10^4)";
  return r;
}

Outcome jacobi_norm() {
  Outcome r;
  int sums = 0;
  for (int p : {5, 7, 11}) {
    for (u64 q : sieve_primes(1000, Congruence{1, static_cast<u64>(p)})) {
      const CharacterTable chi(q, p);
      for (int g1 = 1; g1 < p; ++g1) {
        for (int g2 = 1; g2 < p; ++g2) {
          if ((g1 + g2) % p == 0) continue;
          ++sums;
          const auto j = jacobi_sum(chi, g1, g2).value;
          const auto nrm = j * j.conj();
          if (!nrm.is_rational() || nrm.rational_value() != Rational(static_cast<long>(q))) {
            r.fail("p=" + std::to_string(p) + " q=" + std::to_string(q) + " (" + std::to_string(g1) + "," +
                   std::to_string(g2) + ")");
          }
        }
      }
    }
  }
  r.summary = "J * conj(J) = q exactly for " + std::to_string(sums) + " Jacobi sums, p=5,7,11, q <= 1000";
  return r;
}

Outcome desk_equidistribution() {
  Outcome r;
  const auto t0 = Clock::now();
  const std::vector<int> orders{2, 4, 6, 8};
  for (int m : {5, 7, 10}) {
    const CurveFamily f(m);
    ScanConfig cfg;
    cfg.family = f;
    cfg.prime_bound = u64{1} << 16;
    cfg.worker_count = worker_count();
    cfg.cache_path = default_cache_path(m);
    const auto records = scan(cfg);
    const auto est = numeric_moments(records, 1, orders);
    std::string line = "m=" + std::to_string(m) + " N=" + std::to_string(records.size()) + ":";
    for (const auto& e : est) {
      const double exact = averaged_moment(f, 1, e.n).get_d();
      const double rel = std::abs(e.value - exact) / exact;
      const double tol = e.n <= 4 ? 0.10 : 0.20;
      line += " M" + std::to_string(e.n) + "=" + fmt(e.value, 6) + " (exact " + fmt(exact, 8) + ", rel " +
              fmt(rel, 2) + ", se " + fmt(e.standard_error, 3) + ")";
      if (rel > tol) {
        r.fail("m=" + std::to_string(m) + " M" + std::to_string(e.n) + " relative error " + fmt(rel, 3) + " > " +
               fmt(tol, 2));
      }
    }
    r.note(line);
  }
  const double dt = seconds_since(t0);
  if (dt >= 300.0) r.fail("runtime " + fmt(dt) + " s");
  r.summary = "numeric first-trace moments over primes <= 2^16 within 10% (n=2,4) and 20% (n=6,8), m=5,7,10, in " +
              fmt(dt, 3) + " s";
  return r;
}

Outcome monte_carlo() {
  Outcome r;
  const auto t0 = Clock::now();
  constexpr std::size_t kDraws = 1'000'000;
  int compared = 0;
  double worst = 0.0;
  for (int m : {5, 7, 10, 11}) {
    const CurveFamily f(m);
    const auto batch = haar_sample(f, 20240611u + static_cast<unsigned>(m), kDraws);
    MomentOptions opts;
    opts.threads = static_cast<int>(worker_count());
    const auto tables = moment_tables(f, BaseField::Q, f.genus(), 6, opts);
    for (int i = 1; i <= f.genus(); ++i) {
      const auto xs = batch.column(i);
      for (int n = 1; n <= 6; ++n) {
        const auto e = sample_moment(xs, n);
        const double exact = tables[i - 1].averaged[n].get_d();
        const double z = e.standard_error > 0 ? std::abs(e.value - exact) / e.standard_error
                                              : (std::abs(e.value - exact) < 1e-9 ? 0.0 : 1e9);
        worst = std::max(worst, z);
        ++compared;
        if (z > 4.0) {
          r.fail("m=" + std::to_string(m) + " a" + std::to_string(i) + " n=" + std::to_string(n) + ": sample " +
                 fmt(e.value, 8) + ", exact " + fmt(exact, 8) + ", " + fmt(z, 3) + " standard errors");
        }
      }
    }
  }
  const double dt = seconds_since(t0);
  r.summary = std::to_string(compared) + " sample moments (n <= 6, every a_i, m=5,7,10,11, 10^6 draws each) within " +
              "4 standard errors, worst " + fmt(worst, 3) + " se, in " + fmt(dt, 3) + " s";
  return r;
}

// 1 - 2T^2 + 49T^4
std::string render_poly(const std::vector<Int>& c) {
  std::string out;
  for (std::size_t s = 0; s < c.size(); ++s) {
    if (c[s] == 0) continue;
    const bool neg = c[s] < 0;
    const Int mag = neg ? Int(-c[s]) : c[s];
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    out += s == 0 ? mag.get_str() : (mag == 1 ? "" : mag.get_str()) + "T^" + std::to_string(s);
  }
  return out;
}

// Coprime components predicted to be u-free: find a small prime in the component and compare its
// L-polynomial with the predicted one.
std::string frobenius_evidence(const CurveFamily& f, int k, int j) {
  const int n = unit_group_modulus(f);
  const int a = default_generator(f);
  long t = 1;
  for (int s = 0; s < k; ++s) t = t * a % n;
  if (j) t = (n - t) % n;
  const CurveFamily base(f.p());
  for (u64 q : sieve_primes(2000)) {
    if (!is_good_prime(f, q) || static_cast<long>(q % n) != t) continue;
    if (f.is_even() && static_cast<int>(q % 4 == 3) != j) continue;
    if (feasible_depth(q, base.genus()) < static_cast<unsigned>(base.genus())) break;
    const auto small = full_lpoly(base, q, lpoly_coeffs(base, q, base.genus()));
    std::vector<Int> l(small);
    if (f.is_even()) {
      l.assign(2 * small.size() - 1, 0);
      for (std::size_t x = 0; x < small.size(); ++x) {
        for (std::size_t y = 0; y < small.size(); ++y) {
          const Int v = small[x] * small[y];
          l[x + y] += (q % 4 == 3 && y % 2) ? Int(-v) : v;
        }
      }
    }
    const int g = f.genus();
    const int mid = f.is_even() ? g : 2 * g;  // (1 + q^(g/2) T^g)^2 or 1 + q^g T^2g
    Int qpow = 1;
    for (int s = 0; s < mid / 2; ++s) qpow *= Int(static_cast<unsigned long>(q));
    const std::string got = render_poly(l);
    const Int predicted_mid = f.is_even() ? Int(2 * qpow) : qpow;
    return "q=" + std::to_string(q) + " has L(T) = " + got + "; the prediction needs coefficient " +
           predicted_mid.get_str() + " at T^" + std::to_string(mid) + " and zeros elsewhere";
  }
  return "no prime <= 2000 in this class is small enough for exhaustive L-polynomials";
}

Outcome conjecture_scan() {
  Outcome r;
  const auto t0 = Clock::now();
  int pass = 0, fail = 0, skipped = 0, moment_pass = 0;
  for (int m : {3, 5, 6, 7, 10, 11, 13, 14, 17, 19, 22, 23}) {
    const CurveFamily f(m);
    MomentOptions opts;
    opts.threads = static_cast<int>(worker_count());
    for (const auto& c : check_conjectures(f, 6, opts)) {
      const std::string tag = c.name + " m=" + std::to_string(m) + " k=" + std::to_string(c.k) + " j=" +
                              std::to_string(c.j);
      if (c.status == "pass") {
        ++pass;
        if (c.name == "coprime-moments") ++moment_pass;
      } else if (c.status == "skipped") {
        ++skipped;
        r.note("skipped " + tag + " (char poly premise false)");
      } else {
        ++fail;
        r.fail(tag + ": " + c.detail);
        if (c.name == "coprime-charpoly") r.note("  evidence for " + tag + ": " + frobenius_evidence(f, c.k, c.j));
      }
    }
  }
  const double dt = seconds_since(t0);
  r.summary = std::to_string(pass) + " pass (" + std::to_string(moment_pass) + " vanishing-moment checks), " +
              std::to_string(fail) + " fail, " + std::to_string(skipped) +
              " skipped for coprime components, m <= 23, in " + fmt(dt, 3) + " s";
  return r;
}

struct Criterion {
  std::string id;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"golden-gamma", golden_gamma},
      {"twisted-lefschetz", twisted_lefschetz},
      {"group-orders", group_orders},
      {"symbolic-charpolys", symbolic_charpolys},
      {"exact-moments", exact_moments},
      {"multinomial-oracle", multinomial_oracle},
      {"point-count-oracle", point_count_oracle},
      {"jacobi-norm", jacobi_norm},
      {"desk-equidistribution", desk_equidistribution},
      {"monte-carlo", monte_carlo},
      {"conjecture-scan", conjecture_scan},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> wanted(argv + 1, argv + argc);
  bool all_pass = true;
  int ran = 0;
  for (const auto& c : criteria()) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    ++ran;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("threw: ") + e.what();
    }
    all_pass = all_pass && o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.id << ": " << o.summary << "\n";
    for (const auto& n : o.notes) std::cout << "    " << n << "\n";
    std::cout.flush();
  }
  if (ran == 0) {
    std::cerr << "unknown criterion\n";
    return 2;
  }
  return all_pass ? 0 : 1;
}
