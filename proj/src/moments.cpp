#include "satotate/moments.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "satotate/charpoly.hpp"
#include "satotate/errors.hpp"
#include "satotate/laurent.hpp"
#include "satotate/stgroup.hpp"

namespace satotate {

Int u1_moment(int n) {
  if (n < 0) throw DomainError("moment order must be nonnegative");
  return central_binomial(static_cast<unsigned long>(n));
}

Int u1_2_moment(int n) {
  Int scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(n));
  return scale * u1_moment(n);
}

std::string Component::label() const { return std::to_string(k) + "," + std::to_string(j); }

std::vector<Component> components(const CurveFamily& family, BaseField base) {
  if (base == BaseField::Qi && !family.is_even()) {
    throw DomainError("base field Qi applies only to m = 2p");
  }
  const int jmax = family.is_even() && base == BaseField::Q ? 1 : 0;
  std::vector<Component> out;
  for (int j = 0; j <= jmax; ++j) {
    for (int k = 0; k <= family.p() - 2; ++k) out.push_back({k, j});
  }
  return out;
}

namespace {

void check_order(int n) {
  if (n < 0) throw DomainError("moment order must be nonnegative");
}

void check_index(const CurveFamily& family, int i) {
  if (i < 1 || i > family.genus()) {
    throw DomainError("coefficient index i must lie in 1.." + std::to_string(family.genus()));
  }
}

int resolve_generator(const CurveFamily& family, const MomentOptions& options) {
  return options.generator ? options.generator : default_generator(family);
}

// CT(c^n) for n = 0..n_max using CT(c^a * c^b) with a + b = n.
std::vector<Int> moment_sequence(const LaurentPoly& c, int n_max, std::size_t budget) {
  std::vector<Int> out(n_max + 1);
  out[0] = 1;
  if (c.is_zero()) return out;
  if (c.is_constant()) {
    const Int v = c.constant_term();
    for (int n = 1; n <= n_max; ++n) out[n] = out[n - 1] * v;
    return out;
  }
  std::vector<LaurentPoly> powers{LaurentPoly(c.nvars(), 1), c};
  const int half = (n_max + 1) / 2;
  while (static_cast<int>(powers.size()) <= half) {
    powers.push_back(multiply(powers.back(), c, budget));
  }
  for (int n = 1; n <= n_max; ++n) {
    out[n] = constant_term_of_product(powers[n / 2], powers[n - n / 2]);
  }
  return out;
}

template <class F>
void parallel_for(std::size_t count, int threads, F&& body) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(count, threads > 0 ? threads : 1));
  if (workers == 1) {
    for (std::size_t t = 0; t < count; ++t) body(t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < count; t = next++) {
          try {
            body(t);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::vector<Int> component_moment_sequence(const CurveFamily& family, int k, int j, int i,
                                           int n_max, const MomentOptions& options) {
  check_index(family, i);
  check_order(n_max);
  const CharPoly cp = char_poly_component(family, k, j, resolve_generator(family, options));
  return moment_sequence(cp.a(i), n_max, options.term_budget);
}

Int component_moment(const CurveFamily& family, int k, int j, int i, int n,
                     const MomentOptions& options) {
  return component_moment_sequence(family, k, j, i, n, options).back();
}

std::vector<MomentTable> moment_tables(const CurveFamily& family, BaseField base, int i_max,
                                       int n_max, const MomentOptions& options) {
  check_index(family, i_max);
  check_order(n_max);
  const int generator = resolve_generator(family, options);
  const std::vector<Component> comps = components(family, base);
  std::vector<MomentTable> tables(i_max);
  for (int i = 1; i <= i_max; ++i) {
    MomentTable& t = tables[i - 1];
    t.m = family.m();
    t.base_field = base;
    t.i = i;
    t.n_max = n_max;
    t.generator = generator;
    t.components = comps;
    t.per_component.assign(comps.size(), {});
  }
  // one task per (component, i) cell; the char poly is shared across a component's cells
  std::vector<CharPoly> polys(comps.size(), CharPoly(0, family.variable_count()));
  parallel_for(comps.size(), options.threads, [&](std::size_t c) {
    polys[c] = char_poly_component(family, comps[c].k, comps[c].j, generator);
  });
  const std::size_t cells = comps.size() * static_cast<std::size_t>(i_max);
  parallel_for(cells, options.threads, [&](std::size_t cell) {
    const std::size_t c = cell % comps.size();
    const int i = static_cast<int>(cell / comps.size()) + 1;
    tables[i - 1].per_component[c] = moment_sequence(polys[c].a(i), n_max, options.term_budget);
  });
  for (MomentTable& t : tables) {
    t.averaged.assign(n_max + 1, Rational(0));
    for (int n = 0; n <= n_max; ++n) {
      Int total = 0;
      for (const auto& seq : t.per_component) total += seq[n];
      t.averaged[n] = Rational(total, static_cast<unsigned long>(comps.size()));
      t.averaged[n].canonicalize();
    }
  }
  return tables;
}

MomentTable moment_table(const CurveFamily& family, BaseField base, int i, int n_max,
                         const MomentOptions& options) {
  check_index(family, i);
  auto tables = moment_tables(family, base, i, n_max, options);
  return std::move(tables.back());
}

Rational averaged_moment(const CurveFamily& family, int i, int n, BaseField base,
                         const MomentOptions& options) {
  return moment_table(family, base, i, n, options).averaged.at(n);
}

namespace {

// Sum over compositions alpha of n into `parts` parts of multinomial * prod M_alpha[s].
Int composition_sum(int parts, int n, const std::vector<Int>& s_moments) {
  // current[t] after r rounds: the same sum for t into r parts; adding a part is a binomial convolution
  std::vector<Int> current(n + 1, 0);
  current[0] = 1;
  for (int r = 0; r < parts; ++r) {
    std::vector<Int> next(n + 1, 0);
    for (int t = 0; t <= n; ++t) {
      for (int a = 0; a <= t; ++a) {
        if (s_moments[a] == 0 || current[t - a] == 0) continue;
        next[t] += binomial(t, a) * s_moments[a] * current[t - a];
      }
    }
    current = std::move(next);
  }
  return current[n];
}

}  // namespace

Int multinomial_mu1_moment(const CurveFamily& family, int n) {
  check_order(n);
  std::vector<Int> s(n + 1);
  for (int a = 0; a <= n; ++a) s[a] = u1_moment(a);
  const int parts = family.variable_count();
  Int total = composition_sum(parts, n, s);
  if (family.is_even()) {
    Int scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(n));
    total *= scale;
  }
  return total;
}


std::vector<ConjectureResult> check_conjectures(const CurveFamily& family, int n_max,
                                                const MomentOptions& options) {
  check_order(n_max);
  const int generator = resolve_generator(family, options);
  const int g = family.genus();
  std::vector<ConjectureResult> out;
  for (const FormCheck& f : check_general_forms(family, generator)) {
    if (!f.conjecture) continue;
    out.push_back({"coprime-charpoly", family.m(), f.k, f.j, f.passed ? "pass" : "fail",
                   f.passed ? "" : f.detail});
    ConjectureResult moments{"coprime-moments", family.m(), f.k, f.j, "skipped", ""};
    if (!f.passed) {
      moments.detail = "char poly premise failed";
      out.push_back(std::move(moments));
      continue;
    }
    moments.status = "pass";
    const CharPoly cp = char_poly_component(family, f.k, f.j, generator);
    for (int i = 1; i < g && moments.status == "pass"; ++i) {
      const auto seq = moment_sequence(cp.a(i), n_max, options.term_budget);
      for (int n = 1; n <= n_max; ++n) {
        if (seq[n] != 0) {
          moments.status = "fail";
          moments.detail = "M_" + std::to_string(n) + " of a_" + std::to_string(i) + " = " +
                           to_string(seq[n]);
          break;
        }
      }
    }
    out.push_back(std::move(moments));
  }
  return out;
}

}  // namespace satotate
