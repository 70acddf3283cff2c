#include "satotate/sampling.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

#include "satotate/charpoly.hpp"
#include "satotate/errors.hpp"
#include "satotate/moments.hpp"
#include "satotate/stgroup.hpp"

namespace satotate {

std::vector<double> SampleBatch::column(int i) const {
  if (i < 1 || i > genus) throw DomainError("coefficient index out of range");
  std::vector<double> out(count);
  for (std::size_t d = 0; d < count; ++d) out[d] = a(d, i);
  return out;
}

namespace {

struct NumericTerm {
  std::vector<int> exponents;
  double coeff;
};

struct NumericFactor {
  int length;
  std::vector<NumericTerm> trace;
  std::vector<NumericTerm> det;
};

std::vector<NumericTerm> compile(const LaurentPoly& p) {
  std::vector<NumericTerm> out;
  for (const auto& [e, c] : p.terms()) {
    out.push_back({std::vector<int>(e.begin(), e.begin() + p.nvars()), c.get_d()});
  }
  return out;
}

std::complex<double> evaluate(const std::vector<NumericTerm>& terms,
                              const std::vector<double>& theta) {
  std::complex<double> total = 0.0;
  for (const auto& t : terms) {
    double phase = 0.0;
    for (std::size_t v = 0; v < theta.size(); ++v) phase += t.exponents[v] * theta[v];
    total += std::polar(t.coeff, phase);
  }
  return total;
}

// 53 random bits -> [0, 1)
double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % n);
}

}  // namespace

SampleBatch haar_sample(const CurveFamily& family, std::uint64_t seed, std::size_t count,
                        BaseField base, int generator) {
  if (!generator) generator = default_generator(family);
  const int g = family.genus();
  const int nv = family.variable_count();
  const auto comps = components(family, base);
  std::vector<std::vector<NumericFactor>> compiled;
  for (const auto& c : comps) {
    const auto factors = cycle_factors(component_matrix(family, c.k, c.j, generator));
    if (!factors) throw InternalError("component matrix is not block monomial");
    std::vector<NumericFactor> nf;
    for (const auto& f : *factors) nf.push_back({f.length, compile(f.trace), compile(f.det)});
    compiled.push_back(std::move(nf));
  }

  SampleBatch batch;
  batch.m = family.m();
  batch.seed = seed;
  batch.count = count;
  batch.genus = g;
  batch.component.reserve(count);
  batch.values.reserve(count * g);
  std::mt19937_64 rng(seed);
  std::vector<double> theta(nv);
  std::vector<std::complex<double>> poly, next;
  for (std::size_t d = 0; d < count; ++d) {
    const std::size_t c = uniform_index(rng, comps.size());
    for (double& t : theta) t = -std::numbers::pi + 2.0 * std::numbers::pi * unit_interval(rng);
    poly.assign(1, 1.0);
    for (const auto& f : compiled[c]) {
      const std::complex<double> tr = evaluate(f.trace, theta);
      const std::complex<double> det = evaluate(f.det, theta);
      next.assign(poly.size() + 2 * f.length, 0.0);
      for (std::size_t t = 0; t < poly.size(); ++t) {
        next[t] += det * poly[t];
        next[t + f.length] -= tr * poly[t];
        next[t + 2 * f.length] += poly[t];
      }
      poly.swap(next);
    }
    batch.component.push_back(static_cast<int>(c));
    for (int i = 1; i <= g; ++i) batch.values.push_back(poly[2 * g - i].real());
  }
  return batch;
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    correction_ += (sum_ - t) + x;
  } else {
    correction_ += (x - t) + sum_;
  }
  sum_ = t;
}

namespace {

// Welford over x^n.
struct Spread {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;
  void add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }
  double standard_error() const {
    if (n < 2) return 0.0;
    return std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n));
  }
};

Rational tree_sum(std::vector<Rational>& terms, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return terms[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return tree_sum(terms, lo, mid) + tree_sum(terms, mid, hi);
}

}  // namespace

MomentEstimate sample_moment(std::span<const double> xs, int n) {
  if (n < 0) throw DomainError("moment order must be nonnegative");
  MomentEstimate est;
  est.n = n;
  est.samples = xs.size();
  if (xs.empty()) throw DomainError("no samples");
  CompensatedSum sum;
  Spread spread;
  for (double x : xs) {
    const double v = std::pow(x, n);
    sum.add(v);
    spread.add(v);
  }
  est.value = sum.value() / static_cast<double>(xs.size());
  est.standard_error = spread.standard_error();
  return est;
}

std::vector<MomentEstimate> numeric_moments(std::span<const TraceRecord> records, int i,
                                            std::span<const int> orders) {
  if (records.empty()) throw DomainError("no trace records");
  if (i < 1) throw DomainError("coefficient index must be positive");
  std::vector<Int> e;
  std::vector<double> x;
  e.reserve(records.size());
  x.reserve(records.size());
  for (const auto& r : records) {
    if (i == 1) {
      e.emplace_back(static_cast<long>(r.a));
    } else if (static_cast<int>(r.deep.size()) >= i - 1) {
      e.emplace_back(static_cast<long>(r.deep[i - 2]));
    } else {
      throw DomainError("trace record at q = " + std::to_string(r.q) + " lacks depth " +
                        std::to_string(i));
    }
    x.push_back(e.back().get_d() / std::pow(static_cast<double>(r.q), 0.5 * i));
  }
  std::vector<MomentEstimate> out;
  for (int n : orders) {
    MomentEstimate est = sample_moment(x, n);
    if ((static_cast<long>(i) * n) % 2 == 0) {
      std::vector<Rational> terms;
      terms.reserve(records.size());
      const unsigned long half = static_cast<unsigned long>(i) * n / 2;
      for (std::size_t r = 0; r < records.size(); ++r) {
        Int num, den;
        mpz_pow_ui(num.get_mpz_t(), e[r].get_mpz_t(), static_cast<unsigned long>(n));
        mpz_ui_pow_ui(den.get_mpz_t(), records[r].q, half);
        Rational t(num, den);
        t.canonicalize();
        terms.push_back(std::move(t));
      }
      Rational mean = tree_sum(terms, 0, terms.size()) / Rational(static_cast<unsigned long>(records.size()));
      est.value = mean.get_d();
      est.exact = std::move(mean);
    }
    out.push_back(std::move(est));
  }
  return out;
}

double Histogram::bin_lo(std::size_t b) const {
  return lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(counts.size());
}

double Histogram::bin_hi(std::size_t b) const { return bin_lo(b + 1); }

void Histogram::write_csv(std::ostream& out) const {
  out << "bin_lo,bin_hi,count\n";
  for (std::size_t b = 0; b < counts.size(); ++b) {
    out << bin_lo(b) << "," << bin_hi(b) << "," << counts[b] << "\n";
  }
}

Histogram make_histogram(std::span<const double> values, double lo, double hi, int bins) {
  if (bins < 1 || !(hi > lo)) throw DomainError("histogram needs bins >= 1 and hi > lo");
  Histogram h{lo, hi, std::vector<std::uint64_t>(bins, 0), 0};
  for (double v : values) {
    if (!(v >= lo && v <= hi)) {
      ++h.outside;
      continue;
    }
    auto b = static_cast<std::size_t>((v - lo) / (hi - lo) * bins);
    if (b >= h.counts.size()) b = h.counts.size() - 1;
    ++h.counts[b];
  }
  return h;
}

}  // namespace satotate
