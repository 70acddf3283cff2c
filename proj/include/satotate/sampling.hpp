#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "satotate/family.hpp"
#include "satotate/lpoly.hpp"
#include "satotate/numeric.hpp"

namespace satotate {

// Draws from the Haar measure: a uniform component, then uniform angles in [-pi, pi).
struct SampleBatch {
  int m = 0;
  std::uint64_t seed = 0;
  std::size_t count = 0;
  int genus = 0;
  std::vector<int> component;  // index into components(family, base) per draw
  std::vector<double> values;  // row-major count x genus; column i-1 holds a_i

  double a(std::size_t draw, int i) const { return values[draw * genus + (i - 1)]; }
  std::vector<double> column(int i) const;
};

// Reproducible from seed on every platform: mt19937_64 with explicit bit conversions.
SampleBatch haar_sample(const CurveFamily& family, std::uint64_t seed, std::size_t count,
                        BaseField base = BaseField::Q, int generator = 0);

struct MomentEstimate {
  int n = 0;
  std::size_t samples = 0;
  double value = 0.0;
  double standard_error = 0.0;
  std::optional<Rational> exact;  // set when every term is rational
};

// Mean of x^n with the standard error sqrt(var(x^n) / N). Throws DomainError when xs is empty.
MomentEstimate sample_moment(std::span<const double> xs, int n);

// M_n = (1/N) sum (e_i / q^(i/2))^n over the records; exact when i*n is even.
// Throws DomainError on an empty stream or when records lack depth i.
std::vector<MomentEstimate> numeric_moments(std::span<const TraceRecord> records, int i,
                                            std::span<const int> orders);

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + correction_; }

 private:
  double sum_ = 0.0;
  double correction_ = 0.0;
};

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::uint64_t> counts;
  std::uint64_t outside = 0;

  double bin_lo(std::size_t b) const;
  double bin_hi(std::size_t b) const;
  // bin_lo,bin_hi,count
  void write_csv(std::ostream& out) const;
};

// The upper edge belongs to the last bin.
Histogram make_histogram(std::span<const double> values, double lo, double hi, int bins = 200);

}  // namespace satotate
