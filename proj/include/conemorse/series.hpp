#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>

namespace conemorse {

class SeriesError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Finitely supported series in lambda with nonnegative integer
/// coefficients. Zero coefficients are never stored.
class FormalSeries {
public:
  using Coefficient = std::uint64_t;

  FormalSeries() = default;
  /// Dense constructor: {c0, c1, c2, ...}.
  FormalSeries(std::initializer_list<Coefficient> dense);

  static FormalSeries monomial(Coefficient c, int degree);

  Coefficient coefficient(int degree) const;
  void set_coefficient(int degree, Coefficient c);
  /// Highest degree with a nonzero coefficient, -1 for the zero series.
  int degree() const noexcept;
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::map<int, Coefficient>& terms() const noexcept { return coeffs_; }

  /// Value at lambda = 1: the sum of all coefficients.
  Coefficient at_one() const noexcept;

  FormalSeries times_one_plus_lambda() const;

  friend FormalSeries operator+(const FormalSeries& a, const FormalSeries& b);
  bool operator==(const FormalSeries&) const = default;

  /// "0", "1", "3 + 3λ", "λ + λ^2", ...
  std::string to_string() const;

private:
  std::map<int, Coefficient> coeffs_;
};

FormalSeries series_add(const FormalSeries& a, const FormalSeries& b);

/// a - b; throws SeriesError if any coefficient would become negative.
FormalSeries series_sub_checked(const FormalSeries& a, const FormalSeries& b);

/// Q with s = (1 + lambda) Q and Q >= 0; throws SeriesError naming the
/// failing degree otherwise.
FormalSeries divide_one_plus_lambda(const FormalSeries& s);

}  // namespace conemorse
