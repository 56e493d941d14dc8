#include "conemorse/series.hpp"

#include <numeric>

namespace conemorse {

FormalSeries::FormalSeries(std::initializer_list<Coefficient> dense) {
  int d = 0;
  for (Coefficient c : dense) set_coefficient(d++, c);
}

FormalSeries FormalSeries::monomial(Coefficient c, int degree) {
  FormalSeries s;
  s.set_coefficient(degree, c);
  return s;
}

FormalSeries::Coefficient FormalSeries::coefficient(int degree) const {
  const auto it = coeffs_.find(degree);
  return it == coeffs_.end() ? 0 : it->second;
}

void FormalSeries::set_coefficient(int degree, Coefficient c) {
  if (degree < 0) throw SeriesError("negative degree");
  if (c == 0) {
    coeffs_.erase(degree);
  } else {
    coeffs_[degree] = c;
  }
}

int FormalSeries::degree() const noexcept {
  return coeffs_.empty() ? -1 : coeffs_.rbegin()->first;
}

FormalSeries::Coefficient FormalSeries::at_one() const noexcept {
  return std::accumulate(coeffs_.begin(), coeffs_.end(), Coefficient{0},
                         [](Coefficient acc, const auto& t) { return acc + t.second; });
}

FormalSeries FormalSeries::times_one_plus_lambda() const {
  FormalSeries out = *this;
  for (const auto& [d, c] : coeffs_) {
    out.set_coefficient(d + 1, out.coefficient(d + 1) + c);
  }
  return out;
}

FormalSeries operator+(const FormalSeries& a, const FormalSeries& b) {
  FormalSeries out = a;
  for (const auto& [d, c] : b.coeffs_) out.set_coefficient(d, out.coefficient(d) + c);
  return out;
}

std::string FormalSeries::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (const auto& [d, c] : coeffs_) {
    if (!out.empty()) out += " + ";
    if (d == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c);
    out += "λ";
    if (d > 1) out += "^" + std::to_string(d);
  }
  return out;
}

FormalSeries series_add(const FormalSeries& a, const FormalSeries& b) { return a + b; }

FormalSeries series_sub_checked(const FormalSeries& a, const FormalSeries& b) {
  FormalSeries out = a;
  for (const auto& [d, c] : b.terms()) {
    const auto have = a.coefficient(d);
    if (have < c) {
      throw SeriesError("not a Poincaré-type series difference (degree " +
                        std::to_string(d) + ")");
    }
    out.set_coefficient(d, have - c);
  }
  return out;
}

FormalSeries divide_one_plus_lambda(const FormalSeries& s) {
  // Synthetic division: q_j = s_j - q_{j-1}, remainder s_D - q_{D-1} must vanish.
  FormalSeries q;
  const int top = s.degree();
  FormalSeries::Coefficient prev = 0;
  for (int j = 0; j < top; ++j) {
    const auto sj = s.coefficient(j);
    if (sj < prev) {
      throw SeriesError("quotient by (1 + λ) has a negative coefficient at degree " +
                        std::to_string(j));
    }
    prev = sj - prev;
    q.set_coefficient(j, prev);
  }
  if (top >= 0 && s.coefficient(top) != prev) {
    throw SeriesError("(1 + λ) does not divide the series: remainder at degree " +
                      std::to_string(top));
  }
  return q;
}

}  // namespace conemorse
