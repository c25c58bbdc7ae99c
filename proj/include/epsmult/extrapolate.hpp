#ifndef EPSMULT_EXTRAPOLATE_HPP
#define EPSMULT_EXTRAPOLATE_HPP

#include "error.hpp"
#include "rational.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace epsmult {

enum class FitModel { linear_inverse, quadratic_inverse };

inline std::string to_string(FitModel m) {
  return m == FitModel::linear_inverse ? "a+b/n" : "a+b/n+c/n^2";
}

/// An estimate of lim v_n; never a convergence claim.
struct Extrapolation {
  FitModel model = FitModel::linear_inverse;
  unsigned window = 0;
  unsigned first_n = 0;
  Rational estimate;
  std::vector<Rational> coefficients;
  /// Root-mean-square fit residual.
  double residual = 0;
  /// max |v_{n+1} - v_n| over the window.
  Rational cauchy;
};

namespace detail {

/// Solves the square system m·x = rhs exactly (Gauss–Jordan).
inline std::vector<Rational> solve(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs) {
  const auto n = m.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0)
      ++p;
    if (p == n)
      throw InvariantFailure("singular least-squares system");
    std::swap(m[p], m[c]);
    std::swap(rhs[p], rhs[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0)
        continue;
      Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k)
        m[r][k] -= f * m[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    rhs[i] /= m[i][i];
  return rhs;
}

} // namespace detail

/// Least-squares fit of v_n against the chosen model over the last `window`
/// indices of `values` (indexed by n, so values[0] is the n = 0 term and is
/// never used). Needs at least window + 2 terms.
inline Extrapolation extrapolate(const std::vector<Rational>& values, unsigned window,
                                 FitModel model = FitModel::linear_inverse) {
  const unsigned k = model == FitModel::linear_inverse ? 2 : 3;
  if (window < k)
    throw PreconditionError("window must be at least " + std::to_string(k));
  if (values.size() < std::size_t(window) + 2)
    throw PreconditionError("extrapolation needs at least window+2 terms");
  Extrapolation out;
  out.model = model;
  out.window = window;
  const auto last = static_cast<unsigned>(values.size() - 1);
  out.first_n = last - window + 1;

  std::vector<std::vector<Rational>> ata(k, std::vector<Rational>(k, Rational(0)));
  std::vector<Rational> atb(k, Rational(0));
  auto basis = [&](unsigned n) {
    std::vector<Rational> b{Rational(1), Rational(1, n)};
    if (k == 3)
      b.push_back(Rational(1, std::uint64_t(n) * n));
    return b;
  };
  for (unsigned n = out.first_n; n <= last; ++n) {
    auto b = basis(n);
    for (unsigned i = 0; i < k; ++i) {
      atb[i] += b[i] * values[n];
      for (unsigned j = 0; j < k; ++j)
        ata[i][j] += b[i] * b[j];
    }
  }
  out.coefficients = detail::solve(ata, atb);
  out.estimate = out.coefficients[0];

  Rational ss = 0;
  for (unsigned n = out.first_n; n <= last; ++n) {
    auto b = basis(n);
    Rational fit = 0;
    for (unsigned i = 0; i < k; ++i)
      fit += out.coefficients[i] * b[i];
    ss += (values[n] - fit) * (values[n] - fit);
  }
  out.residual = std::sqrt(to_double(ss / window));
  for (unsigned n = out.first_n; n < last; ++n)
    out.cauchy = std::max(out.cauchy, Rational(abs(values[n + 1] - values[n])));
  return out;
}

} // namespace epsmult

#endif
