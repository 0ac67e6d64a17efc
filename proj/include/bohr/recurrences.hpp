#pragma once

// Binomial-type weights of the Cesaro operators, built by term recurrences so
// that no Gamma function is ever evaluated directly.

#include <stdexcept>

namespace bohr {

/// Gamma(j + beta) / (Gamma(j + 1) Gamma(beta)), i.e. the j-th Taylor
/// coefficient of (1 - z)^-beta.
inline double gamma_ratio(int j, double beta) {
  if (j < 0) throw std::invalid_argument("gamma_ratio: j must be >= 0");
  if (!(beta > 0.0)) throw std::invalid_argument("gamma_ratio: beta must be > 0");
  double c = 1.0;
  for (int i = 1; i <= j; ++i) c *= (i - 1 + beta) / i;
  return c;
}

/// A_k^alpha = (alpha + 1)_k / (1)_k, the k-th Taylor coefficient of (1 - z)^-(1 + alpha).
inline double pochhammer_ratio(int k, double alpha) {
  if (k < 0) throw std::invalid_argument("pochhammer_ratio: k must be >= 0");
  if (!(alpha > -1.0)) throw std::invalid_argument("pochhammer_ratio: alpha must be > -1");
  double a = 1.0;
  for (int i = 1; i <= k; ++i) a *= (alpha + i) / i;
  return a;
}

}  // namespace bohr
