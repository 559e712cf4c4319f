#include "holsh/dichotomy/trichotomy.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "holsh/common/error.hpp"

namespace holsh::dichotomy {

const char* to_string(TrichotomyCase c) noexcept {
  switch (c) {
    case TrichotomyCase::expanding: return "expanding";
    case TrichotomyCase::contracting: return "contracting";
    case TrichotomyCase::mixed: return "mixed";
    case TrichotomyCase::none: return "none";
  }
  return "?";
}

TrichotomyResult trichotomy_from_products(const ProductFn& product, long first, long last, long N) {
  if (N < 1) throw PreconditionError("trichotomy block length must be positive");
  const long top = last + 1 - N;   // last i with Π(i, N) inside the window
  if (top < first) throw WindowError("window shorter than the block length " + std::to_string(N));

  TrichotomyResult r;
  r.N = N;
  for (long i = first; i + N <= top; ++i) {
    if (!(product(i, N) > 2.0) && !(product(i + N, N) < 0.5)) {
      r.witness = i;
      return r;
    }
  }

  bool all_up = true, all_down = true;
  long last_up = first - 1, first_down = top + 1;
  for (long i = first; i <= top; ++i) {
    const double p = product(i, N);
    if (p > 2.0) last_up = i;
    else all_up = false;
    if (p < 0.5) {
      if (first_down > top) first_down = i;
    } else {
      all_down = false;
    }
  }
  if (all_up) {
    r.kind = TrichotomyCase::expanding;
    return r;
  }
  if (all_down) {
    r.kind = TrichotomyCase::contracting;
    return r;
  }
  if (last_up >= first && first_down <= top && last_up < first_down) {
    r.kind = TrichotomyCase::mixed;
    r.i1 = last_up;
    r.i2 = first_down;
    return r;
  }
  r.witness = last_up >= first && first_down <= top ? first_down : first;
  return r;
}

TrichotomyResult trichotomy_1d(const Cocycle& c, long N) {
  if (c.dim() != 1) throw PreconditionError("trichotomy_1d needs a 1-D cocycle");
  return trichotomy_from_products([&c](long i, long l) { return cocycle::product_1d(c, i, l); }, c.k0(),
                                  c.k1(), N);
}

TrichotomyResult trichotomy_1d(const cocycle::DirectionSequence& s, long N) {
  const long last = s.k0 + static_cast<long>(s.lambda.size()) - 1;
  return trichotomy_from_products([&s](long i, long l) { return cocycle::direction_product(s, i, l); }, s.k0,
                                  last, N);
}

double log_growth_function(double L, double gamma, long N) {
  if (!(L > 0.0)) throw PreconditionError("growth function needs L > 0");
  if (!(gamma > 0.0)) throw PreconditionError("growth function needs gamma > 0");
  if (N < 2) throw PreconditionError("growth function needs N >= 2");
  const double log_a = std::log(L) + gamma * std::log(2.0 * static_cast<double>(N) + 1.0);
  const double inv_a = std::exp(-log_a);
  return -log_a + static_cast<double>(N - 2) * std::log1p(inv_a);
}

double growth_function(double L, double gamma, long N) {
  const double g = log_growth_function(L, gamma, N);
  if (g > std::log(std::numeric_limits<double>::max())) return std::numeric_limits<double>::infinity();
  return std::exp(g);
}

std::optional<long> growth_threshold(double L, double gamma, long N_max) {
  const double log2 = std::log(2.0);
  for (long N = 2; N <= N_max; ++N)
    if (log_growth_function(L, gamma, N) > log2) return N;
  return std::nullopt;
}

}  // namespace holsh::dichotomy
