#pragma once

#include <functional>
#include <optional>

#include "holsh/cocycle/cocycle.hpp"
#include "holsh/dichotomy/splitting.hpp"

namespace holsh::dichotomy {

enum class TrichotomyCase { expanding, contracting, mixed, none };

const char* to_string(TrichotomyCase c) noexcept;

struct TrichotomyResult {
  TrichotomyCase kind = TrichotomyCase::none;
  long N = 0;
  /// For mixed: the last index with Π(i1, N) > 2 and the first with Π(i2, N) < 1/2.
  long i1 = 0;
  long i2 = 0;
  /// For none: an index where neither Π(i, N) > 2 nor Π(i + N, N) < 1/2 holds,
  /// or where the blocks are interleaved.
  long witness = 0;
};

/// Π(i, l) for l >= 0 on a 1-D product source.
using ProductFn = std::function<double(long i, long l)>;

/// Classifies the N-step products Π(i, N) over the transitions [first, last]:
/// every block expanding, every block contracting, or an expanding stretch
/// followed by a contracting one. Reports none when the dichotomy
/// Π(i, N) > 2 or Π(i + N, N) < 1/2 fails at some i.
TrichotomyResult trichotomy_from_products(const ProductFn& product, long first, long last, long N);

/// On a 1-D cocycle.
TrichotomyResult trichotomy_1d(const Cocycle& c, long N);

/// On the stretch factors of a direction sequence.
TrichotomyResult trichotomy_1d(const cocycle::DirectionSequence& s, long N);

/// log G_γ(N) with a = L (2N + 1)^γ: -log a + (N - 2) log(1 + 1/a).
double log_growth_function(double L, double gamma, long N);

/// G_γ(N); +inf when it overflows.
double growth_function(double L, double gamma, long N);

/// Smallest N in [2, N_max] with G_γ(N) > 2. G is unimodal in N only in
/// special cases, so the scan is exhaustive.
std::optional<long> growth_threshold(double L, double gamma, long N_max = 1000000);

}  // namespace holsh::dichotomy
