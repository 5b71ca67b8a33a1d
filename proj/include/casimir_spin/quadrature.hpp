// Quadrature building blocks: compensated summation, an adaptive
// Gauss-Kronrod rule, and Gauss-Legendre nodes of arbitrary order.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "casimir_spin/constants.hpp"
#include "casimir_spin/errors.hpp"

namespace casimir_spin {

// Kahan compensated accumulator.
template <class S>
struct CompensatedSum {
  S sum{0};
  S comp{0};
  void add(S x) {
    const S y = x - comp;
    const S t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  S value() const { return sum; }
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair on [-1, 1] (QUADPACK values).
inline constexpr std::array<double, 8> gk15_nodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
inline constexpr std::array<double, 8> gk15_weights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
// Gauss weights attach to nodes 1, 3, 5, 7 of the list above.
inline constexpr std::array<double, 4> g7_weights = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

template <class S, class F>
std::pair<S, S> gk15_segment(F&& f, S a, S b) {
  const S mid = (a + b) / 2;
  const S half = (b - a) / 2;
  S k15 = 0;
  S g7 = 0;
  for (std::size_t i = 0; i < gk15_nodes.size(); ++i) {
    const S x = half * S(gk15_nodes[i]);
    S y;
    if (i + 1 == gk15_nodes.size()) {
      y = f(mid);
    } else {
      y = f(mid - x) + f(mid + x);
    }
    k15 += S(gk15_weights[i]) * y;
    if (i % 2 == 1) g7 += S(g7_weights[i / 2]) * y;
  }
  k15 *= half;
  g7 *= half;
  return {k15, std::abs(k15 - g7)};
}

}  // namespace detail

template <class S>
struct QuadratureResult {
  S value;
  S error_estimate;
  int segments;
};

// Adaptive bisection on [a, b] driven by the G7/K15 error estimate.
// Worst-first refinement: the segment with the largest estimate is split
// until the summed estimates fit the tolerance (measured against the
// current value, which sharpens as the refinement converges).
template <class S, class F>
QuadratureResult<S> integrate_adaptive(F&& f, S a, S b, S rel_tol,
                                       S abs_floor = S(0),
                                       int max_segments = 4000) {
  struct Segment {
    S a, b, value, err;
  };
  const auto by_err = [](const Segment& l, const Segment& r) {
    return l.err < r.err;
  };

  auto [value0, err0] = detail::gk15_segment(f, a, b);
  std::vector<Segment> segs{{a, b, value0, err0}};
  S total_value = value0;
  S total_err = err0;
  int used = 1;
  while (used < max_segments) {
    if (total_err <= std::max(rel_tol * std::abs(total_value), abs_floor)) break;
    std::pop_heap(segs.begin(), segs.end(), by_err);
    const Segment worst = segs.back();
    const S mid = (worst.a + worst.b) / 2;
    if (!(mid > worst.a) || !(mid < worst.b)) break;  // width at roundoff
    segs.pop_back();
    auto [v1, e1] = detail::gk15_segment(f, worst.a, mid);
    auto [v2, e2] = detail::gk15_segment(f, mid, worst.b);
    total_value += (v1 + v2) - worst.value;
    total_err += (e1 + e2) - worst.err;
    segs.push_back({worst.a, mid, v1, e1});
    std::push_heap(segs.begin(), segs.end(), by_err);
    segs.push_back({mid, worst.b, v2, e2});
    std::push_heap(segs.begin(), segs.end(), by_err);
    ++used;
  }
  // re-sum without the incremental drift before the final acceptance check
  CompensatedSum<S> value;
  S err = 0;
  for (const Segment& seg : segs) {
    value.add(seg.value);
    err += seg.err;
  }
  if (err > std::max(rel_tol * std::abs(value.value()), abs_floor)) {
    throw QuadratureError("adaptive quadrature did not converge within budget",
                          double(err));
  }
  return {value.value(), err, used};
}

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
template <class S>
void gauss_legendre(int n, std::vector<S>& nodes, std::vector<S>& weights) {
  if (n < 1) throw DomainError("gauss_legendre: order must be >= 1");
  nodes.assign(n, S(0));
  weights.assign(n, S(0));
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    S x = std::cos(pi_v<S> * (S(i) + S(0.75)) / (S(n) + S(0.5)));
    S dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      S p0 = 1, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const S p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / S(j);
        p0 = p1;
        p1 = p2;
      }
      dp = S(n) * (x * p1 - p0) / (x * x - 1);
      const S dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < S(1e-15) * std::max(S(1), std::abs(x))) {
        // one polishing pass after convergence
        p0 = 1;
        p1 = x;
        for (int j = 2; j <= n; ++j) {
          const S p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / S(j);
          p0 = p1;
          p1 = p2;
        }
        dp = S(n) * (x * p1 - p0) / (x * x - 1);
        break;
      }
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const S w = S(2) / ((1 - x * x) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = S(0);
}

// Fixed-order Gauss-Legendre integral of f on [a, b].
template <class S, class F>
S integrate_gauss_legendre(F&& f, S a, S b, int n) {
  std::vector<S> x, w;
  gauss_legendre(n, x, w);
  const S mid = (a + b) / 2;
  const S half = (b - a) / 2;
  CompensatedSum<S> acc;
  for (int i = 0; i < n; ++i) acc.add(w[i] * f(mid + half * x[i]));
  return half * acc.value();
}

// Composite trapezoid rule with uniformly spaced samples, periodic form:
// integrates f over [a, b) assuming f(b) == f(a).
template <class S, class F>
S integrate_trapezoid_periodic(F&& f, S a, S b, int n) {
  if (n < 1) throw DomainError("trapezoid: need at least one sample");
  const S h = (b - a) / S(n);
  CompensatedSum<S> acc;
  for (int i = 0; i < n; ++i) acc.add(f(a + h * S(i)));
  return h * acc.value();
}

}  // namespace casimir_spin
