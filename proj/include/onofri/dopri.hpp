#pragma once

// Embedded Dormand-Prince 5(4) integrator with the standard fourth-order
// continuous extension. Header-only; the state is a fixed-size array.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

namespace onofri::ode {

template <std::size_t N>
using State = std::array<double, N>;

template <std::size_t N>
struct DopriOptions {
  double rtol = 1e-10;
  State<N> atol{};         // per-component absolute tolerance
  double initial_step = 1e-2;
  double max_step = std::numeric_limits<double>::infinity();
  long max_steps = 1'000'000;
};

// Accepted step [t0, t1] with its dense-output coefficients.
template <std::size_t N>
struct DopriStep {
  double t0 = 0.0;
  double t1 = 0.0;
  State<N> y0{};
  State<N> y1{};
  State<N> f0{};  // derivative at t0
  State<N> f1{};  // derivative at t1 (FSAL stage)
  std::array<State<N>, 5> rcont{};

  State<N> at(double t) const {
    const double theta = (t - t0) / (t1 - t0);
    const double theta1 = 1.0 - theta;
    State<N> y{};
    for (std::size_t i = 0; i < N; ++i) {
      y[i] = rcont[0][i] +
             theta * (rcont[1][i] +
                      theta1 * (rcont[2][i] + theta * (rcont[3][i] + theta1 * rcont[4][i])));
    }
    return y;
  }
};

enum class DopriStatus { reached_end, step_underflow, non_finite, too_many_steps };

template <std::size_t N>
struct DopriResult {
  DopriStatus status = DopriStatus::reached_end;
  double t = 0.0;
  State<N> y{};
  long accepted = 0;
  long rejected = 0;
};

// Integrates y' = rhs(t, y) from t0 to t_end (t_end > t0). `observer` is
// called with every accepted DopriStep<N>.
template <std::size_t N, class Rhs, class Observer>
DopriResult<N> dopri5(Rhs&& rhs, double t0, const State<N>& y0, double t_end,
                      const DopriOptions<N>& opts, Observer&& observer) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                   a75 = -2187.0 / 6784, a76 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                   d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                   d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

  DopriResult<N> result;
  double t = t0;
  State<N> y = y0;
  State<N> k1 = rhs(t, y);
  double h = std::min({opts.initial_step, opts.max_step, t_end - t0});

  auto combine = [&y](double step, std::initializer_list<std::pair<double, const State<N>*>> terms) {
    State<N> out = y;
    for (const auto& [coef, k] : terms) {
      if (coef == 0.0) continue;
      for (std::size_t i = 0; i < N; ++i) out[i] += step * coef * (*k)[i];
    }
    return out;
  };

  while (t < t_end) {
    if (result.accepted + result.rejected >= opts.max_steps) {
      result.status = DopriStatus::too_many_steps;
      break;
    }
    bool last = false;
    if (t + h >= t_end) {
      h = t_end - t;
      last = true;
    }
    if (h <= 1e-14 * std::max(1.0, std::abs(t))) {
      result.status = DopriStatus::step_underflow;
      break;
    }
    const State<N> k2 = rhs(t + c2 * h, combine(h, {{a21, &k1}}));
    const State<N> k3 = rhs(t + c3 * h, combine(h, {{a31, &k1}, {a32, &k2}}));
    const State<N> k4 = rhs(t + c4 * h, combine(h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State<N> k5 =
        rhs(t + c5 * h, combine(h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State<N> k6 = rhs(
        t + h, combine(h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const State<N> y_new = combine(
        h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
    const State<N> k7 = rhs(t + h, y_new);

    double err = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < N; ++i) {
      const double ei =
          h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = opts.atol[i] + opts.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      const double ratio = sc > 0.0 ? ei / sc : (ei == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
      err += ratio * ratio;
      if (!std::isfinite(y_new[i])) finite = false;
    }
    err = std::sqrt(err / static_cast<double>(N));
    if (!finite || !std::isfinite(err)) {
      // Retry with a smaller step before giving up.
      h *= 0.1;
      ++result.rejected;
      if (h <= 1e-14 * std::max(1.0, std::abs(t))) {
        result.status = DopriStatus::non_finite;
        break;
      }
      continue;
    }

    if (err <= 1.0) {
      DopriStep<N> step;
      step.t0 = t;
      step.t1 = last ? t_end : t + h;
      step.y0 = y;
      step.y1 = y_new;
      step.f0 = k1;
      step.f1 = k7;
      for (std::size_t i = 0; i < N; ++i) {
        const double dy = y_new[i] - y[i];
        const double bspl = h * k1[i] - dy;
        step.rcont[0][i] = y[i];
        step.rcont[1][i] = dy;
        step.rcont[2][i] = bspl;
        step.rcont[3][i] = dy - h * k7[i] - bspl;
        step.rcont[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                d6 * k6[i] + d7 * k7[i]);
      }
      observer(static_cast<const DopriStep<N>&>(step));
      t = step.t1;
      y = y_new;
      k1 = k7;
      ++result.accepted;
      const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h = std::min(h * factor, opts.max_step);
      if (last) break;
    } else {
      ++result.rejected;
      h *= std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
    }
  }
  result.t = t;
  result.y = y;
  return result;
}

}  // namespace onofri::ode
