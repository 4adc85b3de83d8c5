#include "tdrd/polyrec.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tdrd/error.hpp"

namespace tdrd {

namespace {

constexpr double kBisectionRelWidth = 1e-13;
constexpr double kZeroResidual = 1e-10;

}  // namespace

RecurrenceFamily RecurrenceFamily::q(double beta) {
  if (!(beta > 0.0)) {
    throw ConfigError("Q-family requires beta > 0");
  }
  return {FamilyKind::Q, beta};
}

double eval_poly(const RecurrenceFamily& family, int n, double mu) {
  if (n < 0) throw ConfigError("eval_poly: degree must be nonnegative");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = family.kind == FamilyKind::Q ? mu + family.beta : mu;
  for (int k = 1; k < n; ++k) {
    const double next = mu * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double eval_poly_magnitude(const RecurrenceFamily& family, int n, double mu) {
  if (n <= 0) return 1.0;
  const double amu = std::abs(mu);
  double prev = 1.0;
  double cur = family.kind == FamilyKind::Q ? amu + family.beta : amu;
  for (int k = 1; k < n; ++k) {
    const double next = amu * cur + prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

ZeroSet zeros_p(int n) {
  if (n < 1) throw ConfigError("zeros_p: degree must be >= 1");
  ZeroSet out{n, {}};
  out.zeros.reserve(static_cast<std::size_t>(n));
  for (int r = 1; r <= n; ++r) {
    double z = 2.0 * std::cos(r * std::numbers::pi / (n + 1));
    // cos(pi/2) is not exactly zero in floating point.
    if (2 * r == n + 1) z = 0.0;
    out.zeros.push_back(z);
  }
  return out;
}

int count_zeros_above(int n, double beta, double mu) {
  // Sign changes in q_0(mu), ..., q_n(mu). An exact zero takes the sign
  // opposite to its predecessor. Values are rescaled jointly to stay finite.
  int changes = 0;
  double prev = 1.0;
  double cur = mu + beta;
  auto sign_of = [](double v, double before) {
    if (v > 0.0) return 1;
    if (v < 0.0) return -1;
    return before > 0.0 ? -1 : 1;
  };
  int prev_sign = 1;
  int cur_sign = sign_of(cur, prev);
  if (cur_sign != prev_sign) ++changes;
  for (int k = 1; k < n; ++k) {
    double next = mu * cur - prev;
    const double scale = std::max(std::abs(next), std::abs(cur));
    if (scale > 1e100) {
      next /= scale;
      cur /= scale;
    }
    const int next_sign = sign_of(next, cur_sign);
    if (next_sign != cur_sign) ++changes;
    prev = cur;
    cur = next;
    cur_sign = next_sign;
  }
  return changes;
}

ZeroSet zeros_q(int n, double beta) {
  if (n < 1) throw ConfigError("zeros_q: degree must be >= 1");
  const auto family = RecurrenceFamily::q(beta);
  const double lo0 = -beta - 2.0;
  const double hi0 = beta + 2.0;
  // Gershgorin bounds are closed; nudge outward so no zero sits on them.
  const double pad = 1e-12 * (beta + 2.0);
  const double lo = lo0 - pad;
  const double hi = hi0 + pad;
  if (count_zeros_above(n, beta, lo) != n || count_zeros_above(n, beta, hi) != 0) {
    std::ostringstream msg;
    msg << "zeros_q: failed to isolate " << n << " zeros in [" << lo0 << ", "
        << hi0 << "]";
    throw NumericalError(msg.str());
  }

  ZeroSet out{n, {}};
  out.zeros.reserve(static_cast<std::size_t>(n));
  // The k-th largest zero z satisfies count(mu) >= k for mu < z and < k above.
  for (int k = 1; k <= n; ++k) {
    double a = lo;
    double b = hi;
    while (b - a > kBisectionRelWidth * std::max({1.0, std::abs(a), std::abs(b)})) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (count_zeros_above(n, beta, mid) >= k) {
        a = mid;
      } else {
        b = mid;
      }
    }
    out.zeros.push_back(0.5 * (a + b));
  }

  for (std::size_t i = 0; i < out.zeros.size(); ++i) {
    const double z = out.zeros[i];
    if (i > 0 && !(z < out.zeros[i - 1])) {
      throw NumericalError("zeros_q: zeros are not simple");
    }
    const double scale = std::max(1.0, eval_poly_magnitude(family, n, z));
    if (std::abs(eval_poly(family, n, z)) > kZeroResidual * scale) {
      std::ostringstream msg;
      msg << "zeros_q: q_" << n << "(" << z << ") does not vanish";
      throw NumericalError(msg.str());
    }
  }
  return out;
}

}  // namespace tdrd
