#pragma once

#include <vector>

namespace tdrd {

// Two three-term recurrence families sharing r_{n+1}(mu) = mu r_n(mu) - r_{n-1}(mu)
// and r_0 = 1. They differ only in the first member:
//   P-family: p_1(mu) = mu          (Chebyshev-type, zeros 2 cos(r pi/(n+1)))
//   Q-family: q_1(mu) = mu + beta   (no closed-form zeros)
enum class FamilyKind { P, Q };

struct RecurrenceFamily {
  FamilyKind kind = FamilyKind::P;
  double beta = 0.0;  // only read for the Q-family; must be > 0 there

  static RecurrenceFamily p() { return {FamilyKind::P, 0.0}; }
  static RecurrenceFamily q(double beta);
};

/// Zeros of a family member of degree `degree`, strictly decreasing.
struct ZeroSet {
  int degree = 0;
  std::vector<double> zeros;
};

/// n-th member of the family at mu, by forward recurrence.
double eval_poly(const RecurrenceFamily& family, int n, double mu);

/// Running-absolute-value version of the recurrence. Bounds the rounding
/// error of eval_poly and serves as the scale for zero verification.
double eval_poly_magnitude(const RecurrenceFamily& family, int n, double mu);

/// {2 cos(r pi/(n+1)) : r = 1..n}, descending. Requires n >= 1.
ZeroSet zeros_p(int n);

/// All n real zeros of q_n for the given beta, descending. Computed by
/// Sturm-sequence bisection on the Jacobi matrix diag(-beta, 0, ..., 0) with
/// unit off-diagonals. Throws NumericalError if the sign-change count over the
/// Gershgorin interval [-beta-2, beta+2] is not n, or a zero fails
/// verification.
ZeroSet zeros_q(int n, double beta);

/// Number of zeros of q_n strictly greater than mu, from the sign changes of
/// the sequence q_0(mu), ..., q_n(mu).
int count_zeros_above(int n, double beta, double mu);

}  // namespace tdrd
