#pragma once

// Brute-force verification path: the two-mode squeezed vacuum in a truncated
// number-state basis, with displacement and parity as explicit matrices.
// Shares no code with gaussian_core.

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <vector>

#include "nopa/types.hpp"

namespace nopa::fock {

class CutoffTooSmall : public std::runtime_error {
 public:
  CutoffTooSmall(int cutoff, double tail_weight, double tolerance);
  int cutoff() const { return cutoff_; }
  double tail_weight() const { return tail_weight_; }

 private:
  int cutoff_;
  double tail_weight_;
};

class ConvergenceNotReached : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two-mode state over |n>|m>, 0 <= n, m <= cutoff.
struct TruncatedState {
  int cutoff = 0;
  /// coefficients(n, m) is the amplitude of |n>|m>.
  Eigen::MatrixXcd coefficients;
  /// Probability discarded by the truncation.
  double tail_weight = 0.0;

  int dimension() const { return cutoff + 1; }
  double retained_weight() const { return coefficients.squaredNorm(); }
};

/// Single-mode operator on the span of |0>..|cutoff>.
struct ModeOperator {
  int cutoff = 0;
  Eigen::MatrixXcd entries;

  int dimension() const { return cutoff + 1; }
};

/// Discarded weight tanh^{2N+2}(r) of the squeezed vacuum cut at N.
double tail_weight(SqueezeParam r, int cutoff);

/// Smallest N >= 1 with tail_weight(r, N) <= tolerance.
int required_state_cutoff(SqueezeParam r, double tolerance);

/// State cutoff plus a margin for the photons the displacements add:
/// N + ceil(8 (|alpha|^2 + |beta|^2)) + 10.
int working_cutoff(int state_cutoff, const PhasePoint& alpha, const PhasePoint& beta);

/// Schmidt form c_n = tanh^n(r) / cosh(r) on the diagonal n = m.
/// Throws CutoffTooSmall when the discarded weight exceeds tail_tolerance.
TruncatedState build_nopa_state(SqueezeParam r, int cutoff,
                                std::optional<double> tail_tolerance = std::nullopt);

/// <m|D(alpha)|n> for m, n <= cutoff from the associated-Laguerre closed form.
/// Prefactors are carried in log space and the Laguerre recurrence is
/// rescaled on the fly, so any cutoff is safe from overflow.
ModeOperator displacement_matrix(const PhasePoint& alpha, int cutoff);

/// diag((-1)^n).
ModeOperator parity_matrix(int cutoff);

/// D(alpha) (-1)^n D(alpha)^dagger built at working_cutoff and restricted to
/// the first state_cutoff + 1 levels.
ModeOperator displaced_parity(const PhasePoint& alpha, int state_cutoff, int working_cutoff);

/// <psi| A (x) B |psi>.
std::complex<double> expectation(const TruncatedState& state, const ModeOperator& a,
                                 const ModeOperator& b);

struct OracleOptions {
  /// Maximum tail weight accepted for the state cutoff.
  double tail_tolerance = 1e-10;
  /// Target size of the largest discarded amplitude. The neglected amplitudes
  /// enter the correlation linearly, so the automatic cutoff asks for a tail
  /// weight of at most amplitude_tolerance^2 (and at most tail_tolerance).
  double amplitude_tolerance = 1e-7;
  /// When set, the value is recomputed at twice the cutoff and
  /// ConvergenceNotReached is thrown if the two differ by more than this.
  std::optional<double> convergence_tolerance;
  /// Largest accepted |Im <psi|O|psi>| and |O - O^dagger|.
  double imaginary_tolerance = 1e-10;
  double hermiticity_tolerance = 1e-12;
};

/// Pi(alpha; beta) computed by explicit matrix algebra on the truncated state.
double oracle_correlation(SqueezeParam r, const PhasePoint& alpha, const PhasePoint& beta,
                          int cutoff, const OracleOptions& options = {});

/// State cutoff used when the caller does not fix one:
/// required_state_cutoff(r, min(tail_tolerance, amplitude_tolerance^2)).
int recommended_cutoff(SqueezeParam r, const OracleOptions& options = {});

/// Same, with the cutoff picked by recommended_cutoff.
double oracle_correlation(SqueezeParam r, const PhasePoint& alpha, const PhasePoint& beta,
                          const OracleOptions& options = {});

struct ConvergenceRow {
  int cutoff = 0;
  double value = 0.0;
  /// |value - previous value|; empty for the first row.
  std::optional<double> delta;
};

/// oracle_correlation at each cutoff (which must be strictly increasing) with
/// successive differences. The tail check is disabled since small cutoffs are
/// the point of the report.
std::vector<ConvergenceRow> convergence_report(SqueezeParam r, const PhasePoint& alpha,
                                               const PhasePoint& beta,
                                               const std::vector<int>& cutoffs);

}  // namespace nopa::fock
