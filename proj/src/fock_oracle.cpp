#include "nopa/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace nopa::fock {

namespace {

void require_cutoff(int cutoff) {
  if (cutoff < 1) throw InvalidArgument("Fock cutoff must be >= 1, got " + std::to_string(cutoff));
}

// sign(l) * exp(ln|l| + log_factor), zero when l == 0.
double signed_exp(double l, double log_factor) {
  if (l == 0.0) return 0.0;
  return std::copysign(std::exp(std::log(std::abs(l)) + log_factor), l);
}

}  // namespace

CutoffTooSmall::CutoffTooSmall(int cutoff, double tail_weight, double tolerance)
    : std::runtime_error("cutoff " + std::to_string(cutoff) + " discards weight " +
                         std::to_string(tail_weight) + " > tolerance " + std::to_string(tolerance)),
      cutoff_(cutoff),
      tail_weight_(tail_weight) {}

double tail_weight(SqueezeParam r, int cutoff) {
  require_cutoff(cutoff);
  return std::pow(std::tanh(r.value()), 2.0 * cutoff + 2.0);
}

int required_state_cutoff(SqueezeParam r, double tolerance) {
  if (!(tolerance > 0.0 && tolerance < 1.0)) {
    throw InvalidArgument("tail tolerance must lie in (0, 1)");
  }
  const double t = std::tanh(r.value());
  if (t == 0.0) return 1;
  int cutoff = std::max(1, static_cast<int>(std::ceil(std::log(tolerance) / (2.0 * std::log(t)) - 1.0)));
  while (tail_weight(r, cutoff) > tolerance) ++cutoff;
  while (cutoff > 1 && tail_weight(r, cutoff - 1) <= tolerance) --cutoff;
  return cutoff;
}

int working_cutoff(int state_cutoff, const PhasePoint& alpha, const PhasePoint& beta) {
  require_cutoff(state_cutoff);
  return state_cutoff + static_cast<int>(std::ceil(8.0 * (alpha.norm_sq() + beta.norm_sq()))) + 10;
}

TruncatedState build_nopa_state(SqueezeParam r, int cutoff, std::optional<double> tail_tolerance) {
  require_cutoff(cutoff);
  TruncatedState state;
  state.cutoff = cutoff;
  state.tail_weight = tail_weight(r, cutoff);
  if (tail_tolerance && state.tail_weight > *tail_tolerance) {
    throw CutoffTooSmall(cutoff, state.tail_weight, *tail_tolerance);
  }
  const double t = std::tanh(r.value());
  const double inv_cosh = 1.0 / std::cosh(r.value());
  state.coefficients = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
  double c = inv_cosh;
  for (int n = 0; n <= cutoff; ++n) {
    state.coefficients(n, n) = c;
    c *= t;
  }
  return state;
}

ModeOperator displacement_matrix(const PhasePoint& alpha, int cutoff) {
  require_cutoff(cutoff);
  const int dim = cutoff + 1;
  const double x = alpha.norm_sq();
  const double log_abs = x > 0.0 ? 0.5 * std::log(x) : -std::numeric_limits<double>::infinity();
  const double phase = std::atan2(alpha.im(), alpha.re());

  std::vector<double> log_factorial(dim);
  for (int n = 0; n < dim; ++n) log_factorial[n] = std::lgamma(n + 1.0);

  constexpr double kRescale = 1e150;
  const double log_rescale = std::log(kRescale);

  ModeOperator op{cutoff, Eigen::MatrixXcd::Zero(dim, dim)};
  for (int k = 0; k < dim; ++k) {
    if (k > 0 && x == 0.0) break;
    // k ln|alpha|, with 0 * ln 0 = 0 on the diagonal
    const double log_power = k == 0 ? 0.0 : k * log_abs;
    const std::complex<double> below = std::polar(1.0, k * phase);            // alpha^k / |alpha|^k
    const std::complex<double> above = std::polar(k % 2 ? -1.0 : 1.0, -k * phase);  // (-alpha*)^k / |alpha|^k

    // L_n^{(k)}(x) by the three-term recurrence in n, kept as value * e^{log_scale}.
    double prev = 0.0;
    double cur = 1.0;
    double log_scale = 0.0;
    for (int n = 0; n + k < dim; ++n) {
      if (n == 1) {
        prev = 1.0;
        cur = 1.0 + k - x;
      } else if (n > 1) {
        const double next = ((2.0 * n - 1.0 + k - x) * cur - (n - 1.0 + k) * prev) / n;
        prev = cur;
        cur = next;
      }
      if (std::abs(cur) > kRescale) {
        cur /= kRescale;
        prev /= kRescale;
        log_scale += log_rescale;
      }
      const int m = n + k;
      const double log_factor =
          0.5 * (log_factorial[n] - log_factorial[m]) + log_power - 0.5 * x + log_scale;
      const double magnitude = signed_exp(cur, log_factor);
      op.entries(m, n) = magnitude * below;
      if (k > 0) op.entries(n, m) = magnitude * above;
    }
  }
  return op;
}

ModeOperator parity_matrix(int cutoff) {
  require_cutoff(cutoff);
  ModeOperator op{cutoff, Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1)};
  for (int n = 0; n <= cutoff; ++n) op.entries(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  return op;
}

ModeOperator displaced_parity(const PhasePoint& alpha, int state_cutoff, int working_cutoff) {
  require_cutoff(state_cutoff);
  if (working_cutoff < state_cutoff) {
    throw InvalidArgument("working cutoff must be >= state cutoff");
  }
  const ModeOperator d = displacement_matrix(alpha, working_cutoff);
  const ModeOperator parity = parity_matrix(working_cutoff);
  const auto top = d.entries.topRows(state_cutoff + 1);
  Eigen::MatrixXcd product = top * parity.entries.diagonal().asDiagonal() * top.adjoint();
  return ModeOperator{state_cutoff, std::move(product)};
}

std::complex<double> expectation(const TruncatedState& state, const ModeOperator& a,
                                 const ModeOperator& b) {
  if (a.dimension() != state.dimension() || b.dimension() != state.dimension()) {
    throw InvalidArgument("operator and state dimensions differ");
  }
  const Eigen::MatrixXcd& c = state.coefficients;
  // <psi|A (x) B|psi> = sum_{n n' m m'} conj(c_{n n'}) A_{n m} B_{n' m'} c_{m m'}
  const Eigen::MatrixXcd applied = a.entries * c * b.entries.transpose();
  return (c.conjugate().array() * applied.array()).sum();
}

double oracle_correlation(SqueezeParam r, const PhasePoint& alpha, const PhasePoint& beta,
                          int cutoff, const OracleOptions& options) {
  const TruncatedState state = build_nopa_state(r, cutoff, options.tail_tolerance);
  const int working = working_cutoff(cutoff, alpha, beta);
  const ModeOperator first = displaced_parity(alpha, cutoff, working);
  const ModeOperator second = displaced_parity(beta, cutoff, working);

  for (const ModeOperator* op : {&first, &second}) {
    const double asymmetry = (op->entries - op->entries.adjoint()).cwiseAbs().maxCoeff();
    if (asymmetry > options.hermiticity_tolerance) {
      throw std::runtime_error("displaced parity is not Hermitian: residual " +
                               std::to_string(asymmetry));
    }
  }

  const std::complex<double> value = expectation(state, first, second);
  if (std::abs(value.imag()) > options.imaginary_tolerance) {
    throw std::runtime_error("parity correlation has imaginary residue " +
                             std::to_string(value.imag()));
  }

  if (options.convergence_tolerance) {
    OracleOptions refined = options;
    refined.convergence_tolerance.reset();
    const double doubled = oracle_correlation(r, alpha, beta, 2 * cutoff, refined);
    if (std::abs(doubled - value.real()) > *options.convergence_tolerance) {
      throw ConvergenceNotReached("doubling cutoff " + std::to_string(cutoff) +
                                  " changed the correlation by " +
                                  std::to_string(std::abs(doubled - value.real())));
    }
  }
  return value.real();
}

int recommended_cutoff(SqueezeParam r, const OracleOptions& options) {
  const double amplitude_sq = options.amplitude_tolerance * options.amplitude_tolerance;
  return required_state_cutoff(r, std::min(options.tail_tolerance, amplitude_sq));
}

double oracle_correlation(SqueezeParam r, const PhasePoint& alpha, const PhasePoint& beta,
                          const OracleOptions& options) {
  return oracle_correlation(r, alpha, beta, recommended_cutoff(r, options), options);
}

std::vector<ConvergenceRow> convergence_report(SqueezeParam r, const PhasePoint& alpha,
                                               const PhasePoint& beta,
                                               const std::vector<int>& cutoffs) {
  for (std::size_t i = 1; i < cutoffs.size(); ++i) {
    if (cutoffs[i] <= cutoffs[i - 1]) throw InvalidArgument("cutoffs must be strictly increasing");
  }
  OracleOptions options;
  options.tail_tolerance = std::numeric_limits<double>::infinity();

  std::vector<ConvergenceRow> rows;
  for (int cutoff : cutoffs) {
    ConvergenceRow row{cutoff, oracle_correlation(r, alpha, beta, cutoff, options), std::nullopt};
    if (!rows.empty()) row.delta = std::abs(row.value - rows.back().value);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace nopa::fock
