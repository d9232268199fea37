#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace nopa {

/// Thrown when an argument violates a domain invariant (negative squeezing,
/// non-finite amplitude, empty grid, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Coherent-state amplitude of one mode; a measurement setting.
class PhasePoint {
 public:
  constexpr PhasePoint() = default;
  PhasePoint(double re, double im = 0.0);
  explicit PhasePoint(std::complex<double> z) : PhasePoint(z.real(), z.imag()) {}

  double re() const { return re_; }
  double im() const { return im_; }
  std::complex<double> value() const { return {re_, im_}; }
  double norm_sq() const { return re_ * re_ + im_ * im_; }
  PhasePoint conj() const { return {re_, -im_}; }

  friend bool operator==(const PhasePoint&, const PhasePoint&) = default;

 private:
  double re_ = 0.0;
  double im_ = 0.0;
};

/// Squeezing parameter r >= 0 of the two-mode squeezed vacuum.
class SqueezeParam {
 public:
  constexpr SqueezeParam() = default;
  SqueezeParam(double r);

  double value() const { return r_; }
  operator double() const { return r_; }

 private:
  double r_ = 0.0;
};

/// Common magnitude J >= 0 of the coherent shifts in the one-parameter
/// family of settings alpha in {0, sqrt(J)}, beta in {0, -sqrt(J)}.
class DisplacementMagnitude {
 public:
  constexpr DisplacementMagnitude() = default;
  DisplacementMagnitude(double j);

  double value() const { return j_; }
  operator double() const { return j_; }

 private:
  double j_ = 0.0;
};

/// Two settings per side of one CHSH experiment.
struct Quadruplet {
  PhasePoint alpha1;
  PhasePoint alpha2;
  PhasePoint beta1;
  PhasePoint beta2;

  /// Sum of |.|^2 over the four settings; used for tie-breaking.
  double total_norm_sq() const {
    return alpha1.norm_sq() + alpha2.norm_sq() + beta1.norm_sq() + beta2.norm_sq();
  }

  /// The settings (0, sqrt(J); 0, -sqrt(J)).
  static Quadruplet from_magnitude(DisplacementMagnitude j);

  friend bool operator==(const Quadruplet&, const Quadruplet&) = default;
};

constexpr double kLocalBound = 2.0;
/// 2*sqrt(2)
constexpr double kTsirelsonBound = 2.8284271247461900976;

struct BellResult {
  double B = 0.0;
  Quadruplet quadruplet;
  SqueezeParam r;
  bool violates_local_bound = false;
  /// False only when a search ran out of its iteration budget.
  bool converged = true;
};

/// Builds a BellResult, setting the violation flag (strict |B| > 2) and
/// asserting the Tsirelson sanity bound.
BellResult make_bell_result(double B, const Quadruplet& q, SqueezeParam r, bool converged = true);

}  // namespace nopa
