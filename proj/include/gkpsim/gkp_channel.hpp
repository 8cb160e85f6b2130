#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "gkpsim/rng.hpp"

namespace gkpsim {

/// Finitely squeezed GKP ancilla noise model.
///
/// All quantities live in the shift-error picture: a qubit-level X fault is a
/// position-quadrature displacement, error correction snaps shifts to the
/// sqrt(pi) lattice, and the leftover analog residue is the soft information
/// handed to the outer decoder. Every function here is pure; randomness comes
/// in only through an explicit Rng argument.

/// sigma^2 = 10^(-dB/10) / 2. At 0 dB the vacuum-noise variance is 1/2.
double squeezing_db_to_variance(double squeezing_db);
double variance_to_squeezing_db(double variance);

struct GkpParams {
  double squeezing_db = 0.0;
  double base_variance = 0.5;  // sigma^2 of a single ancilla quadrature

  static GkpParams from_db(double squeezing_db);
  static GkpParams from_variance(double variance);
};

/// Gaussian shift of the given variance. Rejects variance <= 0.
double sample_shift(double variance, Rng& rng);

/// True when the shift is closer to an odd multiple of sqrt(pi) than to an
/// even one; the boundary is assigned half-open so the classifier is total.
bool is_logical_flip(double shift);

/// Measured shift folded into the canonical window [0, sqrt(pi)).
double canonical_residue(double shift);

/// Probability that a Gaussian shift of this variance lands in the flip
/// region, summed over lattice translates |n| <= 8. Strictly inside (0, 1/2)
/// for finite positive variance.
double prior_flip_probability(double variance);

/// Flip probability given the measured residue: the posterior over which
/// lattice translate the true shift came from, with the translate classified
/// by is_logical_flip. Symmetric about sqrt(pi)/2 and equal to 1/2 there.
double posterior_flip_probability(double residue, double variance);

// --- correlated CNOT (CSUM) faults -----------------------------------------

enum class Quadrature : std::uint8_t { Q, P };

/// Effective shift pair on the control and target legs of one CNOT.
struct PairShift {
  double control = 0.0;
  double target = 0.0;
  Quadrature quadrature = Quadrature::Q;
};

/// Per-leg lattice-coset parities; (0, 0) means no fault.
struct PairClass {
  std::uint8_t control = 0;
  std::uint8_t target = 0;
  bool operator==(const PairClass&) const = default;
};

struct CnotShifts {
  PairShift q;
  PairShift p;
};

/// Covariance of the effective (control, target) shifts:
///   q: [[2, 1], [1, 3]] * sigma^2,   p: [[3, -1], [-1, 2]] * sigma^2.
Eigen::Matrix2d cnot_covariance(Quadrature quadrature, double base_variance);

/// Inverse of cnot_covariance.
Eigen::Matrix2d cnot_precision(Quadrature quadrature, double base_variance);

/// Draws the eight elementary shifts of one noisy CNOT and combines them into
/// the effective leg shifts. Draw order is fixed: prior shifts
/// (q_C, p_C, q_T, p_T) then posterior shifts in the same order.
CnotShifts sample_cnot_shifts(const GkpParams& params, Rng& rng);

/// Parity class of the lattice point (a, b) * sqrt(pi) minimizing the
/// quadratic form x^T P x / 2 of the given precision matrix at
/// (x - a sqrt(pi), y - b sqrt(pi)); the search runs over |a|, |b| <= 5 after
/// reducing each coordinate modulo 2 sqrt(pi). Ties break on the first
/// candidate in (a, b) scan order.
PairClass nearest_lattice_class(double x, double y,
                                const Eigen::Matrix2d& precision);

/// nearest_lattice_class under the pair's joint CNOT statistics.
PairClass classify_pair_shift(const PairShift& pair, const GkpParams& params);

/// Posterior distribution over the four PairClass outcomes given the two
/// measured residues, ordered [(0,0), (0,1), (1,0), (1,1)] with index
/// 2 * control + target. Entries sum to one.
Eigen::Vector4d pair_posterior(double residue_control, double residue_target,
                               Quadrature quadrature, const GkpParams& params);

// --- fault mechanisms -------------------------------------------------------

enum class FaultKind : std::uint8_t {
  Idle,
  Prepare,
  Measure,
  CnotControl,
  CnotTarget,
};

/// Effective single-leg shift variance of a mechanism. Idling and preparation
/// combine two elementary shifts (2 sigma^2), measurement sees one (sigma^2);
/// the CNOT legs report the marginals of the joint covariance (2 and 3
/// sigma^2) and are only an approximation of the correlated model.
double mechanism_variance(FaultKind kind, const GkpParams& params);

const char* fault_kind_name(FaultKind kind);

}  // namespace gkpsim
