#include "gkpsim/gkp_channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gkpsim {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;  // sqrt(pi)
constexpr int kLatticeWindow = 8;                   // 1D translate window
constexpr int kPairWindow = 5;                      // 2D translate window

void require_positive_variance(double variance) {
  if (!(variance > 0.0))
    throw std::invalid_argument("variance must be positive");
}

double fold(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0.0) r += period;
  return r;
}

}  // namespace

double squeezing_db_to_variance(double squeezing_db) {
  return 0.5 * std::pow(10.0, -squeezing_db / 10.0);
}

double variance_to_squeezing_db(double variance) {
  require_positive_variance(variance);
  return 10.0 * std::log10(1.0 / (2.0 * variance));
}

GkpParams GkpParams::from_db(double squeezing_db) {
  return GkpParams{squeezing_db, squeezing_db_to_variance(squeezing_db)};
}

GkpParams GkpParams::from_variance(double variance) {
  require_positive_variance(variance);
  return GkpParams{variance_to_squeezing_db(variance), variance};
}

double sample_shift(double variance, Rng& rng) {
  require_positive_variance(variance);
  return std::sqrt(variance) * rng.next_gaussian();
}

bool is_logical_flip(double shift) {
  const double r = fold(shift, 2.0 * kSqrtPi);
  return r >= 0.5 * kSqrtPi && r < 1.5 * kSqrtPi;
}

double canonical_residue(double shift) { return fold(shift, kSqrtPi); }

double prior_flip_probability(double variance) {
  require_positive_variance(variance);
  // Gaussian mass of the flip region. The region is symmetric about zero, so
  // the sum runs over the positive-side intervals only; erfc keeps the deep
  // tails accurate where erf would saturate.
  const double inv = 1.0 / std::sqrt(2.0 * variance);
  double p = 0.0;
  for (int n = 0; n <= kLatticeWindow; ++n) {
    const double a = (2.0 * n + 0.5) * kSqrtPi;
    const double b = (2.0 * n + 1.5) * kSqrtPi;
    p += std::erfc(a * inv) - std::erfc(b * inv);
  }
  return p;
}

double posterior_flip_probability(double residue, double variance) {
  require_positive_variance(variance);
  const double r = canonical_residue(residue);
  // Candidate true shifts are the lattice translates of the residue; each is
  // weighted by the Gaussian density and classified exactly like a sampled
  // shift would be, so averaging this posterior over residues reproduces the
  // prior.
  double flip = 0.0, total = 0.0;
  for (int m = -kLatticeWindow; m <= kLatticeWindow; ++m) {
    const double shift = r + m * kSqrtPi;
    const double w = std::exp(-shift * shift / (2.0 * variance));
    total += w;
    if (is_logical_flip(shift)) flip += w;
  }
  return flip / total;
}

Eigen::Matrix2d cnot_covariance(Quadrature quadrature, double base_variance) {
  require_positive_variance(base_variance);
  Eigen::Matrix2d cov;
  if (quadrature == Quadrature::Q)
    cov << 2.0, 1.0, 1.0, 3.0;
  else
    cov << 3.0, -1.0, -1.0, 2.0;
  return base_variance * cov;
}

Eigen::Matrix2d cnot_precision(Quadrature quadrature, double base_variance) {
  require_positive_variance(base_variance);
  // det(cov) = 5 sigma^4 for both quadratures.
  Eigen::Matrix2d prec;
  if (quadrature == Quadrature::Q)
    prec << 3.0, -1.0, -1.0, 2.0;
  else
    prec << 2.0, 1.0, 1.0, 3.0;
  return prec / (5.0 * base_variance);
}

CnotShifts sample_cnot_shifts(const GkpParams& params, Rng& rng) {
  const double v = params.base_variance;
  const double mu_qc = sample_shift(v, rng);
  const double mu_pc = sample_shift(v, rng);
  const double mu_qt = sample_shift(v, rng);
  const double mu_pt = sample_shift(v, rng);
  const double nu_qc = sample_shift(v, rng);
  const double nu_pc = sample_shift(v, rng);
  const double nu_qt = sample_shift(v, rng);
  const double nu_pt = sample_shift(v, rng);
  // Posterior shifts conjugated through the CSUM and added to the priors.
  CnotShifts out;
  out.q = PairShift{nu_qc + mu_qc, nu_qt + nu_qc + mu_qt, Quadrature::Q};
  out.p = PairShift{nu_pc - nu_pt + mu_pc, nu_pt + mu_pt, Quadrature::P};
  return out;
}

PairClass nearest_lattice_class(double x, double y,
                                const Eigen::Matrix2d& precision) {
  // Reducing by 2 sqrt(pi) preserves coset parities and keeps the fixed
  // search window sufficient.
  const double rx = fold(x, 2.0 * kSqrtPi);
  const double ry = fold(y, 2.0 * kSqrtPi);
  double best = std::numeric_limits<double>::infinity();
  PairClass cls;
  for (int a = -kPairWindow; a <= kPairWindow; ++a) {
    const double dx = rx - a * kSqrtPi;
    for (int b = -kPairWindow; b <= kPairWindow; ++b) {
      const double dy = ry - b * kSqrtPi;
      const double q = precision(0, 0) * dx * dx +
                       2.0 * precision(0, 1) * dx * dy +
                       precision(1, 1) * dy * dy;
      if (q < best) {
        best = q;
        cls.control = static_cast<std::uint8_t>(a & 1);
        cls.target = static_cast<std::uint8_t>(b & 1);
      }
    }
  }
  return cls;
}

PairClass classify_pair_shift(const PairShift& pair, const GkpParams& params) {
  return nearest_lattice_class(
      pair.control, pair.target,
      cnot_precision(pair.quadrature, params.base_variance));
}

Eigen::Vector4d pair_posterior(double residue_control, double residue_target,
                               Quadrature quadrature, const GkpParams& params) {
  const double rc = canonical_residue(residue_control);
  const double rt = canonical_residue(residue_target);
  const Eigen::Matrix2d prec = cnot_precision(quadrature, params.base_variance);

  // The quadratic form is translation invariant, so the class of the
  // candidate (rc + a sqrt(pi), rt + b sqrt(pi)) is the class of (rc, rt)
  // shifted by the candidate's own parity offsets.
  const PairClass base = nearest_lattice_class(rc, rt, prec);

  constexpr int kSpan = 2 * kPairWindow + 1;
  double form[kSpan][kSpan];
  double min_form = std::numeric_limits<double>::infinity();
  for (int a = -kPairWindow; a <= kPairWindow; ++a) {
    const double x = rc + a * kSqrtPi;
    for (int b = -kPairWindow; b <= kPairWindow; ++b) {
      const double y = rt + b * kSqrtPi;
      const double q = 0.5 * (prec(0, 0) * x * x + 2.0 * prec(0, 1) * x * y +
                              prec(1, 1) * y * y);
      form[a + kPairWindow][b + kPairWindow] = q;
      min_form = std::min(min_form, q);
    }
  }

  Eigen::Vector4d probs = Eigen::Vector4d::Zero();
  for (int a = -kPairWindow; a <= kPairWindow; ++a) {
    for (int b = -kPairWindow; b <= kPairWindow; ++b) {
      const double q = form[a + kPairWindow][b + kPairWindow] - min_form;
      if (q > 120.0) continue;  // weight below 1e-52
      const int control = (base.control ^ (a & 1)) & 1;
      const int target = (base.target ^ (b & 1)) & 1;
      probs[2 * control + target] += std::exp(-q);
    }
  }
  probs /= probs.sum();
  return probs;
}

double mechanism_variance(FaultKind kind, const GkpParams& params) {
  const double v = params.base_variance;
  switch (kind) {
    case FaultKind::Idle:
    case FaultKind::Prepare:
      return 2.0 * v;
    case FaultKind::Measure:
      return v;
    case FaultKind::CnotControl:
      return 2.0 * v;
    case FaultKind::CnotTarget:
      return 3.0 * v;
  }
  throw std::invalid_argument("unknown fault kind");
}

const char* fault_kind_name(FaultKind kind) {
  switch (kind) {
    case FaultKind::Idle:
      return "idle";
    case FaultKind::Prepare:
      return "prepare";
    case FaultKind::Measure:
      return "measure";
    case FaultKind::CnotControl:
      return "cnot_control";
    case FaultKind::CnotTarget:
      return "cnot_target";
  }
  return "?";
}

}  // namespace gkpsim
