#pragma once

#include "rtsgs/diagnostics.hpp"
#include "rtsgs/projectors.hpp"
#include "rtsgs/types.hpp"

#include <optional>
#include <string>

namespace rtsgs {

/// How the oblique projector onto the current basis is applied.
///   CGS   : Q(Pᵀx), all coefficients from the unmodified vector
///   MGS   : ∏(I - q_j p_jᵀ), one rank-one factor at a time
///   CGS_O : Q(PᵀQ)⁻¹Pᵀx with the gram kept as a bordered LU
enum class Variant { CGS, MGS, CGS_O };

/// Scaling applied after d_i = <q_i, p_i> is formed.
///   Balanced : <q_i, p_i> = 1 and ‖q_i‖ = ‖p_i‖
///   Plain    : q_i /= sqrt|d_i|, p_i /= sign(d_i) sqrt|d_i|
enum class Normalization { Balanced, Plain };

std::string to_string(Variant v);
Variant parse_variant(const std::string& name);

struct BiorthConfig {
  Variant variant = Variant::MGS;
  int passes = 1;
  /// Relative breakdown threshold on |d_i| / (‖q_i‖‖p_i‖); default 64u.
  double breakdown_tol = 64.0 * unit_roundoff<double>();
  Normalization normalization = Normalization::Balanced;
  bool record_diagnostics = false;

  void validate() const;
};

struct BiorthResult {
  MatrixD Q, P;
  MatrixD TX, TY;  ///< X ≈ Q·TX, Y ≈ P·TY, upper triangular
  VectorD d;
  Status status;
  IterationDiagnostics diagnostics;

  Index columns() const noexcept { return Q.cols(); }
};

/// Outcome of biorthogonalizing one new pair against the current bases.
struct StepOutcome {
  VectorD coeff_q;  ///< x = q_new·scale_q + Q·coeff_q
  VectorD coeff_p;  ///< y = p_new·scale_p + P·coeff_p
  double scale_q = 0.0;
  double scale_p = 0.0;
  double d = 0.0;
  double inv_cos = 0.0;
  Index sketched_dots = 0;
  Status status;  ///< Breakdown leaves the bases untouched
  VectorD residual_q;  ///< unnormalized q after projection (valid even on breakdown)
  VectorD residual_p;
};

/// Incremental two-sided Gram-Schmidt.  Holds Q_i, P_i and, for CGS_O, the
/// factorized gram; `append` performs one iteration of the recurrence.
class TwoSidedGramSchmidt {
 public:
  TwoSidedGramSchmidt(Index n, Index capacity, BiorthConfig cfg);

  StepOutcome append(const Eigen::Ref<const VectorD>& x, const Eigen::Ref<const VectorD>& y);

  Index size() const noexcept { return k_; }
  auto Q() const { return Q_.leftCols(k_); }
  auto P() const { return P_.leftCols(k_); }
  const BiorthConfig& config() const noexcept { return cfg_; }

 private:
  void project(VectorD& q, VectorD& p, VectorD& cq, VectorD& cp);

  Index n_;
  Index k_ = 0;
  BiorthConfig cfg_;
  MatrixD Q_, P_;
  BorderedLU lu_;
};

/// Biorthogonalizes the columns of X and Y (Algorithm of two-sided
/// Gram-Schmidt).  On breakdown at step i the result holds the i-1 valid
/// columns and status Breakdown(i).
BiorthResult two_sided_gs(const Eigen::Ref<const MatrixD>& X, const Eigen::Ref<const MatrixD>& Y,
                          const BiorthConfig& cfg);

}  // namespace rtsgs
