#pragma once

#include "rtsgs/biortho.hpp"
#include "rtsgs/sketching.hpp"

#include <string>

namespace rtsgs {

/// Storage/arithmetic split.  UniformHigh runs everything in binary64;
/// Mixed stores and updates length-n vectors in binary32 and keeps every
/// sketched quantity (Ω application, sketched gram, its LU, d_i and the
/// normalization scalars) in binary64.
struct PrecisionPolicy {
  enum class Mode { UniformHigh, Mixed };
  Mode mode = Mode::UniformHigh;

  static PrecisionPolicy uniform() { return {Mode::UniformHigh}; }
  static PrecisionPolicy mixed() { return {Mode::Mixed}; }
  bool is_mixed() const noexcept { return mode == Mode::Mixed; }
};

struct RBiorthConfig {
  Variant variant = Variant::MGS;  ///< rCGS, rMGS or rCGS_O
  int passes = 1;
  SketchOperator sketch = SketchOperator::identity(1);
  /// Relative threshold on |d_i| / (‖Ωq_i‖‖Ωp_i‖); default 64u (binary64).
  double breakdown_tol = 64.0 * unit_roundoff<double>();
  PrecisionPolicy precision{};
  Normalization normalization = Normalization::Balanced;
  bool record_diagnostics = false;

  void validate(Index n) const;
};

struct RBiorthResult {
  MatrixD Q, P;    ///< bases, widened to binary64 when stored in binary32
  MatrixD SQ, SP;  ///< cached sketches ΩQ, ΩP
  MatrixD TX, TY;
  VectorD d;       ///< sketched inner products <Ωp_i, Ωq_i>
  Status status;
  IterationDiagnostics diagnostics;

  Index columns() const noexcept { return Q.cols(); }
};

/// Incremental randomized two-sided Gram-Schmidt with length-n storage in
/// `Low` (double or float).  Projection coefficients come only from sketched
/// inner products; the sketch of the vector being built is updated by the
/// same linear combinations, so Ω touches each input vector exactly once.
template <typename Low>
class SketchedTwoSidedGramSchmidt {
 public:
  SketchedTwoSidedGramSchmidt(Index capacity, RBiorthConfig cfg);

  StepOutcome append(const Eigen::Ref<const Vector<Low>>& x, const Eigen::Ref<const Vector<Low>>& y);

  Index size() const noexcept { return k_; }
  auto Q() const { return Q_.leftCols(k_); }
  auto P() const { return P_.leftCols(k_); }
  auto SQ() const { return SQ_.leftCols(k_); }
  auto SP() const { return SP_.leftCols(k_); }
  const RBiorthConfig& config() const noexcept { return cfg_; }

 private:
  Index n_;
  Index s_;
  Index k_ = 0;
  RBiorthConfig cfg_;
  Matrix<Low> Q_, P_;
  MatrixD SQ_, SP_;
  BorderedLU lu_;
};

extern template class SketchedTwoSidedGramSchmidt<double>;
extern template class SketchedTwoSidedGramSchmidt<float>;

RBiorthResult randomized_two_sided_gs(const Eigen::Ref<const MatrixD>& X,
                                      const Eigen::Ref<const MatrixD>& Y, const RBiorthConfig& cfg);

/// ‖I - SPᵀSQ‖_F.
double sketch_biorth_error(const Eigen::Ref<const MatrixD>& SQ, const Eigen::Ref<const MatrixD>& SP);

}  // namespace rtsgs
