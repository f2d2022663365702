#pragma once

#include "rtsgs/types.hpp"

#include <cstdint>
#include <type_traits>
#include <memory>
#include <string>
#include <vector>

namespace rtsgs {

enum class SketchKind { SparseSign, Gaussian, Identity };

/// How the nonzeros of a sparse sign matrix are scaled.
///   Standard     : +-1/sqrt(zeta), so every column has unit norm.
///   PaperLiteral : +-sqrt(n/zeta), kept for comparison only; it does not
///                  give an embedding of unit vectors.
enum class SketchScaling { Standard, PaperLiteral };

std::string to_string(SketchKind kind);
std::string to_string(SketchScaling scaling);
SketchKind parse_sketch_kind(const std::string& name);
SketchScaling parse_sketch_scaling(const std::string& name);

/// ζ = min(s, 8).
Index default_zeta(Index s);

/// s = min(n, 4(m + 1)).
Index default_sketch_size(Index n, Index m);

/// An s x n oblivious subspace embedding.
///
/// The operator is a pure function of (kind, s, n, zeta, seed, scaling).
/// Column j of a random operator is drawn from Philox stream (seed, j), so
/// construction order does not matter and two operators with the same
/// parameters act bit-identically.
class SketchOperator {
 public:
  template <typename T>
  void apply_into(const Eigen::Ref<const Matrix<T>>& M, MatrixD& out) const;

  static SketchOperator sparse_sign(Index s, Index n, Index zeta, std::uint64_t seed,
                                    SketchScaling scaling = SketchScaling::Standard);
  static SketchOperator gaussian(Index s, Index n, std::uint64_t seed);
  static SketchOperator identity(Index n);

  SketchKind kind() const noexcept { return kind_; }
  Index rows() const noexcept { return s_; }
  Index cols() const noexcept { return n_; }
  Index zeta() const noexcept { return zeta_; }
  std::uint64_t seed() const noexcept { return seed_; }
  SketchScaling scaling() const noexcept { return scaling_; }

  /// Magnitude of every nonzero of a sparse sign operator.
  double scale() const noexcept { return scale_; }

  /// Ω·M for an n x k block; the result is always in double precision.
  /// Column vectors at compile time come back as VectorD.
  template <typename Derived>
  auto apply(const Eigen::MatrixBase<Derived>& M) const {
    using Scalar = typename Derived::Scalar;
    static_assert(std::is_same_v<Scalar, double> || std::is_same_v<Scalar, float>, "sketch apply: double or float");
    MatrixD out;
    if constexpr (Derived::IsVectorAtCompileTime && Derived::ColsAtCompileTime == 1) {
      const Vector<Scalar> x = M;
      apply_into<Scalar>(Eigen::Map<const Matrix<Scalar>>(x.data(), x.size(), 1), out);
      return VectorD(out.col(0));
    } else {
      apply_into<Scalar>(M, out);
      return out;
    }
  }

  /// Dense s x n copy of the operator.
  MatrixD materialize() const;

  /// Row indices of the nonzeros of column j (sparse sign only).
  std::vector<Index> column_support(Index j) const;

 private:
  SketchOperator() = default;

  SketchKind kind_ = SketchKind::Identity;
  Index s_ = 0;
  Index n_ = 0;
  Index zeta_ = 0;
  std::uint64_t seed_ = 0;
  SketchScaling scaling_ = SketchScaling::Standard;
  double scale_ = 1.0;

  // sparse sign: zeta signed entries per column, column-major
  std::vector<std::int32_t> rows_;
  std::vector<double> values_;
  // gaussian: dense entries, shared between copies
  std::shared_ptr<const MatrixD> dense_;
};

SketchOperator new_sparse_sign(Index s, Index n, Index zeta, std::uint64_t seed,
                               SketchScaling scaling = SketchScaling::Standard);
SketchOperator new_gaussian(Index s, Index n, std::uint64_t seed);

/// Empirical check of the ε-embedding property on range(Q).
struct EmbeddingReport {
  double epsilon_observed = 0.0;  ///< max |<x,y> - <Ωx,Ωy>| over sampled unit pairs
  double sigma_ratio_max = 1.0;   ///< σ_max(ΩQ) / σ_max(Q)
  double sigma_ratio_min = 1.0;   ///< σ_min(ΩQ) / σ_min(Q)
  double cond_Q = 1.0;
  double cond_SQ = 1.0;
};

/// Samples `pair_samples` unit pairs from range(Q) (plus all pairs of
/// orthonormal basis vectors) to estimate ε, and compares extremal singular
/// values of Q and ΩQ.  Throws DegenerateInput when Q is rank deficient.
EmbeddingReport embedding_report(const SketchOperator& op, const Eigen::Ref<const MatrixD>& Q,
                                 Index pair_samples, std::uint64_t sample_seed = 0x5eed);

}  // namespace rtsgs
