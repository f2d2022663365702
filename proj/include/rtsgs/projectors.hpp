#pragma once

#include "rtsgs/types.hpp"

#include <vector>

namespace rtsgs {

/// LU factorization of a growing square gram matrix.
///
/// Holds Π·G = L·U with L unit lower triangular.  `extend` borders the
/// factors by one row and column in O(i²) without pivoting; when the new
/// pivot is small relative to the gram entries a single pivoted
/// refactorization is attempted before declaring near-breakdown.
class BorderedLU {
 public:
  BorderedLU() = default;
  explicit BorderedLU(Index capacity) { reserve(capacity); }

  void reserve(Index capacity);
  Index size() const noexcept { return size_; }

  /// Appends column `col` (length i+1, last entry is the new diagonal) and
  /// row `row` (length i, entries left of the diagonal).
  void extend(const Eigen::Ref<const VectorD>& col, const Eigen::Ref<const VectorD>& row);

  /// Solves G z = r.
  VectorD solve(const Eigen::Ref<const VectorD>& r) const;
  /// Solves Gᵀ z = r.
  VectorD solve_transpose(const Eigen::Ref<const VectorD>& r) const;

  MatrixD gram() const { return gram_.topLeftCorner(size_, size_); }
  MatrixD lower() const;
  MatrixD upper() const;
  /// Row permutation: row k of Π·G is row perm()[k] of G.
  const std::vector<Index>& perm() const noexcept { return perm_; }

  /// Smallest |U(k,k)|.
  double min_pivot() const;
  /// Number of pivoted refactorizations triggered by the growth monitor.
  int refactorizations() const noexcept { return refactorizations_; }

  /// Relative growth threshold for the bordered pivot.
  static constexpr double kGrowthThreshold = 1e-8;
  /// Near-breakdown threshold, as a multiple of u·‖G‖_F.
  static constexpr double kBreakdownFactor = 64.0;

 private:
  void refactorize();
  void grow(Index needed);

  Index size_ = 0;
  MatrixD gram_;
  MatrixD L_;
  MatrixD U_;
  std::vector<Index> perm_;
  int refactorizations_ = 0;
};

/// A pair of bases (Q, P) together with the factorized gram matrix PᵀQ, or
/// (ΩP)ᵀΩQ when sketched.  Entry (r, c) of the gram is <p_r, q_c> (or its
/// sketched analogue).
class ObliquePair {
 public:
  /// Empty deterministic pair in R^n.
  static ObliquePair deterministic(Index n, Index capacity = 0);
  /// Empty sketched pair in R^n with sketch dimension s.
  static ObliquePair sketched(Index n, Index s, Index capacity = 0);
  /// Pair built from complete bases (deterministic).
  static ObliquePair from_bases(const MatrixD& Q, const MatrixD& P);
  /// Pair built from complete bases and their sketches.
  static ObliquePair from_sketched_bases(const MatrixD& Q, const MatrixD& P, const MatrixD& SQ,
                                         const MatrixD& SP);

  bool is_sketched() const noexcept { return sketched_; }
  Index ambient() const noexcept { return n_; }
  Index sketch_rows() const noexcept { return s_; }
  Index size() const noexcept { return lu_.size(); }

  auto Q() const { return Q_.leftCols(size()); }
  auto P() const { return P_.leftCols(size()); }
  auto SQ() const { return SQ_.leftCols(size()); }
  auto SP() const { return SP_.leftCols(size()); }
  MatrixD gram() const { return lu_.gram(); }
  const BorderedLU& gram_lu() const noexcept { return lu_; }

  /// In-place bordering by one column on each side.
  void extend(const Eigen::Ref<const VectorD>& q_new, const Eigen::Ref<const VectorD>& p_new);
  void extend_sketched(const Eigen::Ref<const VectorD>& q_new, const Eigen::Ref<const VectorD>& p_new,
                       const Eigen::Ref<const VectorD>& sq_new, const Eigen::Ref<const VectorD>& sp_new);

  /// Coefficients c with proj_Q x = Q c, from r = Pᵀx (or (ΩP)ᵀΩx).
  VectorD q_coefficients(const Eigen::Ref<const VectorD>& r) const { return lu_.solve(r); }
  /// Coefficients c with proj_P y = P c, from r = Qᵀy (or (ΩQ)ᵀΩy).
  VectorD p_coefficients(const Eigen::Ref<const VectorD>& r) const { return lu_.solve_transpose(r); }

 private:
  void ensure_capacity(Index needed);

  bool sketched_ = false;
  Index n_ = 0;
  Index s_ = 0;
  MatrixD Q_, P_, SQ_, SP_;
  BorderedLU lu_;
};

/// Functional extension: returns a copy of `pair` bordered by (q_new, p_new).
ObliquePair gram_extend(const ObliquePair& pair, const Eigen::Ref<const VectorD>& q_new,
                        const Eigen::Ref<const VectorD>& p_new);
ObliquePair gram_extend(const ObliquePair& pair, const Eigen::Ref<const VectorD>& q_new,
                        const Eigen::Ref<const VectorD>& p_new, const Eigen::Ref<const VectorD>& sq_new,
                        const Eigen::Ref<const VectorD>& sp_new);

/// Q (PᵀQ)⁻¹ Pᵀ x: projection onto range(Q) along range(P)^⊥.
VectorD oblique_apply(const ObliquePair& pair, const Eigen::Ref<const VectorD>& x);
/// P (QᵀP)⁻¹ Qᵀ y: projection onto range(P) along range(Q)^⊥.
VectorD oblique_apply_adjoint(const ObliquePair& pair, const Eigen::Ref<const VectorD>& y);

/// Q ((ΩP)ᵀΩQ)⁻¹ (ΩP)ᵀ sx with sx = Ωx supplied by the caller.
VectorD sketched_oblique_apply(const ObliquePair& pair, const Eigen::Ref<const VectorD>& x,
                               const Eigen::Ref<const VectorD>& sx);
/// P ((ΩQ)ᵀΩP)⁻¹ (ΩQ)ᵀ sy.
VectorD sketched_oblique_apply_adjoint(const ObliquePair& pair, const Eigen::Ref<const VectorD>& y,
                                       const Eigen::Ref<const VectorD>& sy);

}  // namespace rtsgs
