#pragma once

#include "rtsgs/types.hpp"

#include <vector>

namespace rtsgs {

/// Per-step stability series of a biorthogonalization run, aligned by step.
struct IterationDiagnostics {
  std::vector<Index> step;              ///< 1-based
  std::vector<double> cond_Q;           ///< κ(Q_i)
  std::vector<double> cond_P;           ///< κ(P_i)
  std::vector<double> biorth_loss;      ///< ‖I - P_iᵀQ_i‖_F or the sketched analogue
  std::vector<double> inv_cos_angle;    ///< 1/|cos∠(q_i, p_i)| before normalization
  std::vector<double> d;                ///< normalization scalar d_i
  std::vector<Index> sketched_dots;     ///< length-s inner products spent in step i

  std::size_t size() const noexcept { return d.size(); }
};

/// ‖I - PᵀQ‖_F.
double biorth_loss(const Eigen::Ref<const MatrixD>& Q, const Eigen::Ref<const MatrixD>& P);

/// ‖X - Q·TX‖_F.
double decomposition_error(const Eigen::Ref<const MatrixD>& X, const Eigen::Ref<const MatrixD>& Q,
                           const Eigen::Ref<const MatrixD>& TX);

/// 2-norm condition number σ_max/σ_min.  Throws DegenerateInput for a zero
/// matrix; returns +inf when σ_min is zero.
double cond2(const Eigen::Ref<const MatrixD>& M);

/// Singular values of M in descending order (dense SVD of the R factor of a
/// Householder QR when M is tall).
VectorD singular_values(const Eigen::Ref<const MatrixD>& M);

/// ‖q‖‖p‖/|<q,p>|; +inf when the inner product is exactly zero.
double angle_inv_cos(const Eigen::Ref<const VectorD>& q, const Eigen::Ref<const VectorD>& p);

/// κ(Q_i) for every leading block Q_i, i = 1..k.  Uses one QR of Q; the
/// leading i x i block of R is the R factor of Q_i.
std::vector<double> prefix_condition_numbers(const Eigen::Ref<const MatrixD>& Q);

/// ‖I - B_iᵀA_i‖_F for every leading block, where the gram is BᵀA.
std::vector<double> prefix_biorth_loss(const Eigen::Ref<const MatrixD>& A, const Eigen::Ref<const MatrixD>& B);

/// Fills cond_Q, cond_P, biorth_loss and step from final bases.  For a
/// sketched run pass the sketches as (GQ, GP) so that the loss is measured in
/// the sketched inner product; condition numbers always use Q and P.
void fill_prefix_series(IterationDiagnostics& diag, const Eigen::Ref<const MatrixD>& Q,
                        const Eigen::Ref<const MatrixD>& P, const Eigen::Ref<const MatrixD>& GQ,
                        const Eigen::Ref<const MatrixD>& GP);

}  // namespace rtsgs
