#pragma once

#include "rtsgs/biortho.hpp"
#include "rtsgs/rbiortho.hpp"

#include <Eigen/SparseCore>

#include <functional>
#include <vector>

namespace rtsgs {

/// Matrix-free access to A and Aᵀ.
struct MatrixOracle {
  Index n = 0;
  std::function<VectorD(const VectorD&)> apply;
  std::function<VectorD(const VectorD&)> apply_transpose;

  static MatrixOracle dense(MatrixD A);
  static MatrixOracle sparse(Eigen::SparseMatrix<double> A);

  /// max over `probes` random pairs of |<Ax,y> - <x,Aᵀy>| / (‖Ax‖‖y‖ + ‖x‖‖Aᵀy‖).
  double adjoint_defect(int probes, std::uint64_t seed) const;
};

struct LanczosResult {
  MatrixD Q, P;    ///< n x m bases
  MatrixD H, T;    ///< m x m upper Hessenberg
  double delta_next = 0.0;
  double beta_next = 0.0;
  VectorD q_next, p_next;
  MatrixD SQ, SP;  ///< sketches of Q, P (randomized runs only)
  MatrixD SQ_next, SP_next;  ///< Ωq_{m+1}, Ωp_{m+1} as s x 1
  bool randomized = false;
  Status status;

  Index steps() const noexcept { return Q.cols(); }
};

/// Nonsymmetric Lanczos with full biorthogonalization of every new Krylov
/// vector against the whole basis.  q1, p1 are rescaled so <q1,p1> = 1.
LanczosResult nonsym_lanczos(const MatrixOracle& A, const VectorD& q1, const VectorD& p1, Index m,
                             const BiorthConfig& cfg);

/// Randomized variant: sketch-biorthogonal Krylov bases, H and T from
/// sketched coefficients.
LanczosResult rand_nonsym_lanczos(const MatrixOracle& A, const VectorD& q1, const VectorD& p1, Index m,
                                  const RBiorthConfig& cfg);

/// Second route to the projected matrices: PᵀAQ and QᵀAᵀP, or their
/// sketched forms (ΩP)ᵀΩAQ and (ΩQ)ᵀΩAᵀP for randomized results.
struct ProjectedPair {
  MatrixD H, T;
};
ProjectedPair projected_matrices(const MatrixOracle& A, const LanczosResult& res,
                                 const SketchOperator* sketch = nullptr);

/// ‖AQ - QH - δ q_{m+1} e_mᵀ‖_F and ‖AᵀP - PT - β p_{m+1} e_mᵀ‖_F.
struct ArnoldiResidual {
  double right = 0.0;
  double left = 0.0;
};
ArnoldiResidual arnoldi_residual(const MatrixOracle& A, const LanczosResult& res);
/// Same relations after applying Ω on the left.
ArnoldiResidual sketched_arnoldi_residual(const MatrixOracle& A, const LanczosResult& res,
                                          const SketchOperator& sketch);

struct RitzTriplet {
  std::complex<double> theta;
  std::complex<double> theta_left;  ///< matched eigenvalue of the left problem
  VectorC x;                        ///< right Ritz vector Q x̃
  VectorC y;                        ///< left Ritz vector P ỹ
  double res_right = 0.0;           ///< ‖Ax - θx‖/‖x‖
  double res_left = 0.0;            ///< ‖Aᵀy - θ_left y‖/‖y‖
  bool warning = false;             ///< ill-conditioned small problem or poor left/right match
};

/// Top-k Ritz triplets by descending |θ| (ties: larger real part, then
/// larger imaginary part).  Right vectors come from H; left vectors from
/// left eigenvectors of H (deterministic) or from T (randomized).
std::vector<RitzTriplet> ritz_triplets(const MatrixOracle& A, const LanczosResult& res, Index k);

/// Ritz triplets of the leading j-step subproblem of a finished run.
std::vector<RitzTriplet> ritz_triplets_at(const MatrixOracle& A, const LanczosResult& res, Index j,
                                          Index k);

/// Non-leading coefficients a_0..a_{m-1} of det(zI - M) = z^m + Σ a_k z^k
/// for an upper Hessenberg M.
VectorD hessenberg_charpoly(const Eigen::Ref<const MatrixD>& M);

struct CharpolyCheck {
  VectorD coeffs_lanczos;  ///< char. polynomial of H_m
  VectorD coeffs_oracle;   ///< monic minimizer of ‖(ΩP)ᵀΩ q(A) b‖
  double gap = 0.0;
  VectorD coeffs_lanczos_T;  ///< same for T_m against the Aᵀ, c side
  VectorD coeffs_oracle_T;
  double gap_T = 0.0;
};

/// Compares the characteristic polynomial of H_m (and T_m) from a sketched
/// Lanczos run started at (b, c) with the dense minimizer over monic
/// polynomials.  Gap is max_k |a_k - ã_k| / max(|a_k|, |ã_k|).
CharpolyCheck charpoly_optimality_check(const MatrixOracle& A, const VectorD& b, const VectorD& c, Index m,
                                        const RBiorthConfig& cfg);

}  // namespace rtsgs
