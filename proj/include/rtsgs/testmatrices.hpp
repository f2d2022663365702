#pragma once

#include "rtsgs/sketching.hpp"
#include "rtsgs/types.hpp"

#include <utility>
#include <vector>

namespace rtsgs {

/// X[i,j] = f(x_i, y_j), Y[i,j] = g(x_i, y_j) on the uniform grid of
/// [0,1]² with
///   f(x,y) = sin(x+y) / (cos(100(y-x)) + 1.1)
///   g(x,y) = cos(x+y) / (sin(200(y-x)) + 1.2).
/// Seedless; evaluated left to right in binary64.
std::pair<MatrixD, MatrixD> gen_ill_conditioned(Index n, Index m);

/// Two independent n x m matrices of i.i.d. N(0,1) entries.
std::pair<MatrixD, MatrixD> gen_gaussian_pair(Index n, Index m, std::uint64_t seed);

/// n x m matrix of i.i.d. N(0,1) entries; column j uses stream (seed, j).
MatrixD gaussian_matrix(Index n, Index m, std::uint64_t seed);

struct SpectrumSpec {
  Index n = 0;
  VectorD eigenvalues;
  double cond_X = 1.0;

  void validate() const;
};

/// λ_i = 0.95^i for i <= 15, λ_i = 0.99^(i-15) λ_15 afterwards.
SpectrumSpec decaying_spectrum(Index n, double cond_X = 100.0);

/// Similarity transform with prescribed conditioning.
struct SimilarityTransform {
  MatrixD X;        ///< U Σ Vᵀ, σ log-spaced in [1, cond_X]
  VectorD sigma;
};
SimilarityTransform gen_similarity(Index n, double cond_X, std::uint64_t seed);

/// A = X⁻¹ diag(λ) X.
MatrixD gen_prescribed_spectrum(const SpectrumSpec& spec, std::uint64_t seed);

/// Random orthogonal n x n matrix (Q factor of a Gaussian, sign-fixed).
MatrixD random_orthogonal(Index n, std::uint64_t seed);

/// One (kind, s) cell of the sketched-orthogonal inner product experiment.
struct SketchedIpCell {
  SketchKind kind = SketchKind::Gaussian;
  Index s = 0;
  std::vector<double> values;       ///< |<Ωx,Ωy>| per trial, x ⟂ y unit
  std::vector<double> self_values;  ///< <Ωx,Ωx> per trial
  double mean = 0.0;
  double min = 0.0;

  Index count_below(double delta) const;
  Index self_count_below(double delta) const;
};

/// For each kind and sketch size draws `trials` fresh sketches and one random
/// orthonormal pair per trial.  Output is a pure function of the arguments.
std::vector<SketchedIpCell> sketched_orthogonal_ip_experiment(Index n, const std::vector<Index>& s_grid,
                                                              Index trials,
                                                              const std::vector<SketchKind>& kinds,
                                                              std::uint64_t seed);

/// 25:25:1000.
std::vector<Index> default_fig1_grid();

}  // namespace rtsgs
