#include "rtsgs/sketching.hpp"

#include "rtsgs/diagnostics.hpp"
#include "rtsgs/random.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rtsgs {

std::string to_string(SketchKind kind) {
  switch (kind) {
    case SketchKind::SparseSign: return "sparse_sign";
    case SketchKind::Gaussian: return "gaussian";
    case SketchKind::Identity: return "identity";
  }
  return "unknown";
}

std::string to_string(SketchScaling scaling) {
  return scaling == SketchScaling::Standard ? "standard" : "paper_literal";
}

SketchKind parse_sketch_kind(const std::string& name) {
  if (name == "sparse_sign" || name == "sparse" || name == "sparse-sign") return SketchKind::SparseSign;
  if (name == "gaussian") return SketchKind::Gaussian;
  if (name == "identity") return SketchKind::Identity;
  throw std::invalid_argument("unknown sketch kind '" + name + "'");
}

SketchScaling parse_sketch_scaling(const std::string& name) {
  if (name == "standard") return SketchScaling::Standard;
  if (name == "paper_literal" || name == "paper-literal") return SketchScaling::PaperLiteral;
  throw std::invalid_argument("unknown sketch scaling '" + name + "'");
}

Index default_zeta(Index s) { return std::min<Index>(s, 8); }

Index default_sketch_size(Index n, Index m) { return std::min<Index>(n, 4 * (m + 1)); }

SketchOperator SketchOperator::sparse_sign(Index s, Index n, Index zeta, std::uint64_t seed,
                                           SketchScaling scaling) {
  if (s < 1 || n < 1) throw std::invalid_argument("sparse sign: dimensions must be positive");
  if (zeta < 2) throw std::invalid_argument("sparse sign: zeta must be at least 2");
  if (zeta > s) throw std::invalid_argument("sparse sign: zeta exceeds sketch dimension");
  if (s > n) throw std::invalid_argument("sparse sign: sketch dimension exceeds ambient dimension");

  SketchOperator op;
  op.kind_ = SketchKind::SparseSign;
  op.s_ = s;
  op.n_ = n;
  op.zeta_ = zeta;
  op.seed_ = seed;
  op.scaling_ = scaling;
  op.scale_ = scaling == SketchScaling::Standard ? 1.0 / std::sqrt(static_cast<double>(zeta))
                                                 : std::sqrt(static_cast<double>(n) / static_cast<double>(zeta));
  op.rows_.resize(static_cast<std::size_t>(n * zeta));
  op.values_.resize(op.rows_.size());

  std::vector<std::int32_t> picked;
  picked.reserve(static_cast<std::size_t>(zeta));
  for (Index j = 0; j < n; ++j) {
    Philox4x32 rng(seed, static_cast<std::uint64_t>(j));
    // Floyd's sampling of zeta distinct rows out of s
    picked.clear();
    for (Index t = s - zeta; t < s; ++t) {
      const auto r = static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(t + 1)));
      if (std::find(picked.begin(), picked.end(), r) == picked.end())
        picked.push_back(r);
      else
        picked.push_back(static_cast<std::int32_t>(t));
    }
    std::sort(picked.begin(), picked.end());
    const std::uint64_t sign_bits = rng();
    for (Index t = 0; t < zeta; ++t) {
      const auto at = static_cast<std::size_t>(j * zeta + t);
      op.rows_[at] = picked[static_cast<std::size_t>(t)];
      op.values_[at] = ((sign_bits >> t) & 1u) ? -op.scale_ : op.scale_;
    }
  }
  return op;
}

SketchOperator SketchOperator::gaussian(Index s, Index n, std::uint64_t seed) {
  if (s < 1 || n < 1) throw std::invalid_argument("gaussian sketch: dimensions must be positive");
  if (s > n) throw std::invalid_argument("gaussian sketch: sketch dimension exceeds ambient dimension");

  SketchOperator op;
  op.kind_ = SketchKind::Gaussian;
  op.s_ = s;
  op.n_ = n;
  op.seed_ = seed;
  op.scale_ = 1.0 / std::sqrt(static_cast<double>(s));

  auto dense = std::make_shared<MatrixD>(s, n);
  for (Index j = 0; j < n; ++j) {
    NormalStream normal(seed, static_cast<std::uint64_t>(j));
    double* col = dense->col(j).data();
    normal.fill({col, static_cast<std::size_t>(s)});
  }
  *dense *= op.scale_;
  op.dense_ = std::move(dense);
  return op;
}

SketchOperator SketchOperator::identity(Index n) {
  if (n < 1) throw std::invalid_argument("identity sketch: dimension must be positive");
  SketchOperator op;
  op.kind_ = SketchKind::Identity;
  op.s_ = n;
  op.n_ = n;
  return op;
}

template <typename T>
void SketchOperator::apply_into(const Eigen::Ref<const Matrix<T>>& M, MatrixD& out) const {
  if (M.rows() != n_)
    throw std::invalid_argument("sketch apply: input has " + std::to_string(M.rows()) + " rows, operator expects " +
                                std::to_string(n_));
  const Index k = M.cols();
  switch (kind_) {
    case SketchKind::Identity:
      out = M.template cast<double>();
      return;
    case SketchKind::Gaussian:
      out.noalias() = (*dense_) * M.template cast<double>();
      return;
    case SketchKind::SparseSign: {
      out.setZero(s_, k);
      const std::int32_t* rows = rows_.data();
      const double* vals = values_.data();
      for (Index c = 0; c < k; ++c) {
        double* dst = out.col(c).data();
        const T* src = M.col(c).data();
        for (Index j = 0; j < n_; ++j) {
          const double v = static_cast<double>(src[j]);
          const std::size_t base = static_cast<std::size_t>(j * zeta_);
          for (Index t = 0; t < zeta_; ++t) dst[rows[base + t]] += vals[base + t] * v;
        }
      }
      return;
    }
  }
}

template void SketchOperator::apply_into<double>(const Eigen::Ref<const MatrixD>&, MatrixD&) const;
template void SketchOperator::apply_into<float>(const Eigen::Ref<const MatrixF>&, MatrixD&) const;

MatrixD SketchOperator::materialize() const {
  switch (kind_) {
    case SketchKind::Identity: return MatrixD::Identity(n_, n_);
    case SketchKind::Gaussian: return *dense_;
    case SketchKind::SparseSign: {
      MatrixD out = MatrixD::Zero(s_, n_);
      for (Index j = 0; j < n_; ++j)
        for (Index t = 0; t < zeta_; ++t) {
          const auto at = static_cast<std::size_t>(j * zeta_ + t);
          out(rows_[at], j) = values_[at];
        }
      return out;
    }
  }
  return {};
}

std::vector<Index> SketchOperator::column_support(Index j) const {
  if (kind_ != SketchKind::SparseSign) throw std::logic_error("column_support: not a sparse sign operator");
  std::vector<Index> rows;
  for (Index t = 0; t < zeta_; ++t) rows.push_back(rows_[static_cast<std::size_t>(j * zeta_ + t)]);
  return rows;
}

SketchOperator new_sparse_sign(Index s, Index n, Index zeta, std::uint64_t seed, SketchScaling scaling) {
  return SketchOperator::sparse_sign(s, n, zeta, seed, scaling);
}

SketchOperator new_gaussian(Index s, Index n, std::uint64_t seed) { return SketchOperator::gaussian(s, n, seed); }

EmbeddingReport embedding_report(const SketchOperator& op, const Eigen::Ref<const MatrixD>& Q, Index pair_samples,
                                 std::uint64_t sample_seed) {
  if (Q.rows() != op.cols()) throw std::invalid_argument("embedding_report: dimension mismatch");
  const Index m = Q.cols();
  if (m == 0) throw DegenerateInput("embedding_report: empty basis");

  const VectorD sv_q = singular_values(Q);
  const double tol = static_cast<double>(std::max(Q.rows(), m)) * unit_roundoff<double>() * 2.0;
  if (sv_q(0) == 0.0 || sv_q(m - 1) <= tol * sv_q(0)) throw DegenerateInput("embedding_report: Q is rank deficient");

  const MatrixD SQ = op.apply(Q);
  const VectorD sv_sq = singular_values(SQ);

  EmbeddingReport report;
  report.sigma_ratio_max = sv_sq(0) / sv_q(0);
  report.sigma_ratio_min = sv_sq(m - 1) / sv_q(m - 1);
  report.cond_Q = sv_q(0) / sv_q(m - 1);
  report.cond_SQ = sv_sq(m - 1) > 0.0 ? sv_sq(0) / sv_sq(m - 1) : std::numeric_limits<double>::infinity();

  // Orthonormal basis U of range(Q); the distortion of unit x = Ua, y = Ub is
  // |aᵀ W b| with W = (ΩU)ᵀΩU - I.
  Eigen::HouseholderQR<MatrixD> qr(Q);
  const MatrixD U = qr.householderQ() * MatrixD::Identity(Q.rows(), m);
  const MatrixD SU = op.apply(U);
  MatrixD W = SU.transpose() * SU;
  W.diagonal().array() -= 1.0;

  double eps = 0.0;
  NormalStream normal(sample_seed, 0);
  VectorD a(m), b(m);
  for (Index t = 0; t < pair_samples; ++t) {
    for (Index i = 0; i < m; ++i) a(i) = normal();
    for (Index i = 0; i < m; ++i) b(i) = normal();
    a.normalize();
    b.normalize();
    eps = std::max(eps, std::abs(a.dot(W * b)));
  }
  // the extremal eigenvector pair attains the maximum over all unit pairs
  Eigen::SelfAdjointEigenSolver<MatrixD> eig(W, Eigen::EigenvaluesOnly);
  eps = std::max({eps, std::abs(eig.eigenvalues()(0)), std::abs(eig.eigenvalues()(m - 1))});
  report.epsilon_observed = eps;
  return report;
}

}  // namespace rtsgs
