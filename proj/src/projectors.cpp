#include "rtsgs/projectors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rtsgs {

void BorderedLU::reserve(Index capacity) {
  if (capacity <= gram_.rows()) return;
  const Index k = size_;
  MatrixD g = MatrixD::Zero(capacity, capacity), l = g, u = g;
  g.topLeftCorner(k, k) = gram_.topLeftCorner(k, k);
  l.topLeftCorner(k, k) = L_.topLeftCorner(k, k);
  u.topLeftCorner(k, k) = U_.topLeftCorner(k, k);
  gram_.swap(g);
  L_.swap(l);
  U_.swap(u);
}

void BorderedLU::grow(Index needed) {
  if (needed > gram_.rows()) reserve(std::max<Index>(needed, 2 * gram_.rows()));
}

void BorderedLU::extend(const Eigen::Ref<const VectorD>& col, const Eigen::Ref<const VectorD>& row) {
  const Index i = size_;
  if (col.size() != i + 1 || row.size() != i) throw std::invalid_argument("BorderedLU::extend: bad border sizes");
  grow(i + 1);

  gram_.col(i).head(i + 1) = col;
  gram_.row(i).head(i) = row.transpose();

  // Π[G a; bᵀ c] = [L 0; lᵀ 1][U u; 0 μ]
  VectorD pa(i);
  for (Index k = 0; k < i; ++k) pa(k) = col(perm_[static_cast<std::size_t>(k)]);
  const auto Lk = L_.topLeftCorner(i, i).triangularView<Eigen::UnitLower>();
  const auto Uk = U_.topLeftCorner(i, i).triangularView<Eigen::Upper>();
  const VectorD u = Lk.solve(pa);
  const VectorD l = Uk.transpose().solve(row);
  const double mu = col(i) - l.dot(u);

  L_.row(i).head(i) = l.transpose();
  L_(i, i) = 1.0;
  L_.col(i).head(i).setZero();
  U_.col(i).head(i) = u;
  U_.row(i).head(i).setZero();
  U_(i, i) = mu;
  perm_.push_back(i);
  size_ = i + 1;

  const auto G = gram_.topLeftCorner(size_, size_);
  const double largest = G.cwiseAbs().maxCoeff();
  if (std::abs(mu) >= kGrowthThreshold * largest) return;

  // Small bordered pivot: retry with partial pivoting once.
  MatrixD saved_L = L_.topLeftCorner(i, i), saved_U = U_.topLeftCorner(i, i);
  std::vector<Index> saved_perm(perm_.begin(), perm_.end() - 1);
  refactorize();
  const double pivot = min_pivot();
  if (pivot <= kBreakdownFactor * unit_roundoff<double>() * G.norm()) {
    size_ = i;
    L_.topLeftCorner(i, i) = saved_L;
    U_.topLeftCorner(i, i) = saved_U;
    perm_ = std::move(saved_perm);
    throw NearBreakdown("gram matrix is numerically singular at order " + std::to_string(i + 1), pivot);
  }
}

void BorderedLU::refactorize() {
  const Index k = size_;
  Eigen::PartialPivLU<MatrixD> lu(gram_.topLeftCorner(k, k));
  const MatrixD& packed = lu.matrixLU();
  L_.topLeftCorner(k, k) = packed.triangularView<Eigen::StrictlyLower>();
  L_.topLeftCorner(k, k).diagonal().setOnes();
  U_.topLeftCorner(k, k) = packed.triangularView<Eigen::Upper>();
  Eigen::VectorXi iota(k);
  std::iota(iota.data(), iota.data() + k, 0);
  const Eigen::VectorXi order = lu.permutationP() * iota;
  perm_.assign(order.data(), order.data() + k);
  ++refactorizations_;
}

VectorD BorderedLU::solve(const Eigen::Ref<const VectorD>& r) const {
  const Index k = size_;
  if (r.size() != k) throw std::invalid_argument("BorderedLU::solve: size mismatch");
  VectorD y(k);
  for (Index i = 0; i < k; ++i) y(i) = r(perm_[static_cast<std::size_t>(i)]);
  L_.topLeftCorner(k, k).triangularView<Eigen::UnitLower>().solveInPlace(y);
  U_.topLeftCorner(k, k).triangularView<Eigen::Upper>().solveInPlace(y);
  return y;
}

VectorD BorderedLU::solve_transpose(const Eigen::Ref<const VectorD>& r) const {
  const Index k = size_;
  if (r.size() != k) throw std::invalid_argument("BorderedLU::solve_transpose: size mismatch");
  VectorD t = r;
  U_.topLeftCorner(k, k).transpose().triangularView<Eigen::Lower>().solveInPlace(t);
  L_.topLeftCorner(k, k).transpose().triangularView<Eigen::UnitUpper>().solveInPlace(t);
  VectorD z(k);
  for (Index i = 0; i < k; ++i) z(perm_[static_cast<std::size_t>(i)]) = t(i);
  return z;
}

MatrixD BorderedLU::lower() const { return L_.topLeftCorner(size_, size_); }
MatrixD BorderedLU::upper() const { return U_.topLeftCorner(size_, size_); }

double BorderedLU::min_pivot() const {
  if (size_ == 0) return std::numeric_limits<double>::infinity();
  return U_.topLeftCorner(size_, size_).diagonal().cwiseAbs().minCoeff();
}

// --- ObliquePair ---------------------------------------------------------

ObliquePair ObliquePair::deterministic(Index n, Index capacity) {
  ObliquePair pair;
  pair.n_ = n;
  pair.ensure_capacity(std::max<Index>(capacity, 1));
  return pair;
}

ObliquePair ObliquePair::sketched(Index n, Index s, Index capacity) {
  ObliquePair pair;
  pair.sketched_ = true;
  pair.n_ = n;
  pair.s_ = s;
  pair.ensure_capacity(std::max<Index>(capacity, 1));
  return pair;
}

ObliquePair ObliquePair::from_bases(const MatrixD& Q, const MatrixD& P) {
  if (Q.rows() != P.rows() || Q.cols() != P.cols()) throw std::invalid_argument("ObliquePair: shape mismatch");
  ObliquePair pair = deterministic(Q.rows(), Q.cols());
  for (Index j = 0; j < Q.cols(); ++j) pair.extend(Q.col(j), P.col(j));
  return pair;
}

ObliquePair ObliquePair::from_sketched_bases(const MatrixD& Q, const MatrixD& P, const MatrixD& SQ,
                                             const MatrixD& SP) {
  if (Q.rows() != P.rows() || Q.cols() != P.cols() || SQ.rows() != SP.rows() || SQ.cols() != Q.cols() ||
      SP.cols() != P.cols())
    throw std::invalid_argument("ObliquePair: shape mismatch");
  ObliquePair pair = sketched(Q.rows(), SQ.rows(), Q.cols());
  for (Index j = 0; j < Q.cols(); ++j) pair.extend_sketched(Q.col(j), P.col(j), SQ.col(j), SP.col(j));
  return pair;
}

void ObliquePair::ensure_capacity(Index needed) {
  if (needed <= Q_.cols()) return;
  const Index cap = std::max<Index>(needed, 2 * Q_.cols());
  const Index k = size();
  auto regrow = [&](MatrixD& M, Index rows) {
    MatrixD bigger(rows, cap);
    bigger.leftCols(k) = M.leftCols(k);
    M.swap(bigger);
  };
  regrow(Q_, n_);
  regrow(P_, n_);
  if (sketched_) {
    regrow(SQ_, s_);
    regrow(SP_, s_);
  }
  lu_.reserve(cap);
}

void ObliquePair::extend(const Eigen::Ref<const VectorD>& q_new, const Eigen::Ref<const VectorD>& p_new) {
  if (sketched_) throw std::logic_error("ObliquePair::extend: sketched pair needs sketches of the new columns");
  if (q_new.size() != n_ || p_new.size() != n_) throw std::invalid_argument("ObliquePair::extend: dimension mismatch");
  const Index k = size();
  ensure_capacity(k + 1);
  VectorD col(k + 1);
  col.head(k) = P().transpose() * q_new;
  col(k) = p_new.dot(q_new);
  const VectorD row = Q().transpose() * p_new;
  lu_.extend(col, row);
  Q_.col(k) = q_new;
  P_.col(k) = p_new;
}

void ObliquePair::extend_sketched(const Eigen::Ref<const VectorD>& q_new, const Eigen::Ref<const VectorD>& p_new,
                                  const Eigen::Ref<const VectorD>& sq_new, const Eigen::Ref<const VectorD>& sp_new) {
  if (!sketched_) throw std::logic_error("ObliquePair::extend_sketched: pair is not sketched");
  if (q_new.size() != n_ || p_new.size() != n_ || sq_new.size() != s_ || sp_new.size() != s_)
    throw std::invalid_argument("ObliquePair::extend_sketched: dimension mismatch");
  const Index k = size();
  ensure_capacity(k + 1);
  VectorD col(k + 1);
  col.head(k) = SP().transpose() * sq_new;
  col(k) = sp_new.dot(sq_new);
  const VectorD row = SQ().transpose() * sp_new;
  lu_.extend(col, row);
  Q_.col(k) = q_new;
  P_.col(k) = p_new;
  SQ_.col(k) = sq_new;
  SP_.col(k) = sp_new;
}

ObliquePair gram_extend(const ObliquePair& pair, const Eigen::Ref<const VectorD>& q_new,
                        const Eigen::Ref<const VectorD>& p_new) {
  ObliquePair out = pair;
  out.extend(q_new, p_new);
  return out;
}

ObliquePair gram_extend(const ObliquePair& pair, const Eigen::Ref<const VectorD>& q_new,
                        const Eigen::Ref<const VectorD>& p_new, const Eigen::Ref<const VectorD>& sq_new,
                        const Eigen::Ref<const VectorD>& sp_new) {
  ObliquePair out = pair;
  out.extend_sketched(q_new, p_new, sq_new, sp_new);
  return out;
}

VectorD oblique_apply(const ObliquePair& pair, const Eigen::Ref<const VectorD>& x) {
  if (pair.is_sketched()) throw std::logic_error("oblique_apply: pair is sketched");
  if (x.size() != pair.ambient()) throw std::invalid_argument("oblique_apply: dimension mismatch");
  if (pair.size() == 0) return VectorD::Zero(x.size());
  return pair.Q() * pair.q_coefficients(pair.P().transpose() * x);
}

VectorD oblique_apply_adjoint(const ObliquePair& pair, const Eigen::Ref<const VectorD>& y) {
  if (pair.is_sketched()) throw std::logic_error("oblique_apply_adjoint: pair is sketched");
  if (y.size() != pair.ambient()) throw std::invalid_argument("oblique_apply_adjoint: dimension mismatch");
  if (pair.size() == 0) return VectorD::Zero(y.size());
  return pair.P() * pair.p_coefficients(pair.Q().transpose() * y);
}

VectorD sketched_oblique_apply(const ObliquePair& pair, const Eigen::Ref<const VectorD>& x,
                               const Eigen::Ref<const VectorD>& sx) {
  if (!pair.is_sketched()) throw std::logic_error("sketched_oblique_apply: pair is not sketched");
  if (x.size() != pair.ambient() || sx.size() != pair.sketch_rows())
    throw std::invalid_argument("sketched_oblique_apply: dimension mismatch");
  if (pair.size() == 0) return VectorD::Zero(x.size());
  return pair.Q() * pair.q_coefficients(pair.SP().transpose() * sx);
}

VectorD sketched_oblique_apply_adjoint(const ObliquePair& pair, const Eigen::Ref<const VectorD>& y,
                                       const Eigen::Ref<const VectorD>& sy) {
  if (!pair.is_sketched()) throw std::logic_error("sketched_oblique_apply_adjoint: pair is not sketched");
  if (y.size() != pair.ambient() || sy.size() != pair.sketch_rows())
    throw std::invalid_argument("sketched_oblique_apply_adjoint: dimension mismatch");
  if (pair.size() == 0) return VectorD::Zero(y.size());
  return pair.P() * pair.p_coefficients(pair.SQ().transpose() * sy);
}

}  // namespace rtsgs
