#include "rtsgs/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rtsgs {

std::string to_string(const Status& status) {
  switch (status.kind) {
    case Status::Kind::Complete: return "complete";
    case Status::Kind::Breakdown: return "breakdown at step " + std::to_string(status.step);
    case Status::Kind::NearBreakdown: return "near-breakdown at step " + std::to_string(status.step);
  }
  return "unknown";
}

double biorth_loss(const Eigen::Ref<const MatrixD>& Q, const Eigen::Ref<const MatrixD>& P) {
  if (Q.rows() != P.rows() || Q.cols() != P.cols()) throw std::invalid_argument("biorth_loss: shape mismatch");
  MatrixD G = P.transpose() * Q;
  G.diagonal().array() -= 1.0;
  return G.norm();
}

double decomposition_error(const Eigen::Ref<const MatrixD>& X, const Eigen::Ref<const MatrixD>& Q,
                           const Eigen::Ref<const MatrixD>& TX) {
  if (X.rows() != Q.rows() || Q.cols() != TX.rows() || X.cols() != TX.cols())
    throw std::invalid_argument("decomposition_error: shape mismatch");
  return (X - Q * TX).norm();
}

VectorD singular_values(const Eigen::Ref<const MatrixD>& M) {
  if (M.rows() > M.cols()) {
    Eigen::HouseholderQR<MatrixD> qr(M);
    const MatrixD R = qr.matrixQR().topRows(M.cols()).triangularView<Eigen::Upper>();
    return Eigen::JacobiSVD<MatrixD>(R).singularValues();
  }
  return Eigen::JacobiSVD<MatrixD>(M).singularValues();
}

double cond2(const Eigen::Ref<const MatrixD>& M) {
  if (M.size() == 0 || M.cwiseAbs().maxCoeff() == 0.0) throw DegenerateInput("cond2: zero matrix");
  const VectorD sv = singular_values(M);
  const double smin = sv(sv.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

double angle_inv_cos(const Eigen::Ref<const VectorD>& q, const Eigen::Ref<const VectorD>& p) {
  if (q.size() != p.size()) throw std::invalid_argument("angle_inv_cos: size mismatch");
  const double nq = q.norm(), np = p.norm();
  if (nq == 0.0 || np == 0.0) throw DegenerateInput("angle_inv_cos: zero vector");
  const double ip = q.dot(p);
  if (ip == 0.0) return std::numeric_limits<double>::infinity();
  return nq * np / std::abs(ip);
}

std::vector<double> prefix_condition_numbers(const Eigen::Ref<const MatrixD>& Q) {
  const Index k = Q.cols();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(k));
  if (k == 0) return out;
  Eigen::HouseholderQR<MatrixD> qr(Q);
  const MatrixD R = qr.matrixQR().topRows(std::min(Q.rows(), k)).triangularView<Eigen::Upper>();
  for (Index i = 1; i <= k; ++i) {
    const MatrixD Ri = R.topLeftCorner(std::min(i, R.rows()), i);
    // divide and conquer is fast but may flush tiny values to zero
    VectorD sv = Eigen::BDCSVD<MatrixD>(Ri).singularValues();
    if (sv(sv.size() - 1) == 0.0) sv = Eigen::JacobiSVD<MatrixD>(Ri).singularValues();
    const double smin = sv(sv.size() - 1);
    out.push_back(smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity());
  }
  return out;
}

std::vector<double> prefix_biorth_loss(const Eigen::Ref<const MatrixD>& A, const Eigen::Ref<const MatrixD>& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) throw std::invalid_argument("prefix_biorth_loss: shape mismatch");
  MatrixD G = B.transpose() * A;
  G.diagonal().array() -= 1.0;
  std::vector<double> out;
  double sumsq = 0.0;
  for (Index i = 0; i < G.cols(); ++i) {
    sumsq += G.row(i).head(i).squaredNorm() + G.col(i).head(i + 1).squaredNorm();
    out.push_back(std::sqrt(sumsq));
  }
  return out;
}

void fill_prefix_series(IterationDiagnostics& diag, const Eigen::Ref<const MatrixD>& Q,
                        const Eigen::Ref<const MatrixD>& P, const Eigen::Ref<const MatrixD>& GQ,
                        const Eigen::Ref<const MatrixD>& GP) {
  const Index k = Q.cols();
  diag.step.resize(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) diag.step[static_cast<std::size_t>(i)] = i + 1;
  diag.cond_Q = prefix_condition_numbers(Q);
  diag.cond_P = prefix_condition_numbers(P);
  diag.biorth_loss = prefix_biorth_loss(GQ, GP);
}

}  // namespace rtsgs
