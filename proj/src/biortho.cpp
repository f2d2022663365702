#include "rtsgs/biortho.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rtsgs {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::CGS: return "CGS";
    case Variant::MGS: return "MGS";
    case Variant::CGS_O: return "CGS_O";
  }
  return "unknown";
}

Variant parse_variant(const std::string& name) {
  std::string key;
  for (char c : name) key += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (!key.empty() && key[0] == 'R') key.erase(0, 1);
  if (key == "CGS") return Variant::CGS;
  if (key == "MGS") return Variant::MGS;
  if (key == "CGS_O" || key == "CGSO" || key == "CGS-O") return Variant::CGS_O;
  throw std::invalid_argument("unknown variant '" + name + "'");
}

void BiorthConfig::validate() const {
  if (passes < 1 || passes > 3) throw std::invalid_argument("passes must be 1, 2 or 3");
  if (!(breakdown_tol > 0.0 && breakdown_tol < 1.0)) throw std::invalid_argument("breakdown_tol must lie in (0, 1)");
}

TwoSidedGramSchmidt::TwoSidedGramSchmidt(Index n, Index capacity, BiorthConfig cfg)
    : n_(n), cfg_(cfg), Q_(n, std::max<Index>(capacity, 1)), P_(n, std::max<Index>(capacity, 1)) {
  cfg_.validate();
  if (cfg_.variant == Variant::CGS_O) lu_.reserve(std::max<Index>(capacity, 1));
}

void TwoSidedGramSchmidt::project(VectorD& q, VectorD& p, VectorD& cq, VectorD& cp) {
  const Index k = k_;
  if (k == 0) return;
  const auto Qk = Q_.leftCols(k);
  const auto Pk = P_.leftCols(k);
  switch (cfg_.variant) {
    case Variant::CGS: {
      const VectorD a = Pk.transpose() * q;
      const VectorD b = Qk.transpose() * p;
      q.noalias() -= Qk * a;
      p.noalias() -= Pk * b;
      cq += a;
      cp += b;
      break;
    }
    case Variant::MGS: {
      for (Index j = 0; j < k; ++j) {
        const double a = Pk.col(j).dot(q);
        q -= a * Qk.col(j);
        cq(j) += a;
        const double b = Qk.col(j).dot(p);
        p -= b * Pk.col(j);
        cp(j) += b;
      }
      break;
    }
    case Variant::CGS_O: {
      const VectorD a = lu_.solve(Pk.transpose() * q);
      const VectorD b = lu_.solve_transpose(Qk.transpose() * p);
      q.noalias() -= Qk * a;
      p.noalias() -= Pk * b;
      cq += a;
      cp += b;
      break;
    }
  }
}

StepOutcome TwoSidedGramSchmidt::append(const Eigen::Ref<const VectorD>& x, const Eigen::Ref<const VectorD>& y) {
  if (x.size() != n_ || y.size() != n_) throw std::invalid_argument("two-sided Gram-Schmidt: dimension mismatch");
  const Index k = k_;
  StepOutcome out;
  VectorD q = x, p = y;
  out.coeff_q = VectorD::Zero(k);
  out.coeff_p = VectorD::Zero(k);
  for (int pass = 0; pass < cfg_.passes; ++pass) project(q, p, out.coeff_q, out.coeff_p);

  const double d = q.dot(p);
  const double nq = q.norm(), np = p.norm();
  out.d = d;
  out.inv_cos = d != 0.0 ? nq * np / std::abs(d) : std::numeric_limits<double>::infinity();
  out.residual_q = q;
  out.residual_p = p;
  if (nq == 0.0 || np == 0.0 || std::abs(d) <= cfg_.breakdown_tol * nq * np) {
    out.status = {Status::Kind::Breakdown, k + 1, std::abs(d)};
    return out;
  }

  double alpha, beta;
  const double sgn = d > 0.0 ? 1.0 : -1.0;
  if (cfg_.normalization == Normalization::Balanced) {
    alpha = std::sqrt(np / (nq * std::abs(d)));
    beta = sgn * std::sqrt(nq / (np * std::abs(d)));
  } else {
    alpha = 1.0 / std::sqrt(std::abs(d));
    beta = sgn / std::sqrt(std::abs(d));
  }
  q *= alpha;
  p *= beta;
  out.scale_q = 1.0 / alpha;
  out.scale_p = 1.0 / beta;

  if (k + 1 > Q_.cols()) {
    const Index cap = 2 * Q_.cols();
    MatrixD Qn(n_, cap), Pn(n_, cap);
    Qn.leftCols(k) = Q_.leftCols(k);
    Pn.leftCols(k) = P_.leftCols(k);
    Q_.swap(Qn);
    P_.swap(Pn);
  }

  if (cfg_.variant == Variant::CGS_O) {
    VectorD col(k + 1);
    col.head(k) = P_.leftCols(k).transpose() * q;
    col(k) = p.dot(q);
    const VectorD row = Q_.leftCols(k).transpose() * p;
    try {
      lu_.extend(col, row);
    } catch (const NearBreakdown& e) {
      out.status = {Status::Kind::NearBreakdown, k + 1, e.pivot()};
      return out;
    }
  }
  Q_.col(k) = q;
  P_.col(k) = p;
  ++k_;
  return out;
}

BiorthResult two_sided_gs(const Eigen::Ref<const MatrixD>& X, const Eigen::Ref<const MatrixD>& Y,
                          const BiorthConfig& cfg) {
  if (X.rows() != Y.rows() || X.cols() != Y.cols()) throw std::invalid_argument("two_sided_gs: X and Y differ in shape");
  if (X.cols() > X.rows()) throw std::invalid_argument("two_sided_gs: more columns than rows");
  cfg.validate();
  const Index n = X.rows(), m = X.cols();

  TwoSidedGramSchmidt gs(n, m, cfg);
  BiorthResult res;
  MatrixD TX = MatrixD::Zero(m, m), TY = MatrixD::Zero(m, m);
  VectorD d(m);
  for (Index i = 0; i < m; ++i) {
    StepOutcome step = gs.append(X.col(i), Y.col(i));
    if (!step.status.complete()) {
      res.status = step.status;
      break;
    }
    TX.col(i).head(i) = step.coeff_q;
    TX(i, i) = step.scale_q;
    TY.col(i).head(i) = step.coeff_p;
    TY(i, i) = step.scale_p;
    d(i) = step.d;
    res.diagnostics.d.push_back(step.d);
    res.diagnostics.inv_cos_angle.push_back(step.inv_cos);
    res.diagnostics.sketched_dots.push_back(0);
  }
  const Index k = gs.size();
  res.Q = gs.Q();
  res.P = gs.P();
  res.TX = TX.topLeftCorner(k, k);
  res.TY = TY.topLeftCorner(k, k);
  res.d = d.head(k);
  if (cfg.record_diagnostics) fill_prefix_series(res.diagnostics, res.Q, res.P, res.Q, res.P);
  return res;
}

}  // namespace rtsgs
