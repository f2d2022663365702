#include "rtsgs/rbiortho.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rtsgs {

void RBiorthConfig::validate(Index n) const {
  if (passes < 1 || passes > 3) throw std::invalid_argument("passes must be 1, 2 or 3");
  if (!(breakdown_tol > 0.0 && breakdown_tol < 1.0)) throw std::invalid_argument("breakdown_tol must lie in (0, 1)");
  if (sketch.cols() != n)
    throw std::invalid_argument("sketch acts on R^" + std::to_string(sketch.cols()) + " but inputs live in R^" +
                                std::to_string(n));
}

template <typename Low>
SketchedTwoSidedGramSchmidt<Low>::SketchedTwoSidedGramSchmidt(Index capacity, RBiorthConfig cfg)
    : n_(cfg.sketch.cols()), s_(cfg.sketch.rows()), cfg_(std::move(cfg)) {
  cfg_.validate(n_);
  const Index cap = std::max<Index>(capacity, 1);
  Q_.resize(n_, cap);
  P_.resize(n_, cap);
  SQ_.resize(s_, cap);
  SP_.resize(s_, cap);
  if (cfg_.variant == Variant::CGS_O) lu_.reserve(cap);
}

template <typename Low>
StepOutcome SketchedTwoSidedGramSchmidt<Low>::append(const Eigen::Ref<const Vector<Low>>& x,
                                                     const Eigen::Ref<const Vector<Low>>& y) {
  if (x.size() != n_ || y.size() != n_) throw std::invalid_argument("randomized two-sided Gram-Schmidt: dimension mismatch");
  const Index k = k_;
  const SketchOperator& sketch = cfg_.sketch;
  StepOutcome out;
  out.coeff_q = VectorD::Zero(k);
  out.coeff_p = VectorD::Zero(k);

  Vector<Low> q = x, p = y;
  VectorD sq = sketch.apply(q), sp = sketch.apply(p);
  const auto Qk = Q_.leftCols(k);
  const auto Pk = P_.leftCols(k);
  const auto SQk = SQ_.leftCols(k);
  const auto SPk = SP_.leftCols(k);
  Index dots = 0;

  // Ω is applied once per new vector; afterwards the sketch follows every
  // update of q and p through the same combination of sketched columns.
  for (int pass = 0; pass < cfg_.passes && k > 0; ++pass) {
    switch (cfg_.variant) {
      case Variant::CGS:
      case Variant::CGS_O: {
        VectorD a = SPk.transpose() * sq;
        VectorD b = SQk.transpose() * sp;
        if (cfg_.variant == Variant::CGS_O) {
          a = lu_.solve(a);
          b = lu_.solve_transpose(b);
        }
        q.noalias() -= Qk * a.template cast<Low>();
        p.noalias() -= Pk * b.template cast<Low>();
        sq.noalias() -= SQk * a;
        sp.noalias() -= SPk * b;
        out.coeff_q += a;
        out.coeff_p += b;
        break;
      }
      case Variant::MGS: {
        for (Index j = 0; j < k; ++j) {
          const double a = SPk.col(j).dot(sq);
          q -= static_cast<Low>(a) * Qk.col(j);
          sq -= a * SQk.col(j);
          out.coeff_q(j) += a;
          const double b = SQk.col(j).dot(sp);
          p -= static_cast<Low>(b) * Pk.col(j);
          sp -= b * SPk.col(j);
          out.coeff_p(j) += b;
        }
        break;
      }
    }
    dots += 2 * k;
  }

  const double d = sp.dot(sq);
  ++dots;
  const double nsq = sq.norm(), nsp = sp.norm();
  out.d = d;
  out.inv_cos = d != 0.0 ? nsq * nsp / std::abs(d) : std::numeric_limits<double>::infinity();
  out.residual_q = q.template cast<double>();
  out.residual_p = p.template cast<double>();
  if (nsq == 0.0 || nsp == 0.0 || std::abs(d) <= cfg_.breakdown_tol * nsq * nsp) {
    out.sketched_dots = dots;
    out.status = {Status::Kind::Breakdown, k + 1, std::abs(d)};
    return out;
  }

  double alpha, beta;
  const double sgn = d > 0.0 ? 1.0 : -1.0;
  if (cfg_.normalization == Normalization::Balanced) {
    alpha = std::sqrt(nsp / (nsq * std::abs(d)));
    beta = sgn * std::sqrt(nsq / (nsp * std::abs(d)));
  } else {
    alpha = 1.0 / std::sqrt(std::abs(d));
    beta = sgn / std::sqrt(std::abs(d));
  }
  if constexpr (std::is_same_v<Low, double>) {
    q *= alpha;
    p *= beta;
  } else {
    q = (q.template cast<double>() * alpha).template cast<Low>();
    p = (p.template cast<double>() * beta).template cast<Low>();
  }
  sq *= alpha;
  sp *= beta;
  out.scale_q = 1.0 / alpha;
  out.scale_p = 1.0 / beta;

  if (k + 1 > Q_.cols()) {
    const Index cap = 2 * Q_.cols();
    auto regrow = [&](auto& M) {
      std::remove_reference_t<decltype(M)> bigger(M.rows(), cap);
      bigger.leftCols(k) = M.leftCols(k);
      M.swap(bigger);
    };
    regrow(Q_);
    regrow(P_);
    regrow(SQ_);
    regrow(SP_);
  }

  if (cfg_.variant == Variant::CGS_O) {
    VectorD col(k + 1);
    col.head(k) = SP_.leftCols(k).transpose() * sq;
    col(k) = sp.dot(sq);
    const VectorD row = SQ_.leftCols(k).transpose() * sp;
    dots += 2 * k + 1;
    try {
      lu_.extend(col, row);
    } catch (const NearBreakdown& e) {
      out.sketched_dots = dots;
      out.status = {Status::Kind::NearBreakdown, k + 1, e.pivot()};
      return out;
    }
  }
  out.sketched_dots = dots;
  Q_.col(k) = q;
  P_.col(k) = p;
  SQ_.col(k) = sq;
  SP_.col(k) = sp;
  ++k_;
  return out;
}

template class SketchedTwoSidedGramSchmidt<double>;
template class SketchedTwoSidedGramSchmidt<float>;

namespace {

template <typename Low>
RBiorthResult run_randomized(const Eigen::Ref<const MatrixD>& X, const Eigen::Ref<const MatrixD>& Y,
                             const RBiorthConfig& cfg) {
  const Index m = X.cols();
  const Matrix<Low> Xl = X.template cast<Low>();
  const Matrix<Low> Yl = Y.template cast<Low>();
  SketchedTwoSidedGramSchmidt<Low> gs(m, cfg);

  RBiorthResult res;
  MatrixD TX = MatrixD::Zero(m, m), TY = MatrixD::Zero(m, m);
  VectorD d(m);
  for (Index i = 0; i < m; ++i) {
    StepOutcome step = gs.append(Xl.col(i), Yl.col(i));
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
    res.diagnostics.sketched_dots.push_back(step.sketched_dots);
  }
  const Index k = gs.size();
  res.Q = gs.Q().template cast<double>();
  res.P = gs.P().template cast<double>();
  res.SQ = gs.SQ();
  res.SP = gs.SP();
  res.TX = TX.topLeftCorner(k, k);
  res.TY = TY.topLeftCorner(k, k);
  res.d = d.head(k);
  if (cfg.record_diagnostics) fill_prefix_series(res.diagnostics, res.Q, res.P, res.SQ, res.SP);
  return res;
}

}  // namespace

RBiorthResult randomized_two_sided_gs(const Eigen::Ref<const MatrixD>& X, const Eigen::Ref<const MatrixD>& Y,
                                      const RBiorthConfig& cfg) {
  if (X.rows() != Y.rows() || X.cols() != Y.cols())
    throw std::invalid_argument("randomized_two_sided_gs: X and Y differ in shape");
  if (X.cols() > X.rows()) throw std::invalid_argument("randomized_two_sided_gs: more columns than rows");
  cfg.validate(X.rows());
  if (cfg.sketch.rows() < X.cols())
    throw std::invalid_argument("randomized_two_sided_gs: sketch dimension smaller than column count");
  if (cfg.precision.is_mixed()) return run_randomized<float>(X, Y, cfg);
  return run_randomized<double>(X, Y, cfg);
}

double sketch_biorth_error(const Eigen::Ref<const MatrixD>& SQ, const Eigen::Ref<const MatrixD>& SP) {
  if (SQ.rows() != SP.rows() || SQ.cols() != SP.cols())
    throw std::invalid_argument("sketch_biorth_error: shape mismatch");
  MatrixD G = SP.transpose() * SQ;
  G.diagonal().array() -= 1.0;
  return G.norm();
}

}  // namespace rtsgs
