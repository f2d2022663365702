#include "rtsgs/lanczos.hpp"

#include "rtsgs/random.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace rtsgs {

MatrixOracle MatrixOracle::dense(MatrixD A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("MatrixOracle: matrix must be square");
  auto shared = std::make_shared<const MatrixD>(std::move(A));
  MatrixOracle op;
  op.n = shared->rows();
  op.apply = [shared](const VectorD& x) -> VectorD { return (*shared) * x; };
  op.apply_transpose = [shared](const VectorD& x) -> VectorD { return shared->transpose() * x; };
  return op;
}

MatrixOracle MatrixOracle::sparse(Eigen::SparseMatrix<double> A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("MatrixOracle: matrix must be square");
  auto shared = std::make_shared<const Eigen::SparseMatrix<double>>(std::move(A));
  MatrixOracle op;
  op.n = shared->rows();
  op.apply = [shared](const VectorD& x) -> VectorD { return (*shared) * x; };
  op.apply_transpose = [shared](const VectorD& x) -> VectorD { return shared->transpose() * x; };
  return op;
}

double MatrixOracle::adjoint_defect(int probes, std::uint64_t seed) const {
  double worst = 0.0;
  for (int t = 0; t < probes; ++t) {
    VectorD x(n), y(n);
    NormalStream gx(seed, 2 * static_cast<std::uint64_t>(t)), gy(seed, 2 * static_cast<std::uint64_t>(t) + 1);
    gx.fill({x.data(), static_cast<std::size_t>(n)});
    gy.fill({y.data(), static_cast<std::size_t>(n)});
    const VectorD Ax = apply(x), Aty = apply_transpose(y);
    const double scale = Ax.norm() * y.norm() + x.norm() * Aty.norm();
    if (scale > 0.0) worst = std::max(worst, std::abs(Ax.dot(y) - x.dot(Aty)) / scale);
  }
  return worst;
}

namespace {

// Shared driver over the deterministic and sketched engines.  `Engine`
// exposes append(x, y), Q(), P(); `to_low` casts a binary64 vector into
// the engine's storage precision.
template <typename Engine, typename ToLow>
LanczosResult run_lanczos(Engine& gs, const MatrixOracle& A, const VectorD& q1, const VectorD& p1, Index m,
                          ToLow to_low, const SketchOperator* sketch) {
  LanczosResult res;
  res.randomized = sketch != nullptr;
  MatrixD H = MatrixD::Zero(m, m), T = MatrixD::Zero(m, m);

  StepOutcome first = gs.append(to_low(q1), to_low(p1));
  if (!first.status.complete()) {
    res.status = first.status;
    return res;
  }

  Index built = m;
  for (Index j = 0; j < m; ++j) {
    const VectorD qj = gs.Q().col(j).template cast<double>();
    const VectorD pj = gs.P().col(j).template cast<double>();
    StepOutcome step = gs.append(to_low(A.apply(qj)), to_low(A.apply_transpose(pj)));
    H.col(j).head(j + 1) = step.coeff_q;
    T.col(j).head(j + 1) = step.coeff_p;
    if (step.status.complete()) {
      if (j + 1 < m) {
        H(j + 1, j) = step.scale_q;
        T(j + 1, j) = step.scale_p;
      } else {
        res.delta_next = step.scale_q;
        res.beta_next = step.scale_p;
      }
      continue;
    }
    // Serious breakdown: keep the j+1 finished columns and leave the
    // unnormalized residuals as the trailing terms.
    res.status = step.status;
    built = j + 1;
    auto trailing = [&](const VectorD& r, double& scale, VectorD& next) {
      const double norm = sketch ? sketch->apply(r).norm() : r.norm();
      scale = norm;
      next = norm > 0.0 ? VectorD(r / norm) : VectorD::Zero(r.size());
    };
    trailing(step.residual_q, res.delta_next, res.q_next);
    trailing(step.residual_p, res.beta_next, res.p_next);
    break;
  }

  res.Q = gs.Q().leftCols(built).template cast<double>();
  res.P = gs.P().leftCols(built).template cast<double>();
  res.H = H.topLeftCorner(built, built);
  res.T = T.topLeftCorner(built, built);
  if (res.status.complete()) {
    res.q_next = gs.Q().col(m).template cast<double>();
    res.p_next = gs.P().col(m).template cast<double>();
  }
  if constexpr (requires { gs.SQ(); }) {
    res.SQ = gs.SQ().leftCols(built);
    res.SP = gs.SP().leftCols(built);
    if (res.status.complete()) {
      res.SQ_next = gs.SQ().col(m);
      res.SP_next = gs.SP().col(m);
    } else {
      res.SQ_next = sketch->apply(res.q_next);
      res.SP_next = sketch->apply(res.p_next);
    }
  }
  return res;
}

void check_start(const MatrixOracle& A, const VectorD& q1, const VectorD& p1, Index m) {
  if (!A.apply || !A.apply_transpose) throw std::invalid_argument("lanczos: oracle is incomplete");
  if (q1.size() != A.n || p1.size() != A.n) throw std::invalid_argument("lanczos: start vectors have wrong length");
  if (m < 1) throw std::invalid_argument("lanczos: m must be positive");
  if (m > A.n) throw std::invalid_argument("lanczos: m exceeds the dimension");
}

}  // namespace

LanczosResult nonsym_lanczos(const MatrixOracle& A, const VectorD& q1, const VectorD& p1, Index m,
                             const BiorthConfig& cfg) {
  check_start(A, q1, p1, m);
  if (q1.dot(p1) == 0.0) throw std::invalid_argument("lanczos: <q1, p1> = 0");
  TwoSidedGramSchmidt gs(A.n, m + 1, cfg);
  return run_lanczos(gs, A, q1, p1, m, [](const VectorD& v) -> const VectorD& { return v; }, nullptr);
}

LanczosResult rand_nonsym_lanczos(const MatrixOracle& A, const VectorD& q1, const VectorD& p1, Index m,
                                  const RBiorthConfig& cfg) {
  check_start(A, q1, p1, m);
  cfg.validate(A.n);
  if (cfg.sketch.rows() < m + 1) throw std::invalid_argument("lanczos: sketch dimension must be at least m + 1");
  if (cfg.sketch.apply(q1).dot(cfg.sketch.apply(p1)) == 0.0)
    throw std::invalid_argument("lanczos: <Ωq1, Ωp1> = 0");
  if (cfg.precision.is_mixed()) {
    SketchedTwoSidedGramSchmidt<float> gs(m + 1, cfg);
    return run_lanczos(gs, A, q1, p1, m, [](const VectorD& v) -> VectorF { return v.cast<float>(); }, &cfg.sketch);
  }
  SketchedTwoSidedGramSchmidt<double> gs(m + 1, cfg);
  return run_lanczos(gs, A, q1, p1, m, [](const VectorD& v) -> const VectorD& { return v; }, &cfg.sketch);
}

namespace {

MatrixD apply_columns(const std::function<VectorD(const VectorD&)>& op, const MatrixD& M) {
  MatrixD out(M.rows(), M.cols());
  for (Index j = 0; j < M.cols(); ++j) out.col(j) = op(M.col(j));
  return out;
}

}  // namespace

ProjectedPair projected_matrices(const MatrixOracle& A, const LanczosResult& res, const SketchOperator* sketch) {
  const MatrixD AQ = apply_columns(A.apply, res.Q);
  const MatrixD AtP = apply_columns(A.apply_transpose, res.P);
  if (sketch == nullptr) return {res.P.transpose() * AQ, res.Q.transpose() * AtP};
  const MatrixD SQ = sketch->apply(res.Q), SP = sketch->apply(res.P);
  return {SP.transpose() * sketch->apply(AQ), SQ.transpose() * sketch->apply(AtP)};
}

ArnoldiResidual arnoldi_residual(const MatrixOracle& A, const LanczosResult& res) {
  const Index m = res.steps();
  MatrixD R = apply_columns(A.apply, res.Q) - res.Q * res.H;
  MatrixD L = apply_columns(A.apply_transpose, res.P) - res.P * res.T;
  if (m > 0 && res.q_next.size() == R.rows()) R.col(m - 1) -= res.delta_next * res.q_next;
  if (m > 0 && res.p_next.size() == L.rows()) L.col(m - 1) -= res.beta_next * res.p_next;
  return {R.norm(), L.norm()};
}

ArnoldiResidual sketched_arnoldi_residual(const MatrixOracle& A, const LanczosResult& res,
                                          const SketchOperator& sketch) {
  const Index m = res.steps();
  const MatrixD SQ = sketch.apply(res.Q), SP = sketch.apply(res.P);
  MatrixD R = sketch.apply(apply_columns(A.apply, res.Q)) - SQ * res.H;
  MatrixD L = sketch.apply(apply_columns(A.apply_transpose, res.P)) - SP * res.T;
  if (m > 0 && res.q_next.size() == res.Q.rows()) R.col(m - 1) -= res.delta_next * sketch.apply(res.q_next);
  if (m > 0 && res.p_next.size() == res.P.rows()) L.col(m - 1) -= res.beta_next * sketch.apply(res.p_next);
  return {R.norm(), L.norm()};
}

namespace {

// ‖Av - θv‖ / ‖v‖ for complex v through a real oracle.
double complex_residual(const std::function<VectorD(const VectorD&)>& op, const VectorC& v,
                        std::complex<double> theta) {
  const VectorD re = v.real(), im = v.imag();
  const VectorC Av = op(re).cast<std::complex<double>>() + std::complex<double>(0.0, 1.0) * op(im).cast<std::complex<double>>();
  return (Av - theta * v).norm() / v.norm();
}

bool ritz_before(std::complex<double> a, std::complex<double> b) {
  if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

constexpr double kMatchTolerance = 1e-6;
constexpr double kEigvecConditionWarning = 1e10;

}  // namespace

std::vector<RitzTriplet> ritz_triplets_at(const MatrixOracle& A, const LanczosResult& res, Index j, Index k) {
  if (j < 0 || j > res.steps()) throw std::invalid_argument("ritz_triplets: j outside the finished steps");
  if (k < 0 || k > j) throw std::invalid_argument("ritz_triplets: k exceeds the subproblem size");
  std::vector<RitzTriplet> out;
  if (k == 0) return out;

  const MatrixD Hj = res.H.topLeftCorner(j, j);
  const MatrixD Lj = res.randomized ? MatrixD(res.T.topLeftCorner(j, j)) : MatrixD(Hj.transpose());
  Eigen::EigenSolver<MatrixD> right(Hj), left(Lj);
  if (right.info() != Eigen::Success || left.info() != Eigen::Success)
    throw std::runtime_error("ritz_triplets: small eigenproblem did not converge");
  const VectorC thetas = right.eigenvalues(), lthetas = left.eigenvalues();
  const MatrixC Xs = right.eigenvectors(), Ys = left.eigenvectors();

  const bool ill = [&] {
    const Eigen::JacobiSVD<MatrixC> svd(Xs);
    const auto& sv = svd.singularValues();
    return !(sv(sv.size() - 1) > 0.0) || sv(0) / sv(sv.size() - 1) > kEigvecConditionWarning;
  }();

  std::vector<Index> order(static_cast<std::size_t>(j));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return ritz_before(thetas(a), thetas(b)); });

  // greedy nearest-θ pairing in output order
  std::vector<bool> used(static_cast<std::size_t>(j), false);
  const MatrixC Qc = res.Q.leftCols(j).cast<std::complex<double>>();
  const MatrixC Pc = res.P.leftCols(j).cast<std::complex<double>>();
  for (Index t = 0; t < k; ++t) {
    const Index i = order[static_cast<std::size_t>(t)];
    Index best = -1;
    double dist = std::numeric_limits<double>::infinity();
    for (Index c = 0; c < j; ++c) {
      if (used[static_cast<std::size_t>(c)]) continue;
      const double dc = std::abs(lthetas(c) - thetas(i));
      if (dc < dist) {
        dist = dc;
        best = c;
      }
    }
    used[static_cast<std::size_t>(best)] = true;

    RitzTriplet r;
    r.theta = thetas(i);
    r.theta_left = lthetas(best);
    r.x = Qc * Xs.col(i);
    r.y = Pc * Ys.col(best);
    r.res_right = complex_residual(A.apply, r.x, r.theta);
    r.res_left = complex_residual(A.apply_transpose, r.y, r.theta_left);
    r.warning = ill || dist > kMatchTolerance;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<RitzTriplet> ritz_triplets(const MatrixOracle& A, const LanczosResult& res, Index k) {
  return ritz_triplets_at(A, res, res.steps(), k);
}

VectorD hessenberg_charpoly(const Eigen::Ref<const MatrixD>& M) {
  const Index m = M.rows();
  if (M.cols() != m) throw std::invalid_argument("hessenberg_charpoly: matrix must be square");
  // p[k] holds det(zI - M_k) in ascending coefficients; expansion along the
  // last column of the leading k x k block.
  std::vector<VectorD> p(static_cast<std::size_t>(m + 1));
  p[0] = VectorD::Ones(1);
  for (Index k = 1; k <= m; ++k) {
    VectorD next = VectorD::Zero(k + 1);
    const VectorD& prev = p[static_cast<std::size_t>(k - 1)];
    next.tail(k) += prev;
    next.head(k) -= M(k - 1, k - 1) * prev;
    double chain = 1.0;
    for (Index i = k - 1; i >= 1; --i) {
      chain *= M(i, i - 1);
      const VectorD& q = p[static_cast<std::size_t>(i - 1)];
      next.head(i) -= M(i - 1, k - 1) * chain * q;
    }
    p[static_cast<std::size_t>(k)] = std::move(next);
  }
  return p[static_cast<std::size_t>(m)].head(m);
}

namespace {

// Monic minimizer of ‖Wᵀ Ω q(op) v‖ over degree-m monic q.
VectorD monic_oracle(const std::function<VectorD(const VectorD&)>& op, const VectorD& v, Index m,
                     const SketchOperator& sketch, const MatrixD& W) {
  MatrixD K(v.size(), m + 1);
  K.col(0) = v;
  for (Index i = 1; i <= m; ++i) K.col(i) = op(K.col(i - 1));
  const MatrixD SK = sketch.apply(K);
  const MatrixD lhs = W.transpose() * SK.leftCols(m);
  const VectorD rhs = -(W.transpose() * SK.col(m));
  Eigen::ColPivHouseholderQR<MatrixD> qr(lhs);
  if (qr.rank() < m) throw DegenerateInput("charpoly oracle: singular sketched Krylov system");
  return qr.solve(rhs);
}

double coefficient_gap(const VectorD& a, const VectorD& b) {
  double gap = 0.0;
  for (Index k = 0; k < a.size(); ++k) {
    const double scale = std::max(std::abs(a(k)), std::abs(b(k)));
    if (scale > 0.0) gap = std::max(gap, std::abs(a(k) - b(k)) / scale);
  }
  return gap;
}

}  // namespace

CharpolyCheck charpoly_optimality_check(const MatrixOracle& A, const VectorD& b, const VectorD& c, Index m,
                                        const RBiorthConfig& cfg) {
  const LanczosResult res = rand_nonsym_lanczos(A, b, c, m, cfg);
  if (res.steps() < m) throw DegenerateInput("charpoly check: Lanczos stopped early (" + to_string(res.status) + ")");
  CharpolyCheck out;
  out.coeffs_lanczos = hessenberg_charpoly(res.H);
  out.coeffs_oracle = monic_oracle(A.apply, b, m, cfg.sketch, res.SP);
  out.gap = coefficient_gap(out.coeffs_lanczos, out.coeffs_oracle);
  out.coeffs_lanczos_T = hessenberg_charpoly(res.T);
  out.coeffs_oracle_T = monic_oracle(A.apply_transpose, c, m, cfg.sketch, res.SQ);
  out.gap_T = coefficient_gap(out.coeffs_lanczos_T, out.coeffs_oracle_T);
  return out;
}

}  // namespace rtsgs
