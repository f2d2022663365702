// Acceptance suite: one PASS/FAIL line per criterion.
//
//   rtsgs_acceptance            run everything
//   rtsgs_acceptance 1 6 7      run the listed criteria only
//
// Exit status is 0 only when every selected criterion passes.

#include "rtsgs/biortho.hpp"
#include "rtsgs/diagnostics.hpp"
#include "rtsgs/lanczos.hpp"
#include "rtsgs/projectors.hpp"
#include "rtsgs/random.hpp"
#include "rtsgs/rbiortho.hpp"
#include "rtsgs/sketching.hpp"
#include "rtsgs/testmatrices.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace rtsgs;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [violated: " << what << "]";
    }
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Row {
  std::string label;
  double seconds = 0.0;
  double cond_Q = 0.0, cond_P = 0.0;
  double err_X = 0.0, err_Y = 0.0;
  double biorth = 0.0;
  bool complete = true;
};

Row run_det(const MatrixD& X, const MatrixD& Y, Variant v, int passes) {
  BiorthConfig cfg;
  cfg.variant = v;
  cfg.passes = passes;
  const auto t0 = std::chrono::steady_clock::now();
  const BiorthResult r = two_sided_gs(X, Y, cfg);
  Row row;
  row.seconds = seconds_since(t0);
  row.label = to_string(v) + (passes > 1 ? std::to_string(passes) : "");
  row.complete = r.status.complete();
  const Index k = r.columns();
  row.cond_Q = cond2(r.Q);
  row.cond_P = cond2(r.P);
  row.err_X = decomposition_error(X.leftCols(k), r.Q, r.TX);
  row.err_Y = decomposition_error(Y.leftCols(k), r.P, r.TY);
  row.biorth = biorth_loss(r.Q, r.P);
  return row;
}

Row run_rand(const MatrixD& X, const MatrixD& Y, Variant v, int passes, const SketchOperator& op, bool mixed) {
  RBiorthConfig cfg;
  cfg.variant = v;
  cfg.passes = passes;
  cfg.sketch = op;
  if (mixed) cfg.precision = PrecisionPolicy::mixed();
  const auto t0 = std::chrono::steady_clock::now();
  const RBiorthResult r = randomized_two_sided_gs(X, Y, cfg);
  Row row;
  row.seconds = seconds_since(t0);
  row.label = std::string(mixed ? "mp-" : "") + "r" + to_string(v) + (passes > 1 ? std::to_string(passes) : "");
  row.complete = r.status.complete();
  const Index k = r.columns();
  row.cond_Q = cond2(r.Q);
  row.cond_P = cond2(r.P);
  row.err_X = decomposition_error(X.leftCols(k), r.Q, r.TX);
  row.err_Y = decomposition_error(Y.leftCols(k), r.P, r.TY);
  // sketched loss recomputed from the returned sketches
  MatrixD G = r.SP.transpose() * r.SQ;
  G.diagonal().array() -= 1.0;
  row.biorth = G.norm();
  return row;
}

std::string summary(const Row& r) {
  return r.label + "(cond " + sci(std::max(r.cond_Q, r.cond_P)) + ", biorth " + sci(r.biorth) + ", " +
         sci(r.seconds) + " s)";
}

// Sketch used by the table reproductions: sparse sign, default s and zeta.
SketchOperator table_sketch(Index n, Index m) {
  const Index s = default_sketch_size(n, m);
  return new_sparse_sign(s, n, default_zeta(s), derive_seed(1, 7));
}

// 1 ------------------------------------------------------------------------
Verdict table1() {
  Verdict v;
  const Index n = 10000, m = 200;
  const auto [X, Y] = gen_ill_conditioned(n, m);
  const auto op = table_sketch(n, m);
  const Row det[] = {run_det(X, Y, Variant::MGS, 2), run_det(X, Y, Variant::CGS, 3), run_det(X, Y, Variant::CGS_O, 2)};
  const Row rnd[] = {run_rand(X, Y, Variant::MGS, 2, op, false), run_rand(X, Y, Variant::CGS, 3, op, false),
                     run_rand(X, Y, Variant::CGS_O, 2, op, false)};
  for (const Row& r : det) {
    v.detail << ' ' << summary(r);
    v.require(r.cond_Q >= 1e9, r.label + " cond(Q) >= 1e9");
    v.require(r.seconds <= 60.0, r.label + " runtime <= 60 s");
  }
  for (const Row& r : rnd) {
    v.detail << ' ' << summary(r);
    v.require(r.complete, r.label + " completes");
    v.require(r.biorth <= 1e-8, r.label + " sketch-biorth <= 1e-8");
    v.require(r.cond_Q <= 1e7 && r.cond_P <= 1e7, r.label + " cond(Q), cond(P) <= 1e7");
    v.require(r.seconds <= 60.0, r.label + " runtime <= 60 s");
  }
  return v;
}

// 2 ------------------------------------------------------------------------
Verdict table2() {
  Verdict v;
  const Index n = 10000, m = 500;
  const auto [X, Y] = gen_gaussian_pair(n, m, 1);
  const auto op = table_sketch(n, m);
  struct Spec {
    Variant variant;
    int passes;
  };
  const Spec specs[] = {{Variant::MGS, 1}, {Variant::MGS, 2},   {Variant::CGS, 1}, {Variant::CGS, 2},
                        {Variant::CGS, 3}, {Variant::CGS_O, 1}, {Variant::CGS_O, 2}};
  for (bool randomized : {false, true})
    for (const Spec& s : specs) {
      const Row r = randomized ? run_rand(X, Y, s.variant, s.passes, op, false) : run_det(X, Y, s.variant, s.passes);
      v.require(r.seconds <= 120.0, r.label + " runtime <= 120 s");
      if (s.passes >= 2) {
        v.detail << ' ' << r.label << ' ' << sci(r.biorth);
        v.require(r.complete && r.biorth <= 1e-8, r.label + " (sketch-)biorth <= 1e-8");
      } else if (s.variant == Variant::CGS) {
        v.detail << ' ' << r.label << ' ' << sci(r.biorth);
        v.require(r.biorth > 1.0, r.label + " (sketch-)biorth > 1");
      }
    }
  return v;
}

// 3 ------------------------------------------------------------------------
Verdict table4() {
  Verdict v;
  const Index n = 10000, m = 200;
  const auto [X, Y] = gen_ill_conditioned(n, m);
  const auto op = table_sketch(n, m);
  const Row rows[] = {run_rand(X, Y, Variant::MGS, 2, op, true), run_rand(X, Y, Variant::CGS, 3, op, true),
                      run_rand(X, Y, Variant::CGS_O, 2, op, true)};
  for (const Row& r : rows) {
    v.detail << ' ' << r.label << "(biorth " << sci(r.biorth) << ", err_X " << sci(r.err_X) << ")";
    v.require(r.complete, r.label + " completes");
    v.require(r.biorth <= 1e-9, r.label + " sketch-biorth <= 1e-9");
    v.require(r.err_X >= 1e-5 && r.err_X <= 1e-1, r.label + " err(X) in [1e-5, 1e-1]");
  }
  return v;
}

// 4 ------------------------------------------------------------------------
Verdict fig1() {
  Verdict v;
  const Index n = 10000, trials = 1000;
  const std::vector<Index> grid = {100, 500, 1000};
  auto attempt = [&](std::uint64_t seed, std::ostringstream& note) {
    bool ok = true;
    const auto cells = sketched_orthogonal_ip_experiment(n, grid, trials, {SketchKind::Gaussian}, seed);
    for (const auto& c : cells) {
      const Index small_ip = c.count_below(1e-8);
      const Index small_self = c.self_count_below(0.1);
      note << " s=" << c.s << ": " << small_ip << " ip<=1e-8, " << small_self << " self<=0.1, min " << sci(c.min) << ';';
      ok = ok && small_ip <= 2 && small_self == 0;
    }
    // second bound at the smallest size it is stated for
    const auto s50 = sketched_orthogonal_ip_experiment(n, {50}, trials, {SketchKind::Gaussian}, seed);
    note << " s=50: " << s50[0].self_count_below(0.1) << " self<=0.1;";
    return ok && s50[0].self_count_below(0.1) == 0;
  };
  std::ostringstream first;
  bool ok = attempt(1, first);
  v.detail << " seed 1:" << first.str();
  if (!ok) {
    // statistical test: one rerun with a fresh seed before declaring a defect
    std::ostringstream second;
    ok = attempt(2, second);
    v.detail << " rerun seed 2:" << second.str();
  }
  v.require(ok, "at most 2 of 1000 trials with |<Ωx,Ωy>| <= 1e-8 and none with <Ωx,Ωx> <= 0.1");
  return v;
}

// 5 ------------------------------------------------------------------------
Verdict fig5() {
  Verdict v;
  const Index n = 1000, m = 100, k = 10;
  const MatrixD Adense = gen_prescribed_spectrum(decaying_spectrum(n, 100.0), derive_seed(1, 13));
  const auto A = MatrixOracle::dense(Adense);
  const VectorD q1 = gaussian_matrix(n, 1, derive_seed(1, 11)).col(0);

  BiorthConfig bc;
  bc.variant = Variant::MGS;
  bc.passes = 2;
  const LanczosResult det = nonsym_lanczos(A, q1, q1, m, bc);

  RBiorthConfig rc;
  rc.variant = Variant::CGS_O;
  rc.passes = 2;
  const Index s = default_sketch_size(n, m + 1);
  rc.sketch = new_sparse_sign(s, n, default_zeta(s), derive_seed(1, 7));
  const LanczosResult rnd = rand_nonsym_lanczos(A, q1, q1, m, rc);

  v.require(det.status.complete() && rnd.status.complete(), "both runs complete");
  const auto dt = ritz_triplets(A, det, k);
  const auto rt = ritz_triplets(A, rnd, k);
  v.require(dt.size() == static_cast<std::size_t>(k) && rt.size() == static_cast<std::size_t>(k), "10 triplets each");

  // independent residual: ‖Ax - θx‖/‖x‖ from the dense matrix
  auto residual = [&](const RitzTriplet& t) {
    const VectorC Ax = Adense.cast<std::complex<double>>() * t.x;
    return (Ax - t.theta * t.x).norm() / t.x.norm();
  };
  double worst_det = 0.0, worst_rnd = 0.0, worst_match = 0.0, worst_eig = 0.0;
  const VectorD lambda = decaying_spectrum(n, 100.0).eigenvalues;
  for (std::size_t i = 0; i < dt.size(); ++i) worst_det = std::max(worst_det, residual(dt[i]));
  for (std::size_t i = 0; i < rt.size(); ++i) {
    worst_rnd = std::max(worst_rnd, residual(rt[i]));
    double nearest = INFINITY;
    for (const auto& d : dt) nearest = std::min(nearest, std::abs(rt[i].theta - d.theta));
    worst_match = std::max(worst_match, nearest);
    worst_eig = std::max(worst_eig, std::abs(rt[i].theta - lambda(static_cast<Index>(i))));
  }
  v.detail << " max residual MGS2 " << sci(worst_det) << ", rCGS_O2 " << sci(worst_rnd) << "; max |θ_rand - θ_det| "
           << sci(worst_match) << "; max |θ_rand - λ_i| " << sci(worst_eig) << ';';
  v.require(worst_det <= 1e-6, "MGS2 top-10 residuals <= 1e-6");
  v.require(worst_rnd <= 1e-6, "rCGS_O2 top-10 residuals <= 1e-6");
  v.require(worst_match <= 1e-6, "randomized Ritz values match deterministic ones to 1e-6");

  // ghost guard over all converged Ritz values of each run
  for (const auto* res : {&det, &rnd}) {
    const auto all = ritz_triplets(A, *res, res->steps());
    std::vector<std::complex<double>> converged;
    for (const auto& t : all)
      if (residual(t) < 1e-6) converged.push_back(t.theta);
    double closest = INFINITY;
    for (std::size_t i = 0; i < converged.size(); ++i)
      for (std::size_t j = i + 1; j < converged.size(); ++j)
        closest = std::min(closest, std::abs(converged[i] - converged[j]));
    const std::string who = res == &det ? "MGS2" : "rCGS_O2";
    v.detail << ' ' << who << ": " << converged.size() << " converged, closest pair " << sci(closest) << ';';
    v.require(closest > 1e-8, who + " has no duplicated converged Ritz value");
  }
  return v;
}

// 6 ------------------------------------------------------------------------
// Oracle written here: dense monic least squares over the Krylov basis.
VectorD monic_minimizer(const MatrixD& A, const VectorD& start, const MatrixD& W, Index m) {
  const Index n = A.rows();
  MatrixD K(n, m + 1);
  K.col(0) = start;
  for (Index j = 1; j <= m; ++j) K.col(j) = A * K.col(j - 1);
  const MatrixD M = W.transpose() * K.leftCols(m);
  const VectorD rhs = -(W.transpose() * K.col(m));
  return M.fullPivHouseholderQr().solve(rhs);
}

VectorD charpoly_from_eigs(const MatrixD& H) {
  const VectorC ev = Eigen::EigenSolver<MatrixD>(H, false).eigenvalues();
  VectorC c = VectorC::Zero(ev.size() + 1);
  c(0) = 1.0;  // coefficients of the monic polynomial, c(j) multiplies z^j after the loop
  for (Index i = 0; i < ev.size(); ++i) {
    VectorC next = VectorC::Zero(c.size());
    for (Index j = 0; j <= i; ++j) {
      next(j + 1) += c(j);
      next(j) -= ev(i) * c(j);
    }
    c = next;
  }
  return c.head(ev.size()).real();
}

double rel_gap(const VectorD& a, const VectorD& b) {
  double g = 0.0;
  for (Index i = 0; i < a.size(); ++i) {
    const double den = std::max(std::abs(a(i)), std::abs(b(i)));
    if (den > 0.0) g = std::max(g, std::abs(a(i) - b(i)) / den);
  }
  return g;
}

Verdict prop51() {
  Verdict v;
  const Index n = 8, m = 3;
  const auto t0 = std::chrono::steady_clock::now();
  double worst_H = 0.0, worst_T = 0.0, worst_lib = 0.0;
  for (std::uint64_t t = 0; t < 20; ++t) {
    const MatrixD A = gaussian_matrix(n, n, derive_seed(51, t, 1));
    const VectorD b = gaussian_matrix(n, 1, derive_seed(51, t, 2)).col(0);
    const VectorD c = gaussian_matrix(n, 1, derive_seed(51, t, 3)).col(0);
    RBiorthConfig rc;
    rc.variant = Variant::CGS_O;
    rc.passes = 2;
    rc.sketch = new_gaussian(t % 2 == 0 ? 8 : 6, n, derive_seed(51, t, 4));
    const LanczosResult res = rand_nonsym_lanczos(MatrixOracle::dense(A), b, c, m, rc);
    if (res.steps() < m) {
      v.require(false, "instance " + std::to_string(t) + " completes");
      continue;
    }
    const VectorD pH = charpoly_from_eigs(res.H), pT = charpoly_from_eigs(res.T);
    const VectorD oH = monic_minimizer(A, b, rc.sketch.materialize().transpose() * res.SP, m);
    const VectorD oT = monic_minimizer(A.transpose(), c, rc.sketch.materialize().transpose() * res.SQ, m);
    worst_H = std::max(worst_H, rel_gap(pH, oH));
    worst_T = std::max(worst_T, rel_gap(pT, oT));
    // library check against the same instance
    const CharpolyCheck chk = charpoly_optimality_check(MatrixOracle::dense(A), b, c, m, rc);
    worst_lib = std::max({worst_lib, chk.gap, chk.gap_T});
  }
  const double secs = seconds_since(t0);
  v.detail << " max gap H " << sci(worst_H) << ", T " << sci(worst_T) << ", library check " << sci(worst_lib) << ", "
           << sci(secs) << " s;";
  v.require(worst_H <= 1e-8, "H_m gap <= 1e-8");
  v.require(worst_T <= 1e-8, "T_m gap <= 1e-8");
  v.require(worst_lib <= 1e-8, "library charpoly check gap <= 1e-8");
  v.require(secs <= 1.0, "runtime <= 1 s");
  return v;
}

// 7 ------------------------------------------------------------------------
double colwise(const MatrixD& A, const MatrixD& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) return INFINITY;
  double worst = 0.0;
  for (Index j = 0; j < B.cols(); ++j) worst = std::max(worst, (A.col(j) - B.col(j)).norm() / B.col(j).norm());
  return worst;
}

Verdict identity_reduction() {
  Verdict v;
  const Index n = 200, m = 20;
  const auto [X, Y] = gen_gaussian_pair(n, m, 707);
  v.require(cond2(X) < 10.0 && cond2(Y) < 10.0, "inputs well conditioned");
  double worst = 0.0;
  for (Variant var : {Variant::CGS, Variant::MGS, Variant::CGS_O})
    for (int passes : {1, 2, 3}) {
      BiorthConfig bc;
      bc.variant = var;
      bc.passes = passes;
      RBiorthConfig rc;
      rc.variant = var;
      rc.passes = passes;
      rc.sketch = SketchOperator::identity(n);
      const auto d = two_sided_gs(X, Y, bc);
      const auto r = randomized_two_sided_gs(X, Y, rc);
      worst = std::max({worst, colwise(r.Q, d.Q), colwise(r.P, d.P)});
    }
  v.detail << " biorthogonalization max columnwise " << sci(worst) << ';';
  v.require(worst <= 1e-12, "rCGS/rMGS/rCGS_O with identity sketch match CGS/MGS/CGS_O to 1e-12");

  const MatrixD A = gaussian_matrix(n, n, 708) / std::sqrt(static_cast<double>(n));
  const auto oracle = MatrixOracle::dense(A);
  const VectorD q1 = gaussian_matrix(n, 1, 709).col(0), p1 = gaussian_matrix(n, 1, 710).col(0);
  double worst_l = 0.0;
  for (Variant var : {Variant::CGS, Variant::MGS, Variant::CGS_O}) {
    BiorthConfig bc;
    bc.variant = var;
    bc.passes = 2;
    RBiorthConfig rc;
    rc.variant = var;
    rc.passes = 2;
    rc.sketch = SketchOperator::identity(n);
    const auto d = nonsym_lanczos(oracle, q1, p1, m, bc);
    const auto r = rand_nonsym_lanczos(oracle, q1, p1, m, rc);
    worst_l = std::max({worst_l, colwise(r.Q, d.Q), colwise(r.P, d.P)});
  }
  v.detail << " Lanczos max columnwise " << sci(worst_l) << ';';
  v.require(worst_l <= 1e-12, "randomized Lanczos with identity sketch matches deterministic Lanczos to 1e-12");
  return v;
}

// 8 ------------------------------------------------------------------------
Verdict projector_suite() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  const Index n = 60, m = 6, candidates = 200;
  double worst[3][4] = {};  // [proposition][item]
  for (std::uint64_t t = 0; t < 50; ++t) {
    auto g = [&](Index r, Index c, std::uint64_t tag) { return gaussian_matrix(r, c, derive_seed(80, t, tag)); };
    const VectorD x = g(n, 1, 1).col(0), y = g(n, 1, 2).col(0);

    // orthogonal projector: Q = P
    {
      const MatrixD Q = g(n, m, 3);
      const auto pair = ObliquePair::from_bases(Q, Q);
      const VectorD px = oblique_apply(pair, x), py = oblique_apply(pair, y);
      const MatrixD pinv = Q.completeOrthogonalDecomposition().pseudoInverse();
      worst[0][0] = std::max(worst[0][0], (Q.transpose() * (x - px)).norm() / (Q.norm() * x.norm()));
      worst[0][1] = std::max(worst[0][1], std::abs(px.dot(y) - x.dot(py)) / (x.norm() * y.norm()));
      const double best = (x - px).norm();
      for (Index c = 0; c < candidates; ++c) {
        const VectorD z = px + Q * g(m, 1, 100 + static_cast<std::uint64_t>(c)).col(0) * 1e-3;
        if ((x - z).norm() < best * (1 - 1e-14)) worst[0][2] = INFINITY;
      }
      const MatrixD U = Eigen::HouseholderQR<MatrixD>(Q).householderQ() * MatrixD::Identity(n, m);
      const VectorD pu = oblique_apply(ObliquePair::from_bases(U, U), x);
      worst[0][3] = std::max({worst[0][3], (px - Q * (pinv * x)).norm() / x.norm(),
                              (pu - U * (U.transpose() * x)).norm() / x.norm()});
    }
    // oblique projector with PᵀQ = I
    {
      const MatrixD Q = g(n, m, 4), Z = g(n, m, 5);
      const MatrixD P = Z * (Q.transpose() * Z).inverse();
      const auto pair = ObliquePair::from_bases(Q, P);
      const VectorD px = oblique_apply(pair, x), py = oblique_apply_adjoint(pair, y);
      const double scale = Q.norm() * P.norm();
      worst[1][0] = std::max(worst[1][0], (P.transpose() * (x - px)).norm() / (scale * x.norm()));
      worst[1][1] = std::max(worst[1][1], std::abs(px.dot(y) - x.dot(py)) / (scale * x.norm() * y.norm()));
      const double best = (P.transpose() * (x - px)).norm();
      for (Index c = 0; c < candidates; ++c) {
        const VectorD z = px + Q * g(m, 1, 300 + static_cast<std::uint64_t>(c)).col(0) * 1e-3;
        if ((P.transpose() * (x - z)).norm() < best - 1e-13 * scale * x.norm()) worst[1][2] = INFINITY;
      }
      const MatrixD Pi = Q * P.transpose();
      worst[1][3] = std::max({worst[1][3], (px - Pi * x).norm() / (scale * x.norm()),
                              (py - Pi.transpose() * y).norm() / (scale * y.norm())});
    }
    // sketched oblique projector with (ΩQ)ᵀΩP = I
    {
      const Index s = 4 * m;
      const SketchOperator op = t % 2 == 0 ? new_gaussian(s, n, derive_seed(80, t, 6))
                                           : new_sparse_sign(s, n, default_zeta(s), derive_seed(80, t, 6));
      const MatrixD Om = op.materialize();
      const MatrixD Q = g(n, m, 7), Z = g(n, m, 8);
      const MatrixD SQ = Om * Q;
      const MatrixD P = Z * (SQ.transpose() * (Om * Z)).inverse();
      const MatrixD SP = Om * P;
      const auto pair = ObliquePair::from_sketched_bases(Q, P, SQ, SP);
      const VectorD sx = Om * x, sy = Om * y;
      const VectorD px = sketched_oblique_apply(pair, x, sx), py = sketched_oblique_apply_adjoint(pair, y, sy);
      const double scale = SQ.norm() * SP.norm();
      worst[2][0] = std::max(worst[2][0], (SP.transpose() * (Om * (x - px))).norm() / (scale * sx.norm()));
      worst[2][1] = std::max(worst[2][1], std::abs((Om * px).dot(sy) - sx.dot(Om * py)) / (scale * sx.norm() * sy.norm()));
      const double best = (SP.transpose() * (Om * (x - px))).norm();
      for (Index c = 0; c < candidates; ++c) {
        const VectorD z = px + Q * g(m, 1, 500 + static_cast<std::uint64_t>(c)).col(0) * 1e-3;
        if ((SP.transpose() * (Om * (x - z))).norm() < best - 1e-13 * scale * sx.norm()) worst[2][2] = INFINITY;
      }
      const MatrixD Pi = Q * SP.transpose() * Om;
      const MatrixD Pi_general = Q * (SP.transpose() * SQ).inverse() * SP.transpose() * Om;
      worst[2][3] = std::max({worst[2][3], (px - Pi * x).norm() / (scale * x.norm()),
                              (px - Pi_general * x).norm() / (scale * x.norm())});
    }
  }
  const double secs = seconds_since(t0);
  const char* names[3] = {"orthogonal", "oblique", "sketched"};
  for (int p = 0; p < 3; ++p) {
    v.detail << ' ' << names[p] << " (i) " << sci(worst[p][0]) << " (ii) " << sci(worst[p][1]) << " (iii) "
             << (std::isinf(worst[p][2]) ? "beaten" : "ok") << " (iv) " << sci(worst[p][3]) << ';';
    for (int item = 0; item < 4; ++item)
      v.require(worst[p][item] <= 1e-10, std::string(names[p]) + " item " + std::to_string(item + 1));
  }
  v.detail << ' ' << sci(secs) << " s;";
  v.require(secs <= 5.0, "runtime <= 5 s");
  return v;
}

// 9 ------------------------------------------------------------------------
Verdict embedding() {
  Verdict v;
  const Index n = 10000, m = 20, s = 4 * m;
  const double eps = 0.9;
  for (SketchKind kind : {SketchKind::SparseSign, SketchKind::Gaussian}) {
    int good = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const MatrixD Q = gaussian_matrix(n, m, derive_seed(90, seed, 1));
      const SketchOperator op = kind == SketchKind::Gaussian ? new_gaussian(s, n, derive_seed(90, seed, 2))
                                                             : new_sparse_sign(s, n, default_zeta(s), derive_seed(90, seed, 2));
      const VectorD sv = Eigen::JacobiSVD<MatrixD>(Q).singularValues();
      const VectorD ssv = Eigen::JacobiSVD<MatrixD>(op.apply(Q)).singularValues();
      const bool upper = ssv(0) <= std::sqrt(1 + eps) * sv(0);
      const bool lower = ssv(m - 1) >= std::sqrt(1 - eps) * sv(m - 1);
      const double kq = sv(0) / sv(m - 1), ksq = ssv(0) / ssv(m - 1);
      const bool sandwich = kq >= std::sqrt((1 - eps) / (1 + eps)) * ksq && kq <= std::sqrt((1 + eps) / (1 - eps)) * ksq;
      if (upper && lower && sandwich) ++good;
    }
    v.detail << ' ' << to_string(kind) << ' ' << good << "/100;";
    v.require(good >= 95, to_string(kind) + " holds for >= 95 of 100 seeds");
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> all = {
      {1, "table1 ill-conditioned conditioning advantage", table1},
      {2, "table2 gaussian multi-pass biorthogonality", table2},
      {3, "table4 mixed precision", table4},
      {4, "fig1 sketched inner products of orthogonal pairs", fig1},
      {5, "fig5 eigensolver convergence and ghost guard", fig5},
      {6, "charpoly optimality of H and T", prop51},
      {7, "identity sketch reduction", identity_reduction},
      {8, "projector properties", projector_suite},
      {9, "embedding singular value bounds", embedding},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  bool all_pass = true;
  for (const auto& c : all) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    Verdict verdict;
    try {
      verdict = c.run();
    } catch (const std::exception& e) {
      verdict.pass = false;
      verdict.detail << " [exception: " << e.what() << "]";
    }
    all_pass = all_pass && verdict.pass;
    std::cout << (verdict.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "):"
              << verdict.detail.str() << std::endl;
  }
  return all_pass ? 0 : 1;
}
