#include "rtsgs/testmatrices.hpp"

#include "rtsgs/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace rtsgs {

namespace {

double grid_point(Index i, Index count) {
  return count > 1 ? static_cast<double>(i) / static_cast<double>(count - 1) : 0.0;
}

double f_ill(double x, double y) { return std::sin(x + y) / (std::cos(100.0 * (y - x)) + 1.1); }
double g_ill(double x, double y) { return std::cos(x + y) / (std::sin(200.0 * (y - x)) + 1.2); }

void fill_normal(MatrixD& M, std::uint64_t key) {
  for (Index j = 0; j < M.cols(); ++j) {
    NormalStream normal(key, static_cast<std::uint64_t>(j));
    normal.fill({M.col(j).data(), static_cast<std::size_t>(M.rows())});
  }
}

// unit x and a unit y orthogonal to it, from two Gaussian draws
std::pair<VectorD, VectorD> orthonormal_pair(Index n, std::uint64_t key) {
  VectorD x(n), y(n);
  NormalStream gx(key, 0), gy(key, 1);
  gx.fill({x.data(), static_cast<std::size_t>(n)});
  gy.fill({y.data(), static_cast<std::size_t>(n)});
  x.normalize();
  y -= x.dot(y) * x;
  y -= x.dot(y) * x;
  y.normalize();
  return {std::move(x), std::move(y)};
}


// Ωx and Ωy for Ω = SketchOperator::gaussian(s, n, key), generated column by
// column so the s x n matrix is never stored.  Same draws as the operator;
// only the placement of the 1/√s factor differs (last-bit rounding).
void gaussian_sketch_pair(Index s, std::uint64_t key, const VectorD& x, const VectorD& y, VectorD& sx,
                          VectorD& sy) {
  sx.setZero(s);
  sy.setZero(s);
  VectorD g(s);
  for (Index j = 0; j < x.size(); ++j) {
    NormalStream normal(key, static_cast<std::uint64_t>(j));
    normal.fill({g.data(), static_cast<std::size_t>(s)});
    sx.noalias() += x(j) * g;
    sy.noalias() += y(j) * g;
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(s));
  sx *= scale;
  sy *= scale;
}

// Runs body(0..count-1) on up to hardware_concurrency threads.  Each index
// writes only its own output slot, so the result does not depend on the
// schedule.
template <typename Body>
void parallel_for(Index count, Body body) {
  const Index workers = std::min<Index>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (Index t = 0; t < count; ++t) body(t);
    return;
  }
  std::atomic<Index> next{0};
  std::vector<std::thread> pool;
  for (Index w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (Index t = next++; t < count; t = next++) body(t);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

std::pair<MatrixD, MatrixD> gen_ill_conditioned(Index n, Index m) {
  if (n < 1 || m < 1) throw std::invalid_argument("gen_ill_conditioned: dimensions must be positive");
  if (m > n) throw std::invalid_argument("gen_ill_conditioned: m exceeds n");
  MatrixD X(n, m), Y(n, m);
  for (Index j = 0; j < m; ++j) {
    const double y = grid_point(j, m);
    for (Index i = 0; i < n; ++i) {
      const double x = grid_point(i, n);
      X(i, j) = f_ill(x, y);
      Y(i, j) = g_ill(x, y);
    }
  }
  return {std::move(X), std::move(Y)};
}

MatrixD gaussian_matrix(Index n, Index m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw std::invalid_argument("gaussian_matrix: dimensions must be positive");
  MatrixD M(n, m);
  fill_normal(M, seed);
  return M;
}

std::pair<MatrixD, MatrixD> gen_gaussian_pair(Index n, Index m, std::uint64_t seed) {
  if (m > n) throw std::invalid_argument("gen_gaussian_pair: m exceeds n");
  return {gaussian_matrix(n, m, derive_seed(seed, 1)), gaussian_matrix(n, m, derive_seed(seed, 2))};
}

void SpectrumSpec::validate() const {
  if (n < 1) throw std::invalid_argument("SpectrumSpec: n must be positive");
  if (eigenvalues.size() != n) throw std::invalid_argument("SpectrumSpec: need exactly n eigenvalues");
  if (!eigenvalues.allFinite()) throw std::invalid_argument("SpectrumSpec: eigenvalues must be finite");
  if (!(cond_X >= 1.0) || !std::isfinite(cond_X)) throw std::invalid_argument("SpectrumSpec: cond_X must be >= 1");
}

SpectrumSpec decaying_spectrum(Index n, double cond_X) {
  SpectrumSpec spec;
  spec.n = n;
  spec.cond_X = cond_X;
  spec.eigenvalues.resize(n);
  const double lambda15 = std::pow(0.95, 15);
  for (Index i = 1; i <= n; ++i)
    spec.eigenvalues(i - 1) = i <= 15 ? std::pow(0.95, static_cast<double>(i))
                                      : std::pow(0.99, static_cast<double>(i - 15)) * lambda15;
  return spec;
}

MatrixD random_orthogonal(Index n, std::uint64_t seed) {
  const MatrixD G = gaussian_matrix(n, n, seed);
  Eigen::HouseholderQR<MatrixD> qr(G);
  MatrixD Q = qr.householderQ();
  for (Index j = 0; j < n; ++j)
    if (qr.matrixQR()(j, j) < 0.0) Q.col(j) = -Q.col(j);
  return Q;
}

SimilarityTransform gen_similarity(Index n, double cond_X, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_similarity: n must be positive");
  if (!(cond_X >= 1.0)) throw std::invalid_argument("gen_similarity: cond_X must be >= 1");
  SimilarityTransform out;
  out.sigma.resize(n);
  const double top = std::log10(cond_X);
  for (Index i = 0; i < n; ++i)
    out.sigma(i) = n > 1 ? std::pow(10.0, top * static_cast<double>(i) / static_cast<double>(n - 1)) : 1.0;
  const MatrixD U = random_orthogonal(n, derive_seed(seed, 1));
  const MatrixD V = random_orthogonal(n, derive_seed(seed, 2));
  out.X = U * out.sigma.asDiagonal() * V.transpose();
  return out;
}

MatrixD gen_prescribed_spectrum(const SpectrumSpec& spec, std::uint64_t seed) {
  spec.validate();
  const SimilarityTransform sim = gen_similarity(spec.n, spec.cond_X, seed);
  Eigen::PartialPivLU<MatrixD> lu(sim.X);
  return lu.solve(spec.eigenvalues.asDiagonal() * sim.X);
}

Index SketchedIpCell::count_below(double delta) const {
  return std::count_if(values.begin(), values.end(), [delta](double v) { return v <= delta; });
}

Index SketchedIpCell::self_count_below(double delta) const {
  return std::count_if(self_values.begin(), self_values.end(), [delta](double v) { return v <= delta; });
}

std::vector<SketchedIpCell> sketched_orthogonal_ip_experiment(Index n, const std::vector<Index>& s_grid,
                                                              Index trials,
                                                              const std::vector<SketchKind>& kinds,
                                                              std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("sketched_orthogonal_ip_experiment: n must be at least 2");
  if (trials < 1) throw std::invalid_argument("sketched_orthogonal_ip_experiment: trials must be positive");
  if (s_grid.empty() || kinds.empty()) throw std::invalid_argument("sketched_orthogonal_ip_experiment: empty grid");
  for (Index s : s_grid)
    if (s < 1 || s > n) throw std::invalid_argument("sketched_orthogonal_ip_experiment: s outside [1, n]");

  std::vector<SketchedIpCell> cells;
  for (SketchKind kind : kinds) {
    for (Index s : s_grid) {
      SketchedIpCell cell;
      cell.kind = kind;
      cell.s = kind == SketchKind::Identity ? n : s;
      cell.values.resize(static_cast<std::size_t>(trials));
      cell.self_values.resize(static_cast<std::size_t>(trials));
      parallel_for(trials, [&](Index t) {
        const auto [x, y] = orthonormal_pair(n, derive_seed(seed, 0x70a1, static_cast<std::uint64_t>(t)));
        const std::uint64_t key =
            derive_seed(seed, static_cast<std::uint64_t>(kind) + 1, static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(t));
        VectorD sx, sy;
        if (kind == SketchKind::Gaussian) {
          gaussian_sketch_pair(s, key, x, y, sx, sy);
        } else {
          const SketchOperator op = kind == SketchKind::SparseSign
                                        ? SketchOperator::sparse_sign(s, n, default_zeta(s), key)
                                        : SketchOperator::identity(n);
          sx = op.apply(x);
          sy = op.apply(y);
        }
        cell.values[static_cast<std::size_t>(t)] = std::abs(sx.dot(sy));
        cell.self_values[static_cast<std::size_t>(t)] = sx.squaredNorm();
      });
      cell.mean = std::accumulate(cell.values.begin(), cell.values.end(), 0.0) / static_cast<double>(trials);
      cell.min = *std::min_element(cell.values.begin(), cell.values.end());
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

std::vector<Index> default_fig1_grid() {
  std::vector<Index> grid;
  for (Index s = 25; s <= 1000; s += 25) grid.push_back(s);
  return grid;
}

}  // namespace rtsgs
