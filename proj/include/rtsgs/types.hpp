#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace rtsgs {

using Index = Eigen::Index;

/// Column-major dense matrix in a chosen IEEE format.
template <typename T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor>;

template <typename T>
using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using MatrixD = Matrix<double>;
using MatrixF = Matrix<float>;
using VectorD = Vector<double>;
using VectorF = Vector<float>;
using MatrixC = Matrix<std::complex<double>>;
using VectorC = Vector<std::complex<double>>;

/// Unit roundoff of a floating format (half the machine epsilon).
template <typename T>
constexpr double unit_roundoff() {
  return static_cast<double>(std::numeric_limits<T>::epsilon()) / 2.0;
}

/// Input that cannot be processed at all (zero vector, rank-deficient basis).
class DegenerateInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A pivot of a small factorization fell below the breakdown tolerance.
class NearBreakdown : public std::runtime_error {
 public:
  NearBreakdown(const std::string& what, double pivot)
      : std::runtime_error(what + " (pivot magnitude " + std::to_string(pivot) + ")"),
        pivot_(pivot) {}

  double pivot() const noexcept { return pivot_; }

 private:
  double pivot_;
};

/// Outcome of a recurrence that may stop early.
struct Status {
  enum class Kind {
    Complete,       ///< all requested columns were produced
    Breakdown,      ///< |d_i| fell below the breakdown tolerance at `step`
    NearBreakdown,  ///< the gram factorization became singular at `step`
  };

  Kind kind = Kind::Complete;
  Index step = 0;      ///< 1-based step that failed; 0 when complete
  double value = 0.0;  ///< offending |d_i| or pivot magnitude

  bool complete() const noexcept { return kind == Kind::Complete; }
};

std::string to_string(const Status& status);

}  // namespace rtsgs
