#pragma once

#include "rtsgs/types.hpp"

#include <Eigen/SparseCore>

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace rtsgs {

/// The file could not be opened or read.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The contents are not a supported Matrix Market file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads `%%MatrixMarket matrix coordinate real general` (and the
/// `symmetric` variant, which is expanded).  Duplicate entries are summed.
Eigen::SparseMatrix<double> read_matrix_market(std::istream& in);
Eigen::SparseMatrix<double> read_matrix_market(const std::string& path);

void write_matrix_market(std::ostream& out, const Eigen::SparseMatrix<double>& A);
void write_matrix_market(const std::string& path, const Eigen::SparseMatrix<double>& A);

}  // namespace rtsgs
