#include "rtsgs/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

namespace rtsgs {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

Eigen::SparseMatrix<double> read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("matrix market: empty input");
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket") throw FormatError("matrix market: missing %%MatrixMarket banner");
  object = lower(object);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix" || format != "coordinate")
    throw FormatError("matrix market: only 'matrix coordinate' is supported");
  if (field != "real" && field != "integer") throw FormatError("matrix market: field '" + field + "' is not real");
  if (symmetry != "general" && symmetry != "symmetric")
    throw FormatError("matrix market: symmetry '" + symmetry + "' is not supported");
  const bool symmetric = symmetry == "symmetric";

  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  long long rows = 0, cols = 0, nnz = 0;
  {
    std::istringstream size_line(line);
    if (!(size_line >> rows >> cols >> nnz) || rows < 1 || cols < 1 || nnz < 0)
      throw FormatError("matrix market: bad size line '" + line + "'");
  }

  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(symmetric ? 2 * nnz : nnz));
  for (long long k = 0; k < nnz; ++k) {
    long long i = 0, j = 0;
    double v = 0.0;
    if (!(in >> i >> j >> v)) throw FormatError("matrix market: expected " + std::to_string(nnz) + " entries");
    if (i < 1 || i > rows || j < 1 || j > cols) throw FormatError("matrix market: entry index out of range");
    entries.emplace_back(static_cast<Index>(i - 1), static_cast<Index>(j - 1), v);
    if (symmetric && i != j) entries.emplace_back(static_cast<Index>(j - 1), static_cast<Index>(i - 1), v);
  }
  Eigen::SparseMatrix<double> A(static_cast<Index>(rows), static_cast<Index>(cols));
  A.setFromTriplets(entries.begin(), entries.end());
  return A;
}

Eigen::SparseMatrix<double> read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const Eigen::SparseMatrix<double>& A) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << A.rows() << ' ' << A.cols() << ' ' << A.nonZeros() << '\n';
  out << std::setprecision(17);
  for (Index j = 0; j < A.outerSize(); ++j)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, j); it; ++it)
      out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
}

void write_matrix_market(const std::string& path, const Eigen::SparseMatrix<double>& A) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  write_matrix_market(out, A);
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace rtsgs
