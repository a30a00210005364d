#include "cauto/distribution.hpp"

#include <cmath>

#include "cauto/error.hpp"

namespace cauto {

bool is_distribution(std::span<const double> d, double tol) {
  if (d.empty()) return false;
  double sum = 0.0;
  for (double v : d) {
    if (!(v >= 0.0) || !std::isfinite(v)) return false;
    sum += v;
  }
  return std::abs(sum - 1.0) <= tol;
}

double entropy(std::span<const double> d) {
  double h = 0.0;
  for (double p : d)
    if (p > 0.0) h -= p * std::log2(p);
  return h < 0.0 ? 0.0 : h;
}

double sup_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InputError("distribution size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

bool normalize(std::vector<double>& d) {
  double sum = 0.0;
  for (double v : d) sum += v;
  if (!(sum > 0.0)) return false;
  for (double& v : d) v /= sum;
  return true;
}

Distribution uniform(std::size_t k) { return Distribution(k, 1.0 / static_cast<double>(k)); }

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw InputError("ragged matrix rows");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<double> left_multiply(std::span<const double> v, const Matrix& m) {
  if (v.size() != m.rows()) throw InputError("vector/matrix size mismatch");
  std::vector<double> out(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0.0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  }
  return out;
}

}  // namespace cauto
