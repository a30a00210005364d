#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cauto {

// Non-negative weights summing to one. Used both for next-symbol
// distributions and for distributions over machine states.
using Distribution = std::vector<double>;

inline constexpr double kDistributionTolerance = 1e-9;

bool is_distribution(std::span<const double> d, double tol = kDistributionTolerance);

/// Shannon entropy in bits, 0 log 0 = 0.
double entropy(std::span<const double> d);

double sup_distance(std::span<const double> a, std::span<const double> b);

/// Divides by the sum. Returns false (and leaves d untouched) if the sum is 0.
bool normalize(std::vector<double>& d);

Distribution uniform(std::size_t k);

/// Small dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::vector<double> row_vector(std::size_t i) const {
    auto r = row(i);
    return {r.begin(), r.end()};
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Row vector times matrix.
std::vector<double> left_multiply(std::span<const double> v, const Matrix& m);

}  // namespace cauto
