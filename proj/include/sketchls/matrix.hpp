#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace sketchls {

// Floating-point formats a value may be stored or computed in. Ordered from
// least to most precise so comparisons express "at least as precise as".
enum class Precision { Half = 0, Single = 1, Double = 2 };

std::string_view to_string(Precision p) noexcept;

using Vector = std::vector<double>;

// Dense real matrix, column-major. Values are always held as binary64; the
// storage tag records the format every entry is exactly representable in.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Precision storage = Precision::Double);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> column_major,
         Precision storage = Precision::Double);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix column_vector(std::span<const double> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  Precision storage() const noexcept { return storage_; }
  void set_storage(Precision p) noexcept { storage_ = p; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[j * rows_ + i]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[j * rows_ + i]; }

  std::span<double> col(std::size_t j) noexcept { return {data_.data() + j * rows_, rows_}; }
  std::span<const double> col(std::size_t j) const noexcept {
    return {data_.data() + j * rows_, rows_};
  }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }
  const std::vector<double>& values() const noexcept { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) noexcept {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Precision storage_ = Precision::Double;
  std::vector<double> data_;
};

Matrix transpose(const Matrix& a);
Matrix multiply(const Matrix& a, const Matrix& b);
// aᵀ·b without forming the transpose.
Matrix multiply_transposed(const Matrix& a, const Matrix& b);
// aᵀ·a; the result is exactly symmetric.
Matrix gram(const Matrix& a);
Matrix subtract(const Matrix& a, const Matrix& b);
Matrix scaled(const Matrix& a, double alpha);

Vector matvec(const Matrix& a, std::span<const double> x);
Vector matvec_transposed(const Matrix& a, std::span<const double> x);
Vector subtract(std::span<const double> a, std::span<const double> b);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);
double frobenius_norm(const Matrix& a);
// Maximum absolute column sum.
double one_norm(const Matrix& a);
double max_abs(const Matrix& a);
double max_abs(std::span<const double> v);

}  // namespace sketchls
