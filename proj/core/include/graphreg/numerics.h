// Copyright 2026 The graphreg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense linear algebra and the seeded random source shared by every module.
//
// Everything is 64-bit floating point. Prng is xoshiro256** seeded through
// splitmix64; all derived draws (integers, uniforms, normals) are computed by
// code in this file rather than by <random> distributions, whose output is
// implementation-defined. Seeded runs are therefore reproducible across
// standard libraries (normal draws additionally rely on std::log/std::cos).

#ifndef GRAPHREG_NUMERICS_H_
#define GRAPHREG_NUMERICS_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace graphreg {

class DenseVector {
 public:
  DenseVector() = default;
  explicit DenseVector(std::size_t dim) : values_(dim, 0.0) {}
  explicit DenseVector(std::vector<double> values)
      : values_(std::move(values)) {}
  DenseVector(std::initializer_list<double> values) : values_(values) {}

  std::size_t dim() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  std::span<double> span() { return values_; }
  std::span<const double> span() const { return values_; }
  const std::vector<double>& values() const { return values_; }

  auto begin() { return values_.begin(); }
  auto end() { return values_.end(); }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  bool AllFinite() const;
  void SetZero();

  friend bool operator==(const DenseVector&, const DenseVector&) = default;

 private:
  std::vector<double> values_;
};

// Row-major matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}
  // Throws InvalidArgumentError unless values.size() == rows * cols.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  static DenseMatrix Identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return values_.size(); }

  double& operator()(std::size_t r, std::size_t c) {
    return values_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return values_[r * cols_ + c];
  }

  std::span<double> row(std::size_t r) {
    return std::span<double>(values_).subspan(r * cols_, cols_);
  }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(values_).subspan(r * cols_, cols_);
  }

  std::span<double> span() { return values_; }
  std::span<const double> span() const { return values_; }

  bool AllFinite() const;
  void SetZero();

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

double Dot(std::span<const double> a, std::span<const double> b);
double Norm(std::span<const double> a);

// y += scale * x
void Axpy(double scale, std::span<const double> x, std::span<double> y);

// m * v. Throws InvalidArgumentError when m.cols() != v.dim().
DenseVector MatVec(const DenseMatrix& m, const DenseVector& v);
// m^T * v. Throws InvalidArgumentError when m.rows() != v.dim().
DenseVector MatTVec(const DenseMatrix& m, const DenseVector& v);
// m += scale * a b^T
void AddOuter(double scale, std::span<const double> a,
              std::span<const double> b, DenseMatrix& m);

// xoshiro256** with splitmix64 seeding. Version 1 of the stream layout; any
// change to the draw routines below must bump kStreamVersion.
class Prng {
 public:
  static constexpr int kStreamVersion = 1;

  explicit Prng(std::uint64_t seed);

  // Seed for an independent stream keyed by (seed, a, b). Used to give each
  // training step and each purpose its own generator.
  static std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t a,
                                  std::uint64_t b = 0);

  std::uint64_t NextU64();
  // Uniform in [0, 1) with 53 bits of resolution.
  double Uniform();
  // Unbiased integer in [0, n). n must be positive.
  std::uint64_t UniformInt(std::uint64_t n);
  // Standard normal via Box-Muller; one normal per call.
  double Normal();

 private:
  std::uint64_t s_[4];
};

// k distinct indices from [0, population), each k-subset equally likely
// (Floyd's algorithm). Returned in ascending order. Throws
// InvalidArgumentError when k > population.
std::vector<std::size_t> SampleWithoutReplacement(Prng& rng,
                                                  std::size_t population,
                                                  std::size_t k);

}  // namespace graphreg

#endif  // GRAPHREG_NUMERICS_H_
