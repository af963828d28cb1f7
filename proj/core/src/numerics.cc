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

#include "graphreg/numerics.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <unordered_set>

#include "graphreg/error.h"

namespace graphreg {

namespace {

std::uint64_t SplitMix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

bool AllFiniteSpan(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(),
                     [](double x) { return std::isfinite(x); });
}

}  // namespace

bool DenseVector::AllFinite() const { return AllFiniteSpan(values_); }

void DenseVector::SetZero() { std::fill(values_.begin(), values_.end(), 0.0); }

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows_ * cols_) {
    throw InvalidArgumentError("matrix value count " +
                               std::to_string(values_.size()) +
                               " does not match shape " +
                               std::to_string(rows_) + "x" +
                               std::to_string(cols_));
  }
}

DenseMatrix DenseMatrix::Identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

bool DenseMatrix::AllFinite() const { return AllFiniteSpan(values_); }

void DenseMatrix::SetZero() { std::fill(values_.begin(), values_.end(), 0.0); }

double Dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw InvalidArgumentError("dot: dimension mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double Norm(std::span<const double> a) { return std::sqrt(Dot(a, a)); }

void Axpy(double scale, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) {
    throw InvalidArgumentError("axpy: dimension mismatch");
  }
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += scale * x[i];
}

DenseVector MatVec(const DenseMatrix& m, const DenseVector& v) {
  if (m.cols() != v.dim()) {
    throw InvalidArgumentError("matvec: matrix has " +
                               std::to_string(m.cols()) +
                               " columns but vector has dim " +
                               std::to_string(v.dim()));
  }
  DenseVector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) out[r] = Dot(m.row(r), v.span());
  return out;
}

DenseVector MatTVec(const DenseMatrix& m, const DenseVector& v) {
  if (m.rows() != v.dim()) {
    throw InvalidArgumentError("matvec (transposed): matrix has " +
                               std::to_string(m.rows()) +
                               " rows but vector has dim " +
                               std::to_string(v.dim()));
  }
  DenseVector out(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) Axpy(v[r], m.row(r), out.span());
  return out;
}

void AddOuter(double scale, std::span<const double> a,
              std::span<const double> b, DenseMatrix& m) {
  if (m.rows() != a.size() || m.cols() != b.size()) {
    throw InvalidArgumentError("outer product: shape mismatch");
  }
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a[r] != 0.0) Axpy(scale * a[r], b, m.row(r));
  }
}

Prng::Prng(std::uint64_t seed) {
  std::uint64_t state = seed;
  for (auto& word : s_) word = SplitMix64(state);
}

std::uint64_t Prng::DeriveSeed(std::uint64_t seed, std::uint64_t a,
                               std::uint64_t b) {
  std::uint64_t state = seed;
  std::uint64_t h = SplitMix64(state);
  state = h ^ (a * 0xd1b54a32d192ed03ULL);
  h = SplitMix64(state);
  state = h ^ (b * 0x8cb92ba72f3d8dd7ULL);
  return SplitMix64(state);
}

std::uint64_t Prng::NextU64() {
  const std::uint64_t result = Rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = Rotl(s_[3], 45);
  return result;
}

double Prng::Uniform() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

std::uint64_t Prng::UniformInt(std::uint64_t n) {
  if (n == 0) throw InvalidArgumentError("UniformInt: empty range");
  // Rejection on the top of the range keeps every residue equally likely.
  const std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % n;
  std::uint64_t x;
  do {
    x = NextU64();
  } while (x >= limit);
  return x % n;
}

double Prng::Normal() {
  const double u1 = 1.0 - Uniform();  // (0, 1]
  const double u2 = Uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<std::size_t> SampleWithoutReplacement(Prng& rng,
                                                  std::size_t population,
                                                  std::size_t k) {
  if (k > population) {
    throw InvalidArgumentError("cannot draw " + std::to_string(k) +
                               " distinct items from a population of " +
                               std::to_string(population));
  }
  std::unordered_set<std::size_t> chosen;
  chosen.reserve(k * 2);
  std::vector<std::size_t> out;
  out.reserve(k);
  for (std::size_t j = population - k; j < population; ++j) {
    const std::size_t t = rng.UniformInt(j + 1);
    const std::size_t pick = chosen.insert(t).second ? t : j;
    if (pick == j) chosen.insert(j);
    out.push_back(pick);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace graphreg
