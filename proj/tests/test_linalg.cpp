// Copyright 2026 The Lumen Vision Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "lumen/linalg.hpp"

namespace {

using namespace lumen;

Matrix random_symmetric(std::mt19937& rng, std::size_t n, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = u(rng);
  }
  return m;
}

double residual(const Matrix& m, const std::vector<double>& v, double lambda) {
  double r2 = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double mv = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) mv += m(i, j) * v[j];
    r2 += (mv - lambda * v[i]) * (mv - lambda * v[i]);
  }
  return std::sqrt(r2);
}

TEST(Jacobi, Identity) {
  const auto e = eigen_decompose_symmetric(Matrix::identity(3));
  EXPECT_EQ(e.values, (std::vector<double>{1, 1, 1}));
  EXPECT_EQ(e.sweeps, 0);
}

TEST(Jacobi, TwoByTwoByHand) {
  Matrix m(2, 2);
  m(0, 0) = 2, m(0, 1) = 1, m(1, 0) = 1, m(1, 1) = 2;
  const auto e = eigen_decompose_symmetric(m);
  EXPECT_NEAR(e.values[0], 3.0, 1e-12);
  EXPECT_NEAR(e.values[1], 1.0, 1e-12);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(e.vectors[0][0], r, 1e-12);
  EXPECT_NEAR(e.vectors[0][1], r, 1e-12);
  EXPECT_NEAR(std::abs(e.vectors[1][0]), r, 1e-12);
  EXPECT_NEAR(e.vectors[1][0], -e.vectors[1][1], 1e-12);
}

TEST(Jacobi, Diagonal) {
  Matrix m(3, 3);
  m(0, 0) = 5, m(1, 1) = 2, m(2, 2) = 9;
  const auto e = eigen_decompose_symmetric(m);
  EXPECT_EQ(e.values, (std::vector<double>{9, 5, 2}));
  EXPECT_EQ(e.vectors[0], (std::vector<double>{0, 0, 1}));
  EXPECT_EQ(e.vectors[1], (std::vector<double>{1, 0, 0}));
  EXPECT_EQ(e.vectors[2], (std::vector<double>{0, 1, 0}));
}

TEST(Jacobi, RandomTwoByTwoMatchCharacteristicRoots) {
  std::mt19937 rng(22);
  for (int t = 0; t < 50; ++t) {
    const Matrix m = random_symmetric(rng, 2, 3.0);
    const double tr = m(0, 0) + m(1, 1);
    const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const double disc = std::sqrt(tr * tr / 4.0 - det);
    const auto e = eigen_decompose_symmetric(m);
    EXPECT_NEAR(e.values[0], tr / 2.0 + disc, 1e-10);
    EXPECT_NEAR(e.values[1], tr / 2.0 - disc, 1e-10);
  }
}

TEST(Jacobi, RandomResidualOrthogonalityAndReference) {
  std::mt19937 rng(50);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 8);
    const Matrix m = random_symmetric(rng, n, 2.0);
    const auto e = eigen_decompose_symmetric(m);
    ASSERT_EQ(e.values.size(), n);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_LE(residual(m, e.vectors[i], e.values[i]), 1e-8);
      if (i > 0) {
        EXPECT_GE(e.values[i - 1], e.values[i]);
      }
      for (std::size_t j = 0; j < n; ++j) {
        EXPECT_NEAR(dot(e.vectors[i], e.vectors[j]), i == j ? 1.0 : 0.0, 1e-8);
      }
    }
    Eigen::MatrixXd em(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) em(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    }
    const Eigen::VectorXd ref = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(em).eigenvalues();
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(e.values[i], ref(static_cast<Eigen::Index>(n - 1 - i)), 1e-10);
    }
  }
}

TEST(Jacobi, SignConvention) {
  std::mt19937 rng(5);
  const auto e = eigen_decompose_symmetric(random_symmetric(rng, 6));
  for (const auto& v : e.vectors) {
    const auto it = std::max_element(v.begin(), v.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
    EXPECT_GT(*it, 0.0);
  }
}

TEST(Jacobi, Deterministic) {
  std::mt19937 rng(6);
  const Matrix m = random_symmetric(rng, 7);
  const auto a = eigen_decompose_symmetric(m);
  const auto b = eigen_decompose_symmetric(m);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.vectors, b.vectors);
}

TEST(Jacobi, RejectsAsymmetricInput) {
  Matrix m = Matrix::identity(3);
  m(0, 2) = 1e-6;
  for (const Matrix& bad : {m, Matrix(2, 3)}) {
    try {
      eigen_decompose_symmetric(bad);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NotSymmetric);
    }
  }
  m(0, 2) = 1e-10;  // within tolerance
  EXPECT_NO_THROW(eigen_decompose_symmetric(m));
  Matrix nan = Matrix::identity(2);
  nan(1, 1) = std::nan("");
  EXPECT_THROW(eigen_decompose_symmetric(nan), Error);
}

TEST(Jacobi, EmptyAndScalar) {
  EXPECT_TRUE(eigen_decompose_symmetric(Matrix(0, 0)).values.empty());
  Matrix one(1, 1, -4.0);
  const auto e = eigen_decompose_symmetric(one);
  EXPECT_EQ(e.values, std::vector<double>{-4.0});
  EXPECT_EQ(e.vectors[0], std::vector<double>{1.0});
}

}  // namespace
