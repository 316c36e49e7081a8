// Copyright 2026 The hyperseg Authors
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

#include "hyperseg/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "hyperseg/error.hpp"

namespace hyperseg {
namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace

PcaModel fit_pca(const Matrix& samples, double variance_threshold) {
  if (!(variance_threshold > 0.0 && variance_threshold <= 1.0))
    throw InvalidArgument("fit_pca: variance threshold must lie in (0, 1]");
  if (samples.empty()) throw DegenerateInput("fit_pca: no samples");
  const auto data = samples.data();
  if (!std::all_of(data.begin(), data.end(), [](double v) { return std::isfinite(v); }))
    throw DegenerateInput("fit_pca: non-finite sample values");

  const auto n = static_cast<Eigen::Index>(samples.rows());
  const auto dim = static_cast<Eigen::Index>(samples.cols());
  Eigen::Map<const RowMajor> x(data.data(), n, dim);

  PcaModel model;
  const Eigen::VectorXd mean = x.colwise().mean().transpose();
  model.mean.assign(mean.data(), mean.data() + dim);

  if (dim == 1) {
    model.components = Matrix(1, 1, 1.0);
    const double var = n > 1 ? (x.col(0).array() - mean(0)).square().sum() / double(n - 1) : 0.0;
    model.explained_variance = {var};
    model.retained_fraction = 1.0;
    return model;
  }

  const RowMajor centered = x.rowwise() - mean.transpose();
  Eigen::MatrixXd cov = centered.transpose() * centered;
  if (n > 1) cov /= double(n - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw DegenerateInput("fit_pca: eigendecomposition failed");
  // Eigen returns ascending eigenvalues.
  const Eigen::VectorXd values = solver.eigenvalues().reverse();
  const Eigen::MatrixXd vectors = solver.eigenvectors().rowwise().reverse();

  model.explained_variance.resize(static_cast<std::size_t>(dim));
  for (Eigen::Index i = 0; i < dim; ++i)
    model.explained_variance[static_cast<std::size_t>(i)] = std::max(values(i), 0.0);

  const double total = std::accumulate(model.explained_variance.begin(),
                                       model.explained_variance.end(), 0.0);
  std::size_t keep = 1;
  double cumulative = model.explained_variance[0];
  if (total > 0.0) {
    const double target = variance_threshold * total * (1.0 - 1e-12);
    while (cumulative < target && keep < model.explained_variance.size())
      cumulative += model.explained_variance[keep++];
    model.retained_fraction = std::min(cumulative / total, 1.0);
  } else {
    model.retained_fraction = 1.0;
  }

  model.components = Matrix(keep, static_cast<std::size_t>(dim));
  for (std::size_t r = 0; r < keep; ++r) {
    const auto col = vectors.col(static_cast<Eigen::Index>(r));
    Eigen::Index arg = 0;
    for (Eigen::Index j = 1; j < dim; ++j)
      if (std::abs(col(j)) > std::abs(col(arg))) arg = j;
    const double sign = col(arg) < 0.0 ? -1.0 : 1.0;
    for (Eigen::Index j = 0; j < dim; ++j)
      model.components(r, static_cast<std::size_t>(j)) = sign * col(j);
  }
  return model;
}

PcaModel fit_pca(const HyperCube& cube, double variance_threshold) {
  if (!cube.normalized()) throw InvalidArgument("fit_pca: cube must be normalized");
  return fit_pca(spectra_matrix(cube), variance_threshold);
}

Matrix apply_pca(const Matrix& samples, const PcaModel& model) {
  if (samples.cols() != model.input_dim())
    throw ShapeError("apply_pca: model expects " + std::to_string(model.input_dim()) +
                     " features, got " + std::to_string(samples.cols()));
  const std::size_t out_dim = model.output_dim();
  Matrix out(samples.rows(), out_dim);
  std::vector<double> centered(model.input_dim());
  for (std::size_t i = 0; i < samples.rows(); ++i) {
    const auto row = samples.row(i);
    for (std::size_t j = 0; j < centered.size(); ++j) centered[j] = row[j] - model.mean[j];
    for (std::size_t r = 0; r < out_dim; ++r) {
      const auto comp = model.components.row(r);
      out(i, r) = std::inner_product(centered.begin(), centered.end(), comp.begin(), 0.0);
    }
  }
  return out;
}

HyperCube apply_pca(const HyperCube& cube, const PcaModel& model) {
  if (cube.bands() != model.input_dim())
    throw ShapeError("apply_pca: model expects " + std::to_string(model.input_dim()) +
                     " bands, cube has " + std::to_string(cube.bands()));
  const Matrix projected = apply_pca(spectra_matrix(cube), model);
  const auto src = projected.data();
  std::vector<float> values(src.size());
  std::transform(src.begin(), src.end(), values.begin(),
                 [](double v) { return static_cast<float>(v); });
  return HyperCube(cube.height(), cube.width(), model.output_dim(), std::move(values));
}

std::vector<double> reconstruct(std::span<const double> projected, const PcaModel& model) {
  if (projected.size() != model.output_dim())
    throw ShapeError("reconstruct: expected " + std::to_string(model.output_dim()) +
                     " coordinates");
  std::vector<double> out = model.mean;
  for (std::size_t r = 0; r < projected.size(); ++r) {
    const auto comp = model.components.row(r);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += projected[r] * comp[j];
  }
  return out;
}

}  // namespace hyperseg
