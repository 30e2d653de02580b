// core/src/spectral_norm.cc

// Copyright 2026  The mgf authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "mgf/spectral_norm.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mgf {

namespace {

using RowMat =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatMap = Eigen::Map<const RowMat>;
using VecMap = Eigen::Map<Eigen::VectorXd>;
using ConstVecMap = Eigen::Map<const Eigen::VectorXd>;

void refresh_from_u(Param* p) {
  MatMap w(p->value.data(), p->rows(), p->cols());
  ConstVecMap u(p->sn_u.data(), p->rows());
  Eigen::VectorXd wv = w.transpose() * u;
  const double norm = wv.norm();
  p->sn_sigma = std::max(norm, kSigmaFloor);
  if (static_cast<int>(p->sn_v.size()) != p->cols()) {
    p->sn_v = Tensor({p->cols()});
  }
  VecMap v(p->sn_v.data(), p->cols());
  if (norm > kSigmaFloor) {
    v = wv / norm;
  } else {
    v.setZero();
  }
}

}  // namespace

void sn_power_iterate(Param* p) {
  if (!p->spectral_norm) {
    throw std::logic_error("sn_power_iterate on plain parameter " + p->name);
  }
  MatMap w(p->value.data(), p->rows(), p->cols());
  VecMap u(p->sn_u.data(), p->rows());
  Eigen::VectorXd v = w.transpose() * u;
  const double vn = v.norm();
  if (vn > kSigmaFloor) {
    v /= vn;
    Eigen::VectorXd u_next = w * v;
    const double un = u_next.norm();
    if (un > kSigmaFloor) {
      u = u_next / un;
    }
  }
  // A degenerate (all-zero) weight leaves u unchanged; sigma then hits the
  // floor below and the normalized weight stays zero.
  refresh_from_u(p);
}

void sn_refresh(Param* p) {
  if (!p->spectral_norm) {
    throw std::logic_error("sn_refresh on plain parameter " + p->name);
  }
  refresh_from_u(p);
}

void sn_backward(Param* p, const Tensor& grad_wbar) {
  if (!p->spectral_norm) {
    throw std::logic_error("sn_backward on plain parameter " + p->name);
  }
  if (!grad_wbar.same_shape(p->value)) {
    throw std::logic_error("sn_backward shape mismatch for " + p->name);
  }
  const int rows = p->rows();
  const int cols = p->cols();
  MatMap g(grad_wbar.data(), rows, cols);
  MatMap w(p->value.data(), rows, cols);
  ConstVecMap u(p->sn_u.data(), rows);
  ConstVecMap v(p->sn_v.data(), cols);
  const double sigma = p->sn_sigma;
  // <G, Wbar>_F with Wbar = W / sigma.
  const double inner = g.cwiseProduct(w).sum() / sigma;
  Eigen::Map<RowMat> grad(p->grad.data(), rows, cols);
  grad.noalias() += (g - inner * (u * v.transpose())) / sigma;
}

}  // namespace mgf
