// core/src/layers.cc

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

#include "mgf/layers.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mgf/errors.h"
#include "mgf/spectral_norm.h"

namespace mgf {

namespace {

using RowMat =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatMap = Eigen::Map<RowMat>;
using ConstMatMap = Eigen::Map<const RowMat>;

}  // namespace

// ---------------------------------------------------------------------------
// Dense
// ---------------------------------------------------------------------------

DenseLayer::DenseLayer(Param* w, Param* b) : w_(w), b_(b) {
  if (w_->value.ndim() != 2 || b_->value.ndim() != 1 ||
      b_->value.dim(0) != w_->value.dim(0)) {
    throw std::logic_error("dense layer shape mismatch for " + w_->name);
  }
}

Tensor DenseLayer::forward(const Tensor& x) {
  if (x.ndim() != 2 || x.dim(1) != w_->value.dim(1)) {
    throw std::logic_error("dense input shape mismatch for " + w_->name);
  }
  x_cache_ = x;
  const int n = x.dim(0);
  const int in = w_->value.dim(1);
  const int out = w_->value.dim(0);
  Tensor y({n, out});
  ConstMatMap xm(x.data(), n, in);
  ConstMatMap wm(w_->value.data(), out, in);
  MatMap ym(y.data(), n, out);
  ym.noalias() = xm * wm.transpose() * w_->weight_scale();
  for (int i = 0; i < n; i++) {
    for (int j = 0; j < out; j++) y.at(i, j) += b_->value[j];
  }
  return y;
}

Tensor DenseLayer::backward(const Tensor& grad_out) {
  const int n = x_cache_.dim(0);
  const int in = w_->value.dim(1);
  const int out = w_->value.dim(0);
  if (grad_out.ndim() != 2 || grad_out.dim(0) != n || grad_out.dim(1) != out) {
    throw std::logic_error("dense grad shape mismatch for " + w_->name);
  }
  ConstMatMap gy(grad_out.data(), n, out);
  ConstMatMap xm(x_cache_.data(), n, in);
  ConstMatMap wm(w_->value.data(), out, in);

  // Gradient w.r.t. the normalized weight.
  Tensor grad_wbar({out, in});
  MatMap gw(grad_wbar.data(), out, in);
  gw.noalias() = gy.transpose() * xm;
  if (w_->spectral_norm) {
    sn_backward(w_, grad_wbar);
  } else {
    MatMap acc(w_->grad.data(), out, in);
    acc += gw;
  }
  for (int j = 0; j < out; j++) {
    double s = 0.0;
    for (int i = 0; i < n; i++) s += grad_out.at(i, j);
    b_->grad[j] += s;
  }

  Tensor grad_x({n, in});
  MatMap gx(grad_x.data(), n, in);
  gx.noalias() = gy * wm * w_->weight_scale();
  return grad_x;
}

// ---------------------------------------------------------------------------
// Conv2d
// ---------------------------------------------------------------------------

Conv2dLayer::Conv2dLayer(Param* kernel, Param* b) : kernel_(kernel), b_(b) {
  if (kernel_->value.ndim() != 4 || b_->value.ndim() != 1 ||
      b_->value.dim(0) != kernel_->value.dim(0)) {
    throw std::logic_error("conv layer shape mismatch for " + kernel_->name);
  }
}

Tensor Conv2dLayer::forward(const Tensor& x) {
  const int c_out = kernel_->value.dim(0);
  const int c_in = kernel_->value.dim(1);
  const int kh = kernel_->value.dim(2);
  const int kw = kernel_->value.dim(3);
  if (x.ndim() != 3 || x.dim(0) != c_in) {
    throw std::logic_error("conv input shape mismatch for " + kernel_->name);
  }
  in_h_ = x.dim(1);
  in_w_ = x.dim(2);
  out_h_ = in_h_ - kh + 1;
  out_w_ = in_w_ - kw + 1;
  if (out_h_ < 1 || out_w_ < 1) {
    throw DataError("input too small for convolution kernel");
  }
  const int patch = c_in * kh * kw;
  const int sites = out_h_ * out_w_;
  cols_cache_ = Tensor({patch, sites});
  for (int c = 0; c < c_in; c++) {
    for (int dy = 0; dy < kh; dy++) {
      for (int dx = 0; dx < kw; dx++) {
        const int row = (c * kh + dy) * kw + dx;
        double* dst = cols_cache_.data() + static_cast<size_t>(row) * sites;
        for (int oy = 0; oy < out_h_; oy++) {
          const double* src =
              x.data() + (static_cast<size_t>(c) * in_h_ + oy + dy) * in_w_ +
              dx;
          for (int ox = 0; ox < out_w_; ox++) {
            dst[oy * out_w_ + ox] = src[ox];
          }
        }
      }
    }
  }
  Tensor y({c_out, out_h_, out_w_});
  ConstMatMap km(kernel_->value.data(), c_out, patch);
  ConstMatMap cm(cols_cache_.data(), patch, sites);
  MatMap ym(y.data(), c_out, sites);
  ym.noalias() = km * cm * kernel_->weight_scale();
  for (int c = 0; c < c_out; c++) {
    const double bias = b_->value[c];
    double* row = y.data() + static_cast<size_t>(c) * sites;
    for (int i = 0; i < sites; i++) row[i] += bias;
  }
  return y;
}

Tensor Conv2dLayer::backward(const Tensor& grad_out) {
  const int c_out = kernel_->value.dim(0);
  const int c_in = kernel_->value.dim(1);
  const int kh = kernel_->value.dim(2);
  const int kw = kernel_->value.dim(3);
  const int patch = c_in * kh * kw;
  const int sites = out_h_ * out_w_;
  if (grad_out.ndim() != 3 || grad_out.dim(0) != c_out ||
      grad_out.dim(1) != out_h_ || grad_out.dim(2) != out_w_) {
    throw std::logic_error("conv grad shape mismatch for " + kernel_->name);
  }
  ConstMatMap gy(grad_out.data(), c_out, sites);
  ConstMatMap cm(cols_cache_.data(), patch, sites);
  ConstMatMap km(kernel_->value.data(), c_out, patch);

  Tensor grad_kbar({c_out, c_in, kh, kw});
  MatMap gk(grad_kbar.data(), c_out, patch);
  gk.noalias() = gy * cm.transpose();
  if (kernel_->spectral_norm) {
    sn_backward(kernel_, grad_kbar);
  } else {
    MatMap acc(kernel_->grad.data(), c_out, patch);
    acc += gk;
  }
  for (int c = 0; c < c_out; c++) {
    b_->grad[c] += gy.row(c).sum();
  }

  // Scatter dCols back onto the input grid.
  RowMat dcols = km.transpose() * gy * kernel_->weight_scale();
  Tensor grad_x({c_in, in_h_, in_w_});
  for (int c = 0; c < c_in; c++) {
    for (int dy = 0; dy < kh; dy++) {
      for (int dx = 0; dx < kw; dx++) {
        const int row = (c * kh + dy) * kw + dx;
        for (int oy = 0; oy < out_h_; oy++) {
          double* dst =
              grad_x.data() +
              (static_cast<size_t>(c) * in_h_ + oy + dy) * in_w_ + dx;
          for (int ox = 0; ox < out_w_; ox++) {
            dst[ox] += dcols(row, oy * out_w_ + ox);
          }
        }
      }
    }
  }
  return grad_x;
}

// ---------------------------------------------------------------------------
// Pointwise and pooling
// ---------------------------------------------------------------------------

Tensor LeakyReluLayer::forward(const Tensor& x) {
  x_cache_ = x;
  Tensor y = x;
  for (size_t i = 0; i < y.size(); i++) {
    if (y.data()[i] < 0.0) y.data()[i] *= alpha_;
  }
  return y;
}

Tensor LeakyReluLayer::backward(const Tensor& grad_out) {
  if (!grad_out.same_shape(x_cache_)) {
    throw std::logic_error("leaky relu grad shape mismatch");
  }
  Tensor gx = grad_out;
  for (size_t i = 0; i < gx.size(); i++) {
    if (x_cache_.data()[i] < 0.0) gx.data()[i] *= alpha_;
  }
  return gx;
}

Tensor SigmoidLayer::forward(const Tensor& x) {
  Tensor y = x;
  for (size_t i = 0; i < y.size(); i++) {
    y.data()[i] = 1.0 / (1.0 + std::exp(-y.data()[i]));
  }
  y_cache_ = y;
  return y;
}

Tensor SigmoidLayer::backward(const Tensor& grad_out) {
  if (!grad_out.same_shape(y_cache_)) {
    throw std::logic_error("sigmoid grad shape mismatch");
  }
  Tensor gx = grad_out;
  for (size_t i = 0; i < gx.size(); i++) {
    const double y = y_cache_.data()[i];
    gx.data()[i] *= y * (1.0 - y);
  }
  return gx;
}

Tensor GlobalAvgPoolLayer::forward(const Tensor& x) {
  if (x.ndim() != 3) {
    throw std::logic_error("global average pool expects a 3-d input");
  }
  const int c = x.dim(0);
  h_ = x.dim(1);
  w_ = x.dim(2);
  const int sites = h_ * w_;
  Tensor y({1, c});
  for (int ch = 0; ch < c; ch++) {
    double s = 0.0;
    const double* row = x.data() + static_cast<size_t>(ch) * sites;
    for (int i = 0; i < sites; i++) s += row[i];
    y.at(0, ch) = s / sites;
  }
  return y;
}

Tensor GlobalAvgPoolLayer::backward(const Tensor& grad_out) {
  const int c = grad_out.dim(1);
  const int sites = h_ * w_;
  Tensor gx({c, h_, w_});
  for (int ch = 0; ch < c; ch++) {
    const double g = grad_out.at(0, ch) / sites;
    double* row = gx.data() + static_cast<size_t>(ch) * sites;
    for (int i = 0; i < sites; i++) row[i] = g;
  }
  return gx;
}

// ---------------------------------------------------------------------------
// Context stacking
// ---------------------------------------------------------------------------

Tensor context_gather(const Tensor& x, int k) {
  if (x.ndim() != 2 || k < 0) {
    throw std::logic_error("context_gather expects a 2-d input and k >= 0");
  }
  const int t = x.dim(0);
  const int f = x.dim(1);
  Tensor out({t, (2 * k + 1) * f});
  for (int i = 0; i < t; i++) {
    for (int d = -k; d <= k; d++) {
      const int src = std::clamp(i + d, 0, t - 1);
      const int off = (d + k) * f;
      for (int j = 0; j < f; j++) {
        out.at(i, off + j) = x.at(src, j);
      }
    }
  }
  return out;
}

Tensor context_scatter(const Tensor& grad_ctx, int k, int num_bins) {
  const int t = grad_ctx.dim(0);
  const int f = num_bins;
  if (grad_ctx.ndim() != 2 || grad_ctx.dim(1) != (2 * k + 1) * f) {
    throw std::logic_error("context_scatter shape mismatch");
  }
  Tensor gx({t, f});
  for (int i = 0; i < t; i++) {
    for (int d = -k; d <= k; d++) {
      const int src = std::clamp(i + d, 0, t - 1);
      const int off = (d + k) * f;
      for (int j = 0; j < f; j++) {
        gx.at(src, j) += grad_ctx.at(i, off + j);
      }
    }
  }
  return gx;
}

}  // namespace mgf
