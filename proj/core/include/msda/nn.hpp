// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "msda/rng.hpp"
#include "msda/tensor.hpp"

namespace msda {

/// y = x W^T + b applied over the last axis; weight is (out, in).
struct Linear {
  Tensor weight;
  Tensor bias;

  int64_t out_dim() const { return weight.size(0); }
  int64_t in_dim() const { return weight.size(1); }

  static Linear zeros(int64_t out, int64_t in) {
    return Linear{Tensor::zeros({out, in}), Tensor::zeros({out})};
  }

  /// Symmetric uniform fan-in init: weight and bias ~ U(-1/sqrt(in), 1/sqrt(in)).
  static Linear uniform_fan_in(int64_t out, int64_t in, Rng& rng);
};

Tensor linear_forward(const Linear& lin, const Tensor& x);

struct LinearGrads {
  Tensor d_weight;
  Tensor d_bias;

  static LinearGrads zeros_like(const Linear& lin) {
    return LinearGrads{Tensor(lin.weight.shape()), Tensor(lin.bias.shape())};
  }
};

/// Returns d_x and accumulates parameter gradients into `grads`.
Tensor linear_backward(const Linear& lin, const Tensor& x, const Tensor& d_y,
                       LinearGrads& grads);

/// Layer normalization over the last axis.
struct LayerNorm {
  Tensor gamma;
  Tensor beta;
  double eps = 1e-5;

  static LayerNorm identity(int64_t dim) {
    LayerNorm ln{Tensor::full({dim}, 1.0), Tensor::zeros({dim}), 1e-5};
    return ln;
  }
};

struct LayerNormCache {
  Tensor xhat;     // normalized input, same shape as x
  Tensor inv_std;  // 1/sqrt(var+eps) per row
};

Tensor layer_norm_forward(const LayerNorm& ln, const Tensor& x, LayerNormCache* cache);

struct LayerNormGrads {
  Tensor d_gamma;
  Tensor d_beta;

  static LayerNormGrads zeros_like(const LayerNorm& ln) {
    return LayerNormGrads{Tensor(ln.gamma.shape()), Tensor(ln.beta.shape())};
  }
};

Tensor layer_norm_backward(const LayerNorm& ln, const LayerNormCache& cache, const Tensor& d_y,
                           LayerNormGrads& grads);

/// Exact (erf-based) GELU; smooth, so finite-difference checks stay clean.
double gelu(double x);
double gelu_grad(double x);

Tensor gelu_forward(const Tensor& x);
Tensor gelu_backward(const Tensor& x, const Tensor& d_y);

}  // namespace msda
