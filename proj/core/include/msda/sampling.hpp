// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>

#include "msda/tensor.hpp"

namespace msda {

// Coordinate convention (normative for every sampler here):
//   A map of width W maps normalized x in [0,1] to continuous pixel
//   coordinate u = x*W. Pixel index i occupies [i, i+1) with its center at
//   i + 0.5 (same for y/v/H). Bilinear interpolation is taken over the four
//   pixel centers surrounding (u, v); centers outside the map contribute 0
//   with their usual weight (zero padding). Discrete sampling reads the pixel
//   whose center is nearest to (u, v), which is index (floor(u), floor(v));
//   out of [0,W)x[0,H) the sample is 0. Ties at integer u (equidistant
//   centers) resolve to floor(u), i.e. toward the larger index.
//
// Tensor layouts:
//   values  (B, heads, C_h, H, W)
//   loc     (B, Nq, heads, P, 2), last axis ordered (x, y), normalized
//   samples (B, Nq, heads, P, C_h)

template <typename T>
struct SampleGradsT {
  TensorT<T> d_values;  // same shape as values
  TensorT<T> d_coords;  // same shape as loc; identically zero in discrete mode
};

using SampleGrads = SampleGradsT<double>;

namespace detail {

template <typename T>
void check_sample_args(const TensorT<T>& values, const TensorT<T>& loc) {
  MSDA_CHECK(values.rank() == 5, "values must be (B,heads,C_h,H,W), got "
                                     << shape_str(values.shape()));
  MSDA_CHECK(loc.rank() == 5 && loc.size(4) == 2,
             "loc must be (B,Nq,heads,P,2), got " << shape_str(loc.shape()));
  MSDA_CHECK(loc.size(0) == values.size(0), "batch mismatch: " << loc.size(0) << " vs "
                                                               << values.size(0));
  MSDA_CHECK(loc.size(2) == values.size(1), "head mismatch: " << loc.size(2) << " vs "
                                                              << values.size(1));
  MSDA_CHECK(loc.all_finite(), "non-finite sampling coordinate");
}

}  // namespace detail

template <typename T>
TensorT<T> bilinear_sample_forward(const TensorT<T>& values, const TensorT<T>& loc) {
  detail::check_sample_args(values, loc);
  const int64_t B = values.size(0), NH = values.size(1), C = values.size(2);
  const int64_t H = values.size(3), W = values.size(4);
  const int64_t Nq = loc.size(1), P = loc.size(3);

  TensorT<T> out({B, Nq, NH, P, C});
  const T* vp = values.data();
  const T* lp = loc.data();
  T* op = out.data();

  const int64_t v_head = C * H * W, v_chan = H * W;
  for (int64_t b = 0; b < B; ++b) {
    for (int64_t q = 0; q < Nq; ++q) {
      for (int64_t h = 0; h < NH; ++h) {
        for (int64_t p = 0; p < P; ++p) {
          const int64_t li = (((b * Nq + q) * NH + h) * P + p) * 2;
          const double u = static_cast<double>(lp[li]) * static_cast<double>(W);
          const double v = static_cast<double>(lp[li + 1]) * static_cast<double>(H);
          // cell of the four surrounding centers
          const double au = u - 0.5, av = v - 0.5;
          const int64_t iu0 = static_cast<int64_t>(std::floor(au));
          const int64_t iv0 = static_cast<int64_t>(std::floor(av));
          const T fu = static_cast<T>(au - static_cast<double>(iu0));
          const T fv = static_cast<T>(av - static_cast<double>(iv0));
          const T w00 = (T(1) - fu) * (T(1) - fv);
          const T w10 = fu * (T(1) - fv);
          const T w01 = (T(1) - fu) * fv;
          const T w11 = fu * fv;
          const bool u0_in = iu0 >= 0 && iu0 < W;
          const bool u1_in = iu0 + 1 >= 0 && iu0 + 1 < W;
          const bool v0_in = iv0 >= 0 && iv0 < H;
          const bool v1_in = iv0 + 1 >= 0 && iv0 + 1 < H;
          const T* base = vp + b * NH * v_head + h * v_head;
          T* dst = op + (((b * Nq + q) * NH + h) * P + p) * C;
          for (int64_t c = 0; c < C; ++c) {
            const T* m = base + c * v_chan;
            T acc = T(0);
            if (v0_in) {
              if (u0_in) acc += w00 * m[iv0 * W + iu0];
              if (u1_in) acc += w10 * m[iv0 * W + iu0 + 1];
            }
            if (v1_in) {
              if (u0_in) acc += w01 * m[(iv0 + 1) * W + iu0];
              if (u1_in) acc += w11 * m[(iv0 + 1) * W + iu0 + 1];
            }
            dst[c] = acc;
          }
        }
      }
    }
  }
  return out;
}

template <typename T>
SampleGradsT<T> bilinear_sample_backward(const TensorT<T>& values, const TensorT<T>& loc,
                                         const TensorT<T>& d_samples) {
  detail::check_sample_args(values, loc);
  const int64_t B = values.size(0), NH = values.size(1), C = values.size(2);
  const int64_t H = values.size(3), W = values.size(4);
  const int64_t Nq = loc.size(1), P = loc.size(3);
  MSDA_CHECK(d_samples.rank() == 5 && d_samples.size(0) == B && d_samples.size(1) == Nq &&
                 d_samples.size(2) == NH && d_samples.size(3) == P && d_samples.size(4) == C,
             "d_samples must be (B,Nq,heads,P,C_h), got " << shape_str(d_samples.shape()));

  SampleGradsT<T> g{TensorT<T>(values.shape()), TensorT<T>(loc.shape())};
  const T* vp = values.data();
  const T* lp = loc.data();
  const T* up = d_samples.data();
  T* dvp = g.d_values.data();
  T* dlp = g.d_coords.data();

  const int64_t v_head = C * H * W, v_chan = H * W;
  for (int64_t b = 0; b < B; ++b) {
    for (int64_t q = 0; q < Nq; ++q) {
      for (int64_t h = 0; h < NH; ++h) {
        for (int64_t p = 0; p < P; ++p) {
          const int64_t li = (((b * Nq + q) * NH + h) * P + p) * 2;
          const double u = static_cast<double>(lp[li]) * static_cast<double>(W);
          const double v = static_cast<double>(lp[li + 1]) * static_cast<double>(H);
          const double au = u - 0.5, av = v - 0.5;
          const int64_t iu0 = static_cast<int64_t>(std::floor(au));
          const int64_t iv0 = static_cast<int64_t>(std::floor(av));
          const T fu = static_cast<T>(au - static_cast<double>(iu0));
          const T fv = static_cast<T>(av - static_cast<double>(iv0));
          const bool u0_in = iu0 >= 0 && iu0 < W;
          const bool u1_in = iu0 + 1 >= 0 && iu0 + 1 < W;
          const bool v0_in = iv0 >= 0 && iv0 < H;
          const bool v1_in = iv0 + 1 >= 0 && iv0 + 1 < H;
          const T* base = vp + b * NH * v_head + h * v_head;
          T* dbase = dvp + b * NH * v_head + h * v_head;
          const T* ups = up + (((b * Nq + q) * NH + h) * P + p) * C;
          T du_acc = T(0), dv_acc = T(0);
          for (int64_t c = 0; c < C; ++c) {
            const T* m = base + c * v_chan;
            T* dm = dbase + c * v_chan;
            const T g00 = (v0_in && u0_in) ? m[iv0 * W + iu0] : T(0);
            const T g10 = (v0_in && u1_in) ? m[iv0 * W + iu0 + 1] : T(0);
            const T g01 = (v1_in && u0_in) ? m[(iv0 + 1) * W + iu0] : T(0);
            const T g11 = (v1_in && u1_in) ? m[(iv0 + 1) * W + iu0 + 1] : T(0);
            const T uc = ups[c];
            // scatter into contributing pixels
            if (v0_in) {
              if (u0_in) dm[iv0 * W + iu0] += uc * (T(1) - fu) * (T(1) - fv);
              if (u1_in) dm[iv0 * W + iu0 + 1] += uc * fu * (T(1) - fv);
            }
            if (v1_in) {
              if (u0_in) dm[(iv0 + 1) * W + iu0] += uc * (T(1) - fu) * fv;
              if (u1_in) dm[(iv0 + 1) * W + iu0 + 1] += uc * fu * fv;
            }
            // d sample / du and / dv (one-sided from inside the current cell)
            du_acc += uc * ((T(1) - fv) * (g10 - g00) + fv * (g11 - g01));
            dv_acc += uc * ((T(1) - fu) * (g01 - g00) + fu * (g11 - g10));
          }
          // chain factor from normalized to pixel coordinates
          dlp[li] = du_acc * static_cast<T>(W);
          dlp[li + 1] = dv_acc * static_cast<T>(H);
        }
      }
    }
  }
  return g;
}

template <typename T>
TensorT<T> discrete_sample_forward(const TensorT<T>& values, const TensorT<T>& loc) {
  detail::check_sample_args(values, loc);
  const int64_t B = values.size(0), NH = values.size(1), C = values.size(2);
  const int64_t H = values.size(3), W = values.size(4);
  const int64_t Nq = loc.size(1), P = loc.size(3);

  TensorT<T> out({B, Nq, NH, P, C});
  const T* vp = values.data();
  const T* lp = loc.data();
  T* op = out.data();

  const int64_t v_head = C * H * W, v_chan = H * W;
  for (int64_t b = 0; b < B; ++b) {
    for (int64_t q = 0; q < Nq; ++q) {
      for (int64_t h = 0; h < NH; ++h) {
        for (int64_t p = 0; p < P; ++p) {
          const int64_t li = (((b * Nq + q) * NH + h) * P + p) * 2;
          const double u = static_cast<double>(lp[li]) * static_cast<double>(W);
          const double v = static_cast<double>(lp[li + 1]) * static_cast<double>(H);
          const int64_t iu = static_cast<int64_t>(std::floor(u));
          const int64_t iv = static_cast<int64_t>(std::floor(v));
          T* dst = op + (((b * Nq + q) * NH + h) * P + p) * C;
          if (iu >= 0 && iu < W && iv >= 0 && iv < H) {
            const T* base = vp + b * NH * v_head + h * v_head + iv * W + iu;
            for (int64_t c = 0; c < C; ++c) dst[c] = base[c * v_chan];
          } else {
            for (int64_t c = 0; c < C; ++c) dst[c] = T(0);
          }
        }
      }
    }
  }
  return out;
}

template <typename T>
SampleGradsT<T> discrete_sample_backward(const TensorT<T>& values, const TensorT<T>& loc,
                                         const TensorT<T>& d_samples) {
  detail::check_sample_args(values, loc);
  const int64_t B = values.size(0), NH = values.size(1), C = values.size(2);
  const int64_t H = values.size(3), W = values.size(4);
  const int64_t Nq = loc.size(1), P = loc.size(3);
  MSDA_CHECK(d_samples.rank() == 5 && d_samples.size(0) == B && d_samples.size(1) == Nq &&
                 d_samples.size(2) == NH && d_samples.size(3) == P && d_samples.size(4) == C,
             "d_samples must be (B,Nq,heads,P,C_h), got " << shape_str(d_samples.shape()));

  // Rounding is non-differentiable, so d_coords stays identically zero.
  SampleGradsT<T> g{TensorT<T>(values.shape()), TensorT<T>(loc.shape())};
  const T* lp = loc.data();
  const T* up = d_samples.data();
  T* dvp = g.d_values.data();

  const int64_t v_head = C * H * W, v_chan = H * W;
  for (int64_t b = 0; b < B; ++b) {
    for (int64_t q = 0; q < Nq; ++q) {
      for (int64_t h = 0; h < NH; ++h) {
        for (int64_t p = 0; p < P; ++p) {
          const int64_t li = (((b * Nq + q) * NH + h) * P + p) * 2;
          const double u = static_cast<double>(lp[li]) * static_cast<double>(W);
          const double v = static_cast<double>(lp[li + 1]) * static_cast<double>(H);
          const int64_t iu = static_cast<int64_t>(std::floor(u));
          const int64_t iv = static_cast<int64_t>(std::floor(v));
          if (iu < 0 || iu >= W || iv < 0 || iv >= H) continue;
          const T* ups = up + (((b * Nq + q) * NH + h) * P + p) * C;
          T* dbase = dvp + b * NH * v_head + h * v_head + iv * W + iu;
          for (int64_t c = 0; c < C; ++c) dbase[c * v_chan] += ups[c];
        }
      }
    }
  }
  return g;
}

}  // namespace msda
