// Copyright 2026 The Duet Authors
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

#include "duet/nn/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "duet/error.hpp"

namespace duet::nn {

namespace {

std::string shape_string(const std::vector<int>& shape) {
  std::string s = "[";
  for (size_t i = 0; i < shape.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

TensorPtr make_node(std::vector<int> shape, std::vector<TensorPtr> parents) {
  auto t = Tensor::zeros(std::move(shape));
  bool tracked = false;
  for (const auto& p : parents) {
    if (p && p->tracked()) tracked = true;
  }
  if (tracked) t->parents = std::move(parents);
  return t;
}

// Row-major strides, with stride 0 on broadcast (size-1) axes relative to
// the output shape.
std::vector<int64_t> aligned_strides(const std::vector<int>& shape,
                                     const std::vector<int>& out_shape) {
  const int nd = static_cast<int>(out_shape.size());
  const int offset = nd - static_cast<int>(shape.size());
  std::vector<int64_t> strides(static_cast<size_t>(nd), 0);
  int64_t acc = 1;
  for (int i = static_cast<int>(shape.size()) - 1; i >= 0; --i) {
    const int64_t s = shape[static_cast<size_t>(i)] == 1 ? 0 : acc;
    strides[static_cast<size_t>(i + offset)] = s;
    acc *= shape[static_cast<size_t>(i)];
  }
  return strides;
}

// Linear offsets of every output element into a broadcast operand.
std::vector<int64_t> broadcast_offsets(const std::vector<int>& shape,
                                       const std::vector<int>& out_shape) {
  const auto strides = aligned_strides(shape, out_shape);
  const int nd = static_cast<int>(out_shape.size());
  const int64_t total = shape_numel(out_shape);
  std::vector<int64_t> offsets(static_cast<size_t>(total));
  std::vector<int> idx(static_cast<size_t>(nd), 0);
  int64_t off = 0;
  for (int64_t i = 0; i < total; ++i) {
    offsets[static_cast<size_t>(i)] = off;
    for (int d = nd - 1; d >= 0; --d) {
      idx[static_cast<size_t>(d)]++;
      off += strides[static_cast<size_t>(d)];
      if (idx[static_cast<size_t>(d)] < out_shape[static_cast<size_t>(d)]) break;
      off -= strides[static_cast<size_t>(d)] * out_shape[static_cast<size_t>(d)];
      idx[static_cast<size_t>(d)] = 0;
    }
  }
  return offsets;
}

// C[M,N] += A[M,K] * B[K,N]
void gemm_acc(const double* a, const double* b, double* c, int m, int k, int n) {
  for (int i = 0; i < m; ++i) {
    const double* arow = a + static_cast<int64_t>(i) * k;
    double* crow = c + static_cast<int64_t>(i) * n;
    for (int p = 0; p < k; ++p) {
      const double av = arow[p];
      if (av == 0.0) continue;
      const double* brow = b + static_cast<int64_t>(p) * n;
      for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

// C[M,K] += A[M,N] * B^T where B is [K,N]
void gemm_nt_acc(const double* a, const double* b, double* c, int m, int n, int k) {
  for (int i = 0; i < m; ++i) {
    const double* arow = a + static_cast<int64_t>(i) * n;
    double* crow = c + static_cast<int64_t>(i) * k;
    for (int p = 0; p < k; ++p) {
      const double* brow = b + static_cast<int64_t>(p) * n;
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += arow[j] * brow[j];
      crow[p] += acc;
    }
  }
}

// C[K,N] += A^T * B where A is [M,K], B is [M,N]
void gemm_tn_acc(const double* a, const double* b, double* c, int m, int k, int n) {
  for (int i = 0; i < m; ++i) {
    const double* arow = a + static_cast<int64_t>(i) * k;
    const double* brow = b + static_cast<int64_t>(i) * n;
    for (int p = 0; p < k; ++p) {
      const double av = arow[p];
      if (av == 0.0) continue;
      double* crow = c + static_cast<int64_t>(p) * n;
      for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

}  // namespace

int64_t shape_numel(const std::vector<int>& shape) {
  int64_t n = 1;
  for (int d : shape) {
    if (d < 0) throw ArgumentError("negative dimension in shape " + shape_string(shape));
    n *= d;
  }
  return n;
}

TensorPtr Tensor::zeros(std::vector<int> shape, bool requires_grad) {
  auto t = std::make_shared<Tensor>();
  t->value.assign(static_cast<size_t>(shape_numel(shape)), 0.0);
  t->shape = std::move(shape);
  t->requires_grad = requires_grad;
  return t;
}

TensorPtr Tensor::full(std::vector<int> shape, double v, bool requires_grad) {
  auto t = zeros(std::move(shape), requires_grad);
  std::fill(t->value.begin(), t->value.end(), v);
  return t;
}

TensorPtr Tensor::from_values(std::vector<int> shape, std::vector<double> v, bool requires_grad) {
  if (shape_numel(shape) != static_cast<int64_t>(v.size())) {
    throw ArgumentError("value count does not match shape " + shape_string(shape));
  }
  auto t = std::make_shared<Tensor>();
  t->shape = std::move(shape);
  t->value = std::move(v);
  t->requires_grad = requires_grad;
  return t;
}

TensorPtr Tensor::scalar(double v, bool requires_grad) {
  return from_values({1}, {v}, requires_grad);
}

double Tensor::item() const {
  if (value.size() != 1) throw ArgumentError("item() requires a single-element tensor");
  return value[0];
}

std::vector<int> broadcast_shape(const std::vector<int>& a, const std::vector<int>& b) {
  const int nd = std::max(a.size(), b.size());
  std::vector<int> out(static_cast<size_t>(nd));
  for (int i = 0; i < nd; ++i) {
    const int da = i < nd - static_cast<int>(a.size())
                       ? 1
                       : a[static_cast<size_t>(i - (nd - static_cast<int>(a.size())))];
    const int db = i < nd - static_cast<int>(b.size())
                       ? 1
                       : b[static_cast<size_t>(i - (nd - static_cast<int>(b.size())))];
    if (da != db && da != 1 && db != 1) {
      throw ArgumentError("shapes not broadcastable: " + shape_string(a) + " vs " +
                          shape_string(b));
    }
    out[static_cast<size_t>(i)] = std::max(da, db);
  }
  return out;
}

namespace {

// Shared implementation for broadcast binary ops.
template <typename Fwd, typename BwdA, typename BwdB>
TensorPtr broadcast_binary(const TensorPtr& a, const TensorPtr& b, Fwd fwd, BwdA bwd_a,
                           BwdB bwd_b) {
  if (a->shape == b->shape) {
    auto out = make_node(a->shape, {a, b});
    const int64_t n = a->numel();
    for (int64_t i = 0; i < n; ++i) {
      out->value[static_cast<size_t>(i)] =
          fwd(a->value[static_cast<size_t>(i)], b->value[static_cast<size_t>(i)]);
    }
    if (!out->parents.empty()) {
      TensorPtr pa = a, pb = b;
      out->backward_fn = [pa, pb, bwd_a, bwd_b](Tensor& self) {
        const int64_t total = self.numel();
        for (int64_t i = 0; i < total; ++i) {
          const size_t s = static_cast<size_t>(i);
          pa->grad[s] += bwd_a(pa->value[s], pb->value[s]) * self.grad[s];
          pb->grad[s] += bwd_b(pa->value[s], pb->value[s]) * self.grad[s];
        }
      };
    }
    return out;
  }

  const auto out_shape = broadcast_shape(a->shape, b->shape);
  auto out = make_node(out_shape, {a, b});
  const auto a_off = broadcast_offsets(a->shape, out_shape);
  const auto b_off = broadcast_offsets(b->shape, out_shape);
  const int64_t total = shape_numel(out_shape);
  for (int64_t i = 0; i < total; ++i) {
    const size_t s = static_cast<size_t>(i);
    out->value[s] = fwd(a->value[static_cast<size_t>(a_off[s])],
                        b->value[static_cast<size_t>(b_off[s])]);
  }
  if (!out->parents.empty()) {
    TensorPtr pa = a, pb = b;
    out->backward_fn = [pa, pb, a_off, b_off, bwd_a, bwd_b](Tensor& self) {
      const int64_t total_n = self.numel();
      for (int64_t i = 0; i < total_n; ++i) {
        const size_t s = static_cast<size_t>(i);
        const size_t ia = static_cast<size_t>(a_off[s]);
        const size_t ib = static_cast<size_t>(b_off[s]);
        pa->grad[ia] += bwd_a(pa->value[ia], pb->value[ib]) * self.grad[s];
        pb->grad[ib] += bwd_b(pa->value[ia], pb->value[ib]) * self.grad[s];
      }
    };
  }
  return out;
}

}  // namespace

TensorPtr add(const TensorPtr& a, const TensorPtr& b) {
  return broadcast_binary(
      a, b, [](double x, double y) { return x + y; }, [](double, double) { return 1.0; },
      [](double, double) { return 1.0; });
}

TensorPtr mul(const TensorPtr& a, const TensorPtr& b) {
  return broadcast_binary(
      a, b, [](double x, double y) { return x * y; }, [](double, double y) { return y; },
      [](double x, double) { return x; });
}

TensorPtr scale(const TensorPtr& a, double s) {
  auto out = make_node(a->shape, {a});
  const int64_t n = a->numel();
  for (int64_t i = 0; i < n; ++i) out->value[static_cast<size_t>(i)] = s * a->value[static_cast<size_t>(i)];
  if (!out->parents.empty()) {
    TensorPtr pa = a;
    out->backward_fn = [pa, s](Tensor& self) {
      const int64_t total = self.numel();
      for (int64_t i = 0; i < total; ++i) {
        pa->grad[static_cast<size_t>(i)] += s * self.grad[static_cast<size_t>(i)];
      }
    };
  }
  return out;
}

TensorPtr matmul(const TensorPtr& a, const TensorPtr& b) {
  if (a->ndim() < 2 || b->ndim() < 2) {
    throw ArgumentError("matmul requires rank >= 2, got " + shape_string(a->shape) + " @ " +
                        shape_string(b->shape));
  }
  const int m = a->shape[static_cast<size_t>(a->ndim() - 2)];
  const int k = a->shape[static_cast<size_t>(a->ndim() - 1)];
  const int kb = b->shape[static_cast<size_t>(b->ndim() - 2)];
  const int n = b->shape[static_cast<size_t>(b->ndim() - 1)];
  if (k != kb) {
    throw ArgumentError("matmul inner dims disagree: " + shape_string(a->shape) + " @ " +
                        shape_string(b->shape));
  }
  const bool shared_b = b->ndim() == 2;
  if (!shared_b) {
    if (std::vector<int>(a->shape.begin(), a->shape.end() - 2) !=
        std::vector<int>(b->shape.begin(), b->shape.end() - 2)) {
      throw ArgumentError("matmul leading dims disagree: " + shape_string(a->shape) + " @ " +
                          shape_string(b->shape));
    }
  }
  int64_t batch = 1;
  for (int i = 0; i + 2 < a->ndim(); ++i) batch *= a->shape[static_cast<size_t>(i)];

  std::vector<int> out_shape(a->shape.begin(), a->shape.end() - 2);
  out_shape.push_back(m);
  out_shape.push_back(n);
  auto out = make_node(out_shape, {a, b});

  const int64_t a_step = static_cast<int64_t>(m) * k;
  const int64_t b_step = shared_b ? 0 : static_cast<int64_t>(k) * n;
  const int64_t c_step = static_cast<int64_t>(m) * n;
  for (int64_t bi = 0; bi < batch; ++bi) {
    gemm_acc(a->value.data() + bi * a_step, b->value.data() + bi * b_step,
             out->value.data() + bi * c_step, m, k, n);
  }
  if (!out->parents.empty()) {
    TensorPtr pa = a, pb = b;
    out->backward_fn = [pa, pb, batch, m, k, n, a_step, b_step, c_step](Tensor& self) {
      for (int64_t bi = 0; bi < batch; ++bi) {
        const double* dc = self.grad.data() + bi * c_step;
        // dA = dC @ B^T
        gemm_nt_acc(dc, pb->value.data() + bi * b_step, pa->grad.data() + bi * a_step, m, n, k);
        // dB = A^T @ dC
        gemm_tn_acc(pa->value.data() + bi * a_step, dc, pb->grad.data() + bi * b_step, m, k, n);
      }
    };
  }
  return out;
}

TensorPtr transpose(const TensorPtr& a, std::vector<int> perm) {
  const int nd = a->ndim();
  if (perm.empty()) {
    if (nd < 2) throw ArgumentError("transpose needs rank >= 2");
    perm.resize(static_cast<size_t>(nd));
    for (int i = 0; i < nd; ++i) perm[static_cast<size_t>(i)] = i;
    std::swap(perm[static_cast<size_t>(nd - 2)], perm[static_cast<size_t>(nd - 1)]);
  }
  if (static_cast<int>(perm.size()) != nd) throw ArgumentError("transpose perm rank mismatch");
  std::vector<bool> seen(static_cast<size_t>(nd), false);
  for (int p : perm) {
    if (p < 0 || p >= nd || seen[static_cast<size_t>(p)]) {
      throw ArgumentError("transpose perm is not a permutation");
    }
    seen[static_cast<size_t>(p)] = true;
  }

  std::vector<int> out_shape(static_cast<size_t>(nd));
  for (int i = 0; i < nd; ++i) {
    out_shape[static_cast<size_t>(i)] = a->shape[static_cast<size_t>(perm[static_cast<size_t>(i)])];
  }
  // in_strides in input order; walk output index space.
  std::vector<int64_t> in_strides(static_cast<size_t>(nd), 1);
  for (int i = nd - 2; i >= 0; --i) {
    in_strides[static_cast<size_t>(i)] =
        in_strides[static_cast<size_t>(i + 1)] * a->shape[static_cast<size_t>(i + 1)];
  }
  std::vector<int64_t> walk(static_cast<size_t>(nd));
  for (int i = 0; i < nd; ++i) {
    walk[static_cast<size_t>(i)] = in_strides[static_cast<size_t>(perm[static_cast<size_t>(i)])];
  }

  auto out = make_node(out_shape, {a});
  const int64_t total = a->numel();
  std::vector<int> idx(static_cast<size_t>(nd), 0);
  std::vector<int64_t> src_map(static_cast<size_t>(total));
  int64_t src = 0;
  for (int64_t i = 0; i < total; ++i) {
    out->value[static_cast<size_t>(i)] = a->value[static_cast<size_t>(src)];
    src_map[static_cast<size_t>(i)] = src;
    for (int d = nd - 1; d >= 0; --d) {
      idx[static_cast<size_t>(d)]++;
      src += walk[static_cast<size_t>(d)];
      if (idx[static_cast<size_t>(d)] < out_shape[static_cast<size_t>(d)]) break;
      src -= walk[static_cast<size_t>(d)] * out_shape[static_cast<size_t>(d)];
      idx[static_cast<size_t>(d)] = 0;
    }
  }
  if (!out->parents.empty()) {
    TensorPtr pa = a;
    out->backward_fn = [pa, src_map](Tensor& self) {
      const int64_t total_n = self.numel();
      for (int64_t i = 0; i < total_n; ++i) {
        pa->grad[static_cast<size_t>(src_map[static_cast<size_t>(i)])] +=
            self.grad[static_cast<size_t>(i)];
      }
    };
  }
  return out;
}

TensorPtr reshape(const TensorPtr& a, std::vector<int> new_shape) {
  if (shape_numel(new_shape) != a->numel()) {
    throw ArgumentError("reshape element count mismatch: " + shape_string(a->shape) + " -> " +
                        shape_string(new_shape));
  }
  auto out = make_node(new_shape, {a});
  out->value = a->value;
  if (!out->parents.empty()) {
    TensorPtr pa = a;
    out->backward_fn = [pa](Tensor& self) {
      const int64_t total = self.numel();
      for (int64_t i = 0; i < total; ++i) {
        pa->grad[static_cast<size_t>(i)] += self.grad[static_cast<size_t>(i)];
      }
    };
  }
  return out;
}

TensorPtr softmax(const TensorPtr& a) {
  if (a->ndim() < 1) throw ArgumentError("softmax needs rank >= 1");
  const int c = a->shape.back();
  auto out = make_node(a->shape, {a});
  const int64_t rows = a->numel() / c;
  for (int64_t r = 0; r < rows; ++r) {
    const double* x = a->value.data() + r * c;
    double* y = out->value.data() + r * c;
    double mx = x[0];
    for (int i = 1; i < c; ++i) mx = std::max(mx, x[i]);
    double denom = 0.0;
    for (int i = 0; i < c; ++i) {
      y[i] = std::exp(x[i] - mx);
      denom += y[i];
    }
    for (int i = 0; i < c; ++i) y[i] /= denom;
  }
  if (!out->parents.empty()) {
    TensorPtr pa = a;
    out->backward_fn = [pa, c](Tensor& self) {
      const int64_t rows_n = self.numel() / c;
      for (int64_t r = 0; r < rows_n; ++r) {
        const double* s = self.value.data() + r * c;
        const double* g = self.grad.data() + r * c;
        double* dx = pa->grad.data() + r * c;
        double dot = 0.0;
        for (int i = 0; i < c; ++i) dot += s[i] * g[i];
        for (int i = 0; i < c; ++i) dx[i] += s[i] * (g[i] - dot);
      }
    };
  }
  return out;
}

TensorPtr log_softmax(const TensorPtr& a) {
  if (a->ndim() < 1) throw ArgumentError("log_softmax needs rank >= 1");
  const int c = a->shape.back();
  auto out = make_node(a->shape, {a});
  const int64_t rows = a->numel() / c;
  for (int64_t r = 0; r < rows; ++r) {
    const double* x = a->value.data() + r * c;
    double* y = out->value.data() + r * c;
    double mx = x[0];
    for (int i = 1; i < c; ++i) mx = std::max(mx, x[i]);
    double denom = 0.0;
    for (int i = 0; i < c; ++i) denom += std::exp(x[i] - mx);
    const double lse = mx + std::log(denom);
    for (int i = 0; i < c; ++i) y[i] = x[i] - lse;
  }
  if (!out->parents.empty()) {
    TensorPtr pa = a;
    out->backward_fn = [pa, c](Tensor& self) {
      const int64_t rows_n = self.numel() / c;
      for (int64_t r = 0; r < rows_n; ++r) {
        const double* y = self.value.data() + r * c;
        const double* g = self.grad.data() + r * c;
        double* dx = pa->grad.data() + r * c;
        double gsum = 0.0;
        for (int i = 0; i < c; ++i) gsum += g[i];
        for (int i = 0; i < c; ++i) dx[i] += g[i] - std::exp(y[i]) * gsum;
      }
    };
  }
  return out;
}

TensorPtr exp_op(const TensorPtr& a) {
  auto out = make_node(a->shape, {a});
  const int64_t n = a->numel();
  for (int64_t i = 0; i < n; ++i) {
    out->value[static_cast<size_t>(i)] = std::exp(a->value[static_cast<size_t>(i)]);
  }
  if (!out->parents.empty()) {
    TensorPtr pa = a;
    out->backward_fn = [pa](Tensor& self) {
      const int64_t total = self.numel();
      for (int64_t i = 0; i < total; ++i) {
        pa->grad[static_cast<size_t>(i)] +=
            self.value[static_cast<size_t>(i)] * self.grad[static_cast<size_t>(i)];
      }
    };
  }
  return out;
}

namespace {
constexpr double kGeluC = 0.7978845608028654;  // sqrt(2/pi)
constexpr double kGeluA = 0.044715;
}  // namespace

TensorPtr gelu(const TensorPtr& a) {
  auto out = make_node(a->shape, {a});
  const int64_t n = a->numel();
  for (int64_t i = 0; i < n; ++i) {
    const double x = a->value[static_cast<size_t>(i)];
    const double u = kGeluC * (x + kGeluA * x * x * x);
    out->value[static_cast<size_t>(i)] = 0.5 * x * (1.0 + std::tanh(u));
  }
  if (!out->parents.empty()) {
    TensorPtr pa = a;
    out->backward_fn = [pa](Tensor& self) {
      const int64_t total = self.numel();
      for (int64_t i = 0; i < total; ++i) {
        const double x = pa->value[static_cast<size_t>(i)];
        const double u = kGeluC * (x + kGeluA * x * x * x);
        const double th = std::tanh(u);
        const double du = kGeluC * (1.0 + 3.0 * kGeluA * x * x);
        const double d = 0.5 * (1.0 + th) + 0.5 * x * (1.0 - th * th) * du;
        pa->grad[static_cast<size_t>(i)] += d * self.grad[static_cast<size_t>(i)];
      }
    };
  }
  return out;
}

TensorPtr relu(const TensorPtr& a) {
  auto out = make_node(a->shape, {a});
  const int64_t n = a->numel();
  for (int64_t i = 0; i < n; ++i) {
    out->value[static_cast<size_t>(i)] = std::max(0.0, a->value[static_cast<size_t>(i)]);
  }
  if (!out->parents.empty()) {
    TensorPtr pa = a;
    out->backward_fn = [pa](Tensor& self) {
      const int64_t total = self.numel();
      for (int64_t i = 0; i < total; ++i) {
        if (pa->value[static_cast<size_t>(i)] > 0.0) {
          pa->grad[static_cast<size_t>(i)] += self.grad[static_cast<size_t>(i)];
        }
      }
    };
  }
  return out;
}

TensorPtr layer_norm(const TensorPtr& x, const TensorPtr& gain, const TensorPtr& bias,
                     double eps) {
  const int d = x->shape.back();
  if (gain->shape != std::vector<int>{d} || bias->shape != std::vector<int>{d}) {
    throw ArgumentError("layer_norm gain/bias must be [" + std::to_string(d) + "]");
  }
  auto out = make_node(x->shape, {x, gain, bias});
  const int64_t rows = x->numel() / d;
  // cached normalized values and inverse stds for the backward pass
  auto xhat = std::make_shared<std::vector<double>>(x->value.size());
  auto inv_std = std::make_shared<std::vector<double>>(static_cast<size_t>(rows));
  for (int64_t r = 0; r < rows; ++r) {
    const double* xr = x->value.data() + r * d;
    double mean = 0.0;
    for (int i = 0; i < d; ++i) mean += xr[i];
    mean /= d;
    double var = 0.0;
    for (int i = 0; i < d; ++i) var += (xr[i] - mean) * (xr[i] - mean);
    var /= d;
    const double is = 1.0 / std::sqrt(var + eps);
    (*inv_std)[static_cast<size_t>(r)] = is;
    double* yr = out->value.data() + r * d;
    for (int i = 0; i < d; ++i) {
      const double h = (xr[i] - mean) * is;
      (*xhat)[static_cast<size_t>(r * d + i)] = h;
      yr[i] = h * gain->value[static_cast<size_t>(i)] + bias->value[static_cast<size_t>(i)];
    }
  }
  if (!out->parents.empty()) {
    TensorPtr px = x, pg = gain, pb = bias;
    out->backward_fn = [px, pg, pb, xhat, inv_std, d](Tensor& self) {
      const int64_t rows_n = self.numel() / d;
      std::vector<double> dxhat(static_cast<size_t>(d));
      for (int64_t r = 0; r < rows_n; ++r) {
        const double* g = self.grad.data() + r * d;
        const double* h = xhat->data() + r * d;
        double* dx = px->grad.data() + r * d;
        double mean_dxhat = 0.0;
        double mean_dxhat_h = 0.0;
        for (int i = 0; i < d; ++i) {
          dxhat[static_cast<size_t>(i)] = g[i] * pg->value[static_cast<size_t>(i)];
          mean_dxhat += dxhat[static_cast<size_t>(i)];
          mean_dxhat_h += dxhat[static_cast<size_t>(i)] * h[i];
          pg->grad[static_cast<size_t>(i)] += g[i] * h[i];
          pb->grad[static_cast<size_t>(i)] += g[i];
        }
        mean_dxhat /= d;
        mean_dxhat_h /= d;
        const double is = (*inv_std)[static_cast<size_t>(r)];
        for (int i = 0; i < d; ++i) {
          dx[i] += is * (dxhat[static_cast<size_t>(i)] - mean_dxhat - h[i] * mean_dxhat_h);
        }
      }
    };
  }
  return out;
}

TensorPtr conv1d(const TensorPtr& x, const TensorPtr& w, const TensorPtr& bias) {
  if (x->ndim() != 3 || w->ndim() != 3) {
    throw ArgumentError("conv1d expects x [B,T,Cin] and w [K,Cin,Cout]");
  }
  const int b = x->shape[0];
  const int t = x->shape[1];
  const int cin = x->shape[2];
  const int k = w->shape[0];
  const int cout = w->shape[2];
  if (w->shape[1] != cin) throw ArgumentError("conv1d channel mismatch");
  if (k % 2 == 0) throw ArgumentError("conv1d kernel width must be odd");
  if (bias->shape != std::vector<int>{cout}) throw ArgumentError("conv1d bias must be [Cout]");
  const int pad = (k - 1) / 2;

  auto out = make_node({b, t, cout}, {x, w, bias});
  for (int bi = 0; bi < b; ++bi) {
    for (int ti = 0; ti < t; ++ti) {
      double* orow = out->value.data() + (static_cast<int64_t>(bi) * t + ti) * cout;
      for (int co = 0; co < cout; ++co) orow[co] = bias->value[static_cast<size_t>(co)];
      for (int ki = 0; ki < k; ++ki) {
        const int tau = ti + ki - pad;
        if (tau < 0 || tau >= t) continue;
        const double* xrow = x->value.data() + (static_cast<int64_t>(bi) * t + tau) * cin;
        const double* wmat = w->value.data() + static_cast<int64_t>(ki) * cin * cout;
        for (int ci = 0; ci < cin; ++ci) {
          const double xv = xrow[ci];
          if (xv == 0.0) continue;
          const double* wrow = wmat + static_cast<int64_t>(ci) * cout;
          for (int co = 0; co < cout; ++co) orow[co] += xv * wrow[co];
        }
      }
    }
  }
  if (!out->parents.empty()) {
    TensorPtr px = x, pw = w, pb = bias;
    out->backward_fn = [px, pw, pb, b, t, cin, k, cout, pad](Tensor& self) {
      for (int bi = 0; bi < b; ++bi) {
        for (int ti = 0; ti < t; ++ti) {
          const double* grow = self.grad.data() + (static_cast<int64_t>(bi) * t + ti) * cout;
          for (int co = 0; co < cout; ++co) pb->grad[static_cast<size_t>(co)] += grow[co];
          for (int ki = 0; ki < k; ++ki) {
            const int tau = ti + ki - pad;
            if (tau < 0 || tau >= t) continue;
            const double* xrow = px->value.data() + (static_cast<int64_t>(bi) * t + tau) * cin;
            double* dxrow = px->grad.data() + (static_cast<int64_t>(bi) * t + tau) * cin;
            const double* wmat = pw->value.data() + static_cast<int64_t>(ki) * cin * cout;
            double* dwmat = pw->grad.data() + static_cast<int64_t>(ki) * cin * cout;
            for (int ci = 0; ci < cin; ++ci) {
              const double* wrow = wmat + static_cast<int64_t>(ci) * cout;
              double* dwrow = dwmat + static_cast<int64_t>(ci) * cout;
              const double xv = xrow[ci];
              double acc = 0.0;
              for (int co = 0; co < cout; ++co) {
                acc += grow[co] * wrow[co];
                dwrow[co] += xv * grow[co];
              }
              dxrow[ci] += acc;
            }
          }
        }
      }
    };
  }
  return out;
}

namespace {

void check_axis(const TensorPtr& a, int axis) {
  if (axis < 0 || axis >= a->ndim()) {
    throw ArgumentError("axis " + std::to_string(axis) + " out of range for rank " +
                        std::to_string(a->ndim()));
  }
}

}  // namespace

TensorPtr sum_axis(const TensorPtr& a, int axis) {
  check_axis(a, axis);
  const int nd = a->ndim();
  int64_t outer = 1, inner = 1;
  for (int i = 0; i < axis; ++i) outer *= a->shape[static_cast<size_t>(i)];
  for (int i = axis + 1; i < nd; ++i) inner *= a->shape[static_cast<size_t>(i)];
  const int64_t mid = a->shape[static_cast<size_t>(axis)];

  std::vector<int> out_shape;
  for (int i = 0; i < nd; ++i) {
    if (i != axis) out_shape.push_back(a->shape[static_cast<size_t>(i)]);
  }
  if (out_shape.empty()) out_shape = {1};
  auto out = make_node(out_shape, {a});
  for (int64_t o = 0; o < outer; ++o) {
    for (int64_t m = 0; m < mid; ++m) {
      const double* src = a->value.data() + (o * mid + m) * inner;
      double* dst = out->value.data() + o * inner;
      for (int64_t i = 0; i < inner; ++i) dst[i] += src[i];
    }
  }
  if (!out->parents.empty()) {
    TensorPtr pa = a;
    out->backward_fn = [pa, outer, mid, inner](Tensor& self) {
      for (int64_t o = 0; o < outer; ++o) {
        const double* g = self.grad.data() + o * inner;
        for (int64_t m = 0; m < mid; ++m) {
          double* dst = pa->grad.data() + (o * mid + m) * inner;
          for (int64_t i = 0; i < inner; ++i) dst[i] += g[i];
        }
      }
    };
  }
  return out;
}

TensorPtr mean_axis(const TensorPtr& a, int axis) {
  check_axis(a, axis);
  const double inv = 1.0 / a->shape[static_cast<size_t>(axis)];
  return scale(sum_axis(a, axis), inv);
}

TensorPtr mean_all(const TensorPtr& a) {
  auto flat = reshape(a, {static_cast<int>(a->numel())});
  return mean_axis(flat, 0);
}

TensorPtr concat(const std::vector<TensorPtr>& parts, int axis) {
  if (parts.empty()) throw ArgumentError("concat needs at least one input");
  const int nd = parts[0]->ndim();
  check_axis(parts[0], axis);
  std::vector<int> out_shape = parts[0]->shape;
  int total_axis = 0;
  for (const auto& p : parts) {
    if (p->ndim() != nd) throw ArgumentError("concat rank mismatch");
    for (int i = 0; i < nd; ++i) {
      if (i != axis && p->shape[static_cast<size_t>(i)] != out_shape[static_cast<size_t>(i)]) {
        throw ArgumentError("concat non-axis dims must match");
      }
    }
    total_axis += p->shape[static_cast<size_t>(axis)];
  }
  out_shape[static_cast<size_t>(axis)] = total_axis;

  int64_t outer = 1, inner = 1;
  for (int i = 0; i < axis; ++i) outer *= out_shape[static_cast<size_t>(i)];
  for (int i = axis + 1; i < nd; ++i) inner *= out_shape[static_cast<size_t>(i)];

  std::vector<TensorPtr> parents(parts.begin(), parts.end());
  auto out = make_node(out_shape, parents);
  int64_t axis_offset = 0;
  for (const auto& p : parts) {
    const int64_t p_axis = p->shape[static_cast<size_t>(axis)];
    for (int64_t o = 0; o < outer; ++o) {
      const double* src = p->value.data() + o * p_axis * inner;
      double* dst = out->value.data() + (o * total_axis + axis_offset) * inner;
      std::copy_n(src, p_axis * inner, dst);
    }
    axis_offset += p_axis;
  }
  if (!out->parents.empty()) {
    auto parts_copy = parts;
    out->backward_fn = [parts_copy, outer, inner, total_axis, axis](Tensor& self) {
      int64_t off = 0;
      for (const auto& p : parts_copy) {
        const int64_t p_axis = p->shape[static_cast<size_t>(axis)];
        for (int64_t o = 0; o < outer; ++o) {
          const double* g = self.grad.data() + (o * total_axis + off) * inner;
          double* dst = p->grad.data() + o * p_axis * inner;
          for (int64_t i = 0; i < p_axis * inner; ++i) dst[i] += g[i];
        }
        off += p_axis;
      }
    };
  }
  return out;
}

TensorPtr embedding(const TensorPtr& table, const std::vector<int>& ids,
                    std::vector<int> ids_shape) {
  if (table->ndim() != 2) throw ArgumentError("embedding table must be [V, D]");
  if (shape_numel(ids_shape) != static_cast<int64_t>(ids.size())) {
    throw ArgumentError("embedding ids/shape mismatch");
  }
  const int v = table->shape[0];
  const int d = table->shape[1];
  for (int id : ids) {
    if (id < 0 || id >= v) throw ArgumentError("embedding id out of range: " + std::to_string(id));
  }
  std::vector<int> out_shape = std::move(ids_shape);
  out_shape.push_back(d);
  auto out = make_node(out_shape, {table});
  for (size_t i = 0; i < ids.size(); ++i) {
    std::copy_n(table->value.data() + static_cast<int64_t>(ids[i]) * d, d,
                out->value.data() + static_cast<int64_t>(i) * d);
  }
  if (!out->parents.empty()) {
    TensorPtr pt = table;
    auto ids_copy = ids;
    out->backward_fn = [pt, ids_copy, d](Tensor& self) {
      for (size_t i = 0; i < ids_copy.size(); ++i) {
        const double* g = self.grad.data() + static_cast<int64_t>(i) * d;
        double* dst = pt->grad.data() + static_cast<int64_t>(ids_copy[i]) * d;
        for (int j = 0; j < d; ++j) dst[j] += g[j];
      }
    };
  }
  return out;
}

TensorPtr l2_normalize(const TensorPtr& a) {
  const int d = a->shape.back();
  auto out = make_node(a->shape, {a});
  const int64_t rows = a->numel() / d;
  auto norms = std::make_shared<std::vector<double>>(static_cast<size_t>(rows));
  for (int64_t r = 0; r < rows; ++r) {
    const double* x = a->value.data() + r * d;
    double sq = 0.0;
    for (int i = 0; i < d; ++i) sq += x[i] * x[i];
    const double n = std::max(std::sqrt(sq), 1e-12);
    (*norms)[static_cast<size_t>(r)] = n;
    double* y = out->value.data() + r * d;
    for (int i = 0; i < d; ++i) y[i] = x[i] / n;
  }
  if (!out->parents.empty()) {
    TensorPtr pa = a;
    out->backward_fn = [pa, norms, d](Tensor& self) {
      const int64_t rows_n = self.numel() / d;
      for (int64_t r = 0; r < rows_n; ++r) {
        const double* z = self.value.data() + r * d;
        const double* g = self.grad.data() + r * d;
        double* dx = pa->grad.data() + r * d;
        const double n = (*norms)[static_cast<size_t>(r)];
        double dot = 0.0;
        for (int i = 0; i < d; ++i) dot += z[i] * g[i];
        for (int i = 0; i < d; ++i) dx[i] += (g[i] - z[i] * dot) / n;
      }
    };
  }
  return out;
}

TensorPtr pick_columns(const TensorPtr& a, const std::vector<int>& cols) {
  if (a->ndim() != 2) throw ArgumentError("pick_columns expects [N, C]");
  const int n = a->shape[0];
  const int c = a->shape[1];
  if (static_cast<int>(cols.size()) != n) throw ArgumentError("pick_columns needs one column per row");
  for (int col : cols) {
    if (col < 0 || col >= c) throw ArgumentError("pick_columns column out of range");
  }
  auto out = make_node({n}, {a});
  for (int i = 0; i < n; ++i) {
    out->value[static_cast<size_t>(i)] =
        a->value[static_cast<size_t>(i) * c + static_cast<size_t>(cols[static_cast<size_t>(i)])];
  }
  if (!out->parents.empty()) {
    TensorPtr pa = a;
    auto cols_copy = cols;
    out->backward_fn = [pa, cols_copy, c](Tensor& self) {
      for (size_t i = 0; i < cols_copy.size(); ++i) {
        pa->grad[i * static_cast<size_t>(c) + static_cast<size_t>(cols_copy[i])] += self.grad[i];
      }
    };
  }
  return out;
}

TensorPtr dropout(const TensorPtr& a, double p, RandomStream& rng, bool training) {
  if (p < 0.0 || p >= 1.0) throw ArgumentError("dropout rate must be in [0,1)");
  if (!training || p == 0.0) return a;
  auto mask = std::make_shared<std::vector<double>>(a->value.size());
  const double keep_scale = 1.0 / (1.0 - p);
  for (auto& m : *mask) {
    m = rng.uniform() < p ? 0.0 : keep_scale;
  }
  auto out = make_node(a->shape, {a});
  const int64_t n = a->numel();
  for (int64_t i = 0; i < n; ++i) {
    out->value[static_cast<size_t>(i)] =
        a->value[static_cast<size_t>(i)] * (*mask)[static_cast<size_t>(i)];
  }
  if (!out->parents.empty()) {
    TensorPtr pa = a;
    out->backward_fn = [pa, mask](Tensor& self) {
      const int64_t total = self.numel();
      for (int64_t i = 0; i < total; ++i) {
        pa->grad[static_cast<size_t>(i)] +=
            (*mask)[static_cast<size_t>(i)] * self.grad[static_cast<size_t>(i)];
      }
    };
  }
  return out;
}

void backward(const TensorPtr& root) {
  if (root->numel() != 1) throw ArgumentError("backward requires a scalar root");

  // Iterative post-order DFS to collect the topological order.
  std::vector<Tensor*> order;
  std::unordered_set<Tensor*> visited;
  std::vector<std::pair<Tensor*, size_t>> stack;
  stack.emplace_back(root.get(), 0);
  visited.insert(root.get());
  while (!stack.empty()) {
    auto& [node, child] = stack.back();
    if (child < node->parents.size()) {
      Tensor* next = node->parents[child].get();
      ++child;
      if (next && visited.insert(next).second) {
        stack.emplace_back(next, 0);
      }
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }

  for (Tensor* node : order) {
    node->grad.assign(node->value.size(), 0.0);
  }
  root->grad[0] = 1.0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Tensor* node = *it;
    if (node->backward_fn) node->backward_fn(*node);
  }
}

TensorPtr& ParamMap::at(const std::string& name) {
  const auto it = params_.find(name);
  if (it == params_.end()) throw ArgumentError("unknown parameter: " + name);
  return it->second;
}

const TensorPtr& ParamMap::at(const std::string& name) const {
  const auto it = params_.find(name);
  if (it == params_.end()) throw ArgumentError("unknown parameter: " + name);
  return it->second;
}

void ParamMap::insert(const std::string& name, TensorPtr t) {
  if (!params_.emplace(name, std::move(t)).second) {
    throw ArgumentError("duplicate parameter: " + name);
  }
}

int64_t ParamMap::total_parameters() const {
  int64_t n = 0;
  for (const auto& [name, t] : params_) n += t->numel();
  return n;
}

}  // namespace duet::nn
