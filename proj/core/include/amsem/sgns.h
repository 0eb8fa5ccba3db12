// Copyright 2026 The Amsem Authors
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

#ifndef AMSEM_SGNS_H_
#define AMSEM_SGNS_H_

// Negative-sampling objective kernels, templated on the scalar type so the
// trainer runs them in float while gradient checks run them in double.
//
// For a hidden vector h and target rows u_0 (positive) .. u_k (negatives):
//   loss = -log s(u_0 . h) - sum_{t>=1} log s(-u_t . h)
// Skip-gram uses h = input vector of the center word; CBOW uses the mean of
// the context input vectors.

#include <cmath>
#include <cstddef>
#include <span>

namespace amsem::sgns {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// log(1 + e^z) without overflow.
inline double softplus(double z) {
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

template <class T>
T dot(std::span<const T> a, std::span<const T> b) {
  T s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// d loss / d (u_t . h) = -(label_t - s(u_t . h)); this returns the
// bracketed term, which is also the SGD step direction scale.
inline double coefficient(double score, bool positive) {
  return (positive ? 1.0 : 0.0) - sigmoid(score);
}

inline double target_loss(double score, bool positive) {
  return positive ? softplus(-score) : softplus(score);
}

template <class T>
T loss(std::span<const T> h, std::span<const std::span<const T>> targets) {
  double total = 0;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    total += target_loss(static_cast<double>(dot(targets[t], h)), t == 0);
  }
  return static_cast<T>(total);
}

// Writes d loss / d h into grad_h and d loss / d u_t into grad_targets[t].
template <class T>
void gradient(std::span<const T> h, std::span<const std::span<const T>> targets,
              std::span<T> grad_h, std::span<const std::span<T>> grad_targets) {
  for (T& g : grad_h) g = 0;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const T g = static_cast<T>(
        coefficient(static_cast<double>(dot(targets[t], h)), t == 0));
    for (std::size_t i = 0; i < h.size(); ++i) {
      grad_h[i] -= g * targets[t][i];
      grad_targets[t][i] = -g * h[i];
    }
  }
}

// One SGD step on the target rows for a fixed h. Adds -(d loss / d h) to
// `ascent_h` using the target rows as they were before this step; the
// caller applies lr * ascent_h to whatever input rows produced h. Returns
// the loss before the step.
template <class T>
double step(std::span<const T> h, std::span<const std::span<T>> targets, T lr,
            std::span<T> ascent_h) {
  double total = 0;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    std::span<T> u = targets[t];
    const double score =
        static_cast<double>(dot(std::span<const T>(u), h));
    total += target_loss(score, t == 0);
    const T g = static_cast<T>(coefficient(score, t == 0));
    for (std::size_t i = 0; i < h.size(); ++i) ascent_h[i] += g * u[i];
    const T scale = g * lr;
    for (std::size_t i = 0; i < h.size(); ++i) u[i] += scale * h[i];
  }
  return total;
}

// CBOW objective as a function of the individual context vectors.
template <class T>
T cbow_loss(std::span<const std::span<const T>> contexts,
            std::span<const std::span<const T>> targets, std::span<T> scratch_h) {
  for (T& x : scratch_h) x = 0;
  for (auto c : contexts) {
    for (std::size_t i = 0; i < c.size(); ++i) scratch_h[i] += c[i];
  }
  const T inv = T(1) / static_cast<T>(contexts.size());
  for (T& x : scratch_h) x *= inv;
  return loss<T>(scratch_h, targets);
}

// d loss / d context_j = (d loss / d h) / m for every context row.
template <class T>
void cbow_gradient(std::span<const std::span<const T>> contexts,
                   std::span<const std::span<const T>> targets,
                   std::span<T> scratch_h, std::span<T> grad_h,
                   std::span<const std::span<T>> grad_contexts,
                   std::span<const std::span<T>> grad_targets) {
  for (T& x : scratch_h) x = 0;
  for (auto c : contexts) {
    for (std::size_t i = 0; i < c.size(); ++i) scratch_h[i] += c[i];
  }
  const T inv = T(1) / static_cast<T>(contexts.size());
  for (T& x : scratch_h) x *= inv;
  gradient<T>(scratch_h, targets, grad_h, grad_targets);
  for (auto g : grad_contexts) {
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = grad_h[i] * inv;
  }
}

}  // namespace amsem::sgns

#endif  // AMSEM_SGNS_H_
