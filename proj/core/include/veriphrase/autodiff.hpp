// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors
//
// Minimal reverse-mode automatic differentiation on a flat tape.
// Nodes are scalars; model parameters live in an external flat array and
// gradients are accumulated into a parallel array during backward().
// Two fused multiply-add ops (axpy_param, fma_param) keep matrix-vector
// products at one node per term.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace veriphrase::ad {

using Var = int32_t;
inline constexpr Var kNoVar = -1;

enum class Op : uint8_t {
  Const,
  Param,      // val = theta[pidx]
  Add,
  Sub,
  Mul,
  Div,
  Neg,
  Tanh,
  Sigmoid,
  Exp,
  Log,
  VMax,       // max(a, b); gradient routed to the larger input (ties: a)
  FloorC,     // max(a, aux); gradient passes only when a > aux
  AxpyParam,  // theta[pidx] * aux + a        (aux is a constant multiplier)
  FmaParam,   // theta[pidx] * val(a) + val(b)
  StGrad,     // val = aux; backward passes gradient to a unchanged
};

class Tape {
 public:
  /// theta: parameter values read by Param/Axpy/Fma nodes.
  /// grad: same length as theta, or null for forward-only use.
  Tape(const std::vector<double>& theta, std::vector<double>* grad)
      : theta_(&theta), grad_(grad) {}

  Var constant(double v) { return push(Op::Const, v, kNoVar, kNoVar, 0, 0.0); }
  Var param(int pidx) { return push(Op::Param, (*theta_)[pidx], kNoVar, kNoVar, pidx, 0.0); }

  Var add(Var a, Var b) { return push(Op::Add, val(a) + val(b), a, b, 0, 0.0); }
  Var sub(Var a, Var b) { return push(Op::Sub, val(a) - val(b), a, b, 0, 0.0); }
  Var mul(Var a, Var b) { return push(Op::Mul, val(a) * val(b), a, b, 0, 0.0); }
  Var div(Var a, Var b) { return push(Op::Div, val(a) / val(b), a, b, 0, 0.0); }
  Var neg(Var a) { return push(Op::Neg, -val(a), a, kNoVar, 0, 0.0); }
  Var tanh_(Var a);
  Var sigmoid_(Var a);
  Var exp_(Var a);
  Var log_(Var a);
  Var vmax(Var a, Var b) {
    return push(Op::VMax, val(a) >= val(b) ? val(a) : val(b), a, b, 0, 0.0);
  }
  Var floor_at(Var a, double c) {
    return push(Op::FloorC, val(a) > c ? val(a) : c, a, kNoVar, 0, c);
  }
  /// theta[pidx] * x + acc, with x a plain constant (sparse feature value).
  Var axpy_param(int pidx, double x, Var acc) {
    return push(Op::AxpyParam, (*theta_)[pidx] * x + val(acc), acc, kNoVar, pidx, x);
  }
  /// theta[pidx] * u + acc for tape-valued u.
  Var fma_param(int pidx, Var u, Var acc) {
    return push(Op::FmaParam, (*theta_)[pidx] * val(u) + val(acc), u, acc, pidx, 0.0);
  }
  /// Straight-through: forward value is `forward`, backward treats the node
  /// as the identity of `a`.
  Var straight_through(Var a, double forward) {
    return push(Op::StGrad, forward, a, kNoVar, 0, forward);
  }

  double val(Var v) const { return nodes_[v].val; }
  double grad_of(Var v) const { return nodes_[v].grad; }

  /// Reverse sweep from `loss` (seeded with 1). Parameter gradients are
  /// *added* into the external grad array; node grads are reset first.
  void backward(Var loss);

  void reset() { nodes_.clear(); }
  size_t size() const { return nodes_.size(); }
  void reserve(size_t n) { nodes_.reserve(n); }

 private:
  struct Node {
    double val;
    double grad;
    Var a;
    Var b;
    int32_t pidx;
    Op op;
    double aux;
  };

  Var push(Op op, double v, Var a, Var b, int32_t pidx, double aux) {
    nodes_.push_back(Node{v, 0.0, a, b, pidx, op, aux});
    return static_cast<Var>(nodes_.size() - 1);
  }

  const std::vector<double>* theta_;
  std::vector<double>* grad_;
  std::vector<Node> nodes_;
};

// Span helpers used all over the model graph.

Var sum(Tape& t, std::span<const Var> xs);
Var dot(Tape& t, std::span<const Var> xs, std::span<const Var> ys);

/// Numerically stable softmax over logits.
std::vector<Var> softmax(Tape& t, std::span<const Var> logits);

/// Softmax divided by `temperature` before normalization.
std::vector<Var> softmax_tempered(Tape& t, std::span<const Var> logits, double temperature);

}  // namespace veriphrase::ad
