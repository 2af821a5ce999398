// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors

#include "veriphrase/autodiff.hpp"

#include <cmath>

namespace veriphrase::ad {

Var Tape::tanh_(Var a) { return push(Op::Tanh, std::tanh(val(a)), a, kNoVar, 0, 0.0); }

Var Tape::sigmoid_(Var a) {
  const double x = val(a);
  const double s = x >= 0.0 ? 1.0 / (1.0 + std::exp(-x))
                            : std::exp(x) / (1.0 + std::exp(x));
  return push(Op::Sigmoid, s, a, kNoVar, 0, 0.0);
}

Var Tape::exp_(Var a) { return push(Op::Exp, std::exp(val(a)), a, kNoVar, 0, 0.0); }
Var Tape::log_(Var a) { return push(Op::Log, std::log(val(a)), a, kNoVar, 0, 0.0); }

void Tape::backward(Var loss) {
  for (Node& n : nodes_) n.grad = 0.0;
  nodes_[loss].grad = 1.0;
  for (Var i = static_cast<Var>(nodes_.size()) - 1; i >= 0; --i) {
    Node& n = nodes_[i];
    const double g = n.grad;
    if (g == 0.0) continue;
    switch (n.op) {
      case Op::Const:
        break;
      case Op::Param:
        if (grad_) (*grad_)[n.pidx] += g;
        break;
      case Op::Add:
        nodes_[n.a].grad += g;
        nodes_[n.b].grad += g;
        break;
      case Op::Sub:
        nodes_[n.a].grad += g;
        nodes_[n.b].grad -= g;
        break;
      case Op::Mul:
        nodes_[n.a].grad += g * nodes_[n.b].val;
        nodes_[n.b].grad += g * nodes_[n.a].val;
        break;
      case Op::Div: {
        const double bv = nodes_[n.b].val;
        nodes_[n.a].grad += g / bv;
        nodes_[n.b].grad -= g * nodes_[n.a].val / (bv * bv);
        break;
      }
      case Op::Neg:
        nodes_[n.a].grad -= g;
        break;
      case Op::Tanh:
        nodes_[n.a].grad += g * (1.0 - n.val * n.val);
        break;
      case Op::Sigmoid:
        nodes_[n.a].grad += g * n.val * (1.0 - n.val);
        break;
      case Op::Exp:
        nodes_[n.a].grad += g * n.val;
        break;
      case Op::Log:
        nodes_[n.a].grad += g / nodes_[n.a].val;
        break;
      case Op::VMax:
        if (nodes_[n.a].val >= nodes_[n.b].val) {
          nodes_[n.a].grad += g;
        } else {
          nodes_[n.b].grad += g;
        }
        break;
      case Op::FloorC:
        if (nodes_[n.a].val > n.aux) nodes_[n.a].grad += g;
        break;
      case Op::AxpyParam:
        if (grad_) (*grad_)[n.pidx] += g * n.aux;
        nodes_[n.a].grad += g;
        break;
      case Op::FmaParam:
        if (grad_) (*grad_)[n.pidx] += g * nodes_[n.a].val;
        nodes_[n.a].grad += g * (*theta_)[n.pidx];
        nodes_[n.b].grad += g;
        break;
      case Op::StGrad:
        nodes_[n.a].grad += g;
        break;
    }
  }
}

Var sum(Tape& t, std::span<const Var> xs) {
  Var acc = t.constant(0.0);
  for (Var x : xs) acc = t.add(acc, x);
  return acc;
}

Var dot(Tape& t, std::span<const Var> xs, std::span<const Var> ys) {
  Var acc = t.constant(0.0);
  for (size_t i = 0; i < xs.size(); ++i) acc = t.add(acc, t.mul(xs[i], ys[i]));
  return acc;
}

std::vector<Var> softmax(Tape& t, std::span<const Var> logits) {
  return softmax_tempered(t, logits, 1.0);
}

std::vector<Var> softmax_tempered(Tape& t, std::span<const Var> logits, double temperature) {
  Var m = logits[0];
  for (size_t i = 1; i < logits.size(); ++i) m = t.vmax(m, logits[i]);
  const Var inv_temp = t.constant(1.0 / temperature);
  std::vector<Var> exps(logits.size());
  for (size_t i = 0; i < logits.size(); ++i) {
    exps[i] = t.exp_(t.mul(t.sub(logits[i], m), inv_temp));
  }
  const Var z = sum(t, exps);
  std::vector<Var> out(logits.size());
  for (size_t i = 0; i < logits.size(); ++i) out[i] = t.div(exps[i], z);
  return out;
}

}  // namespace veriphrase::ad
