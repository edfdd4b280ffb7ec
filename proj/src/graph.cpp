#include "hardmono/graph.hpp"

#include <cmath>
#include <sstream>

namespace hardmono {

const char* op_name(Op op) {
  switch (op) {
    case Op::kInput: return "input";
    case Op::kParam: return "param";
    case Op::kMatMul: return "matmul";
    case Op::kTranspose: return "transpose";
    case Op::kAdd: return "add";
    case Op::kConcat: return "concat";
    case Op::kHConcat: return "hconcat";
    case Op::kTanh: return "tanh";
    case Op::kSigmoid: return "sigmoid";
    case Op::kCMul: return "pointwise-mul";
    case Op::kSoftmax: return "softmax";
    case Op::kPickNegLogSoftmax: return "pick-neg-log-softmax";
    case Op::kSum: return "sum";
  }
  return "?";
}

namespace {

[[noreturn]] void shape_fail(Op op, const Mat& a, const Mat& b) {
  std::ostringstream os;
  os << "shape mismatch in op '" << op_name(op) << "': " << a.rows() << "x" << a.cols() << " vs "
     << b.rows() << "x" << b.cols();
  throw ShapeError(os.str());
}

void check_finite(Op op, const Mat& m) {
  if (!m.allFinite()) {
    std::ostringstream os;
    os << "non-finite value produced by op '" << op_name(op) << "'";
    throw NumericError(os.str());
  }
}

}  // namespace

Mat softmax_values(const Mat& v) {
  const double mx = v.maxCoeff();
  Mat e = (v.array() - mx).exp();
  return e / e.sum();
}

int Graph::push(Node n) {
  check_finite(n.op, n.value);
  n.grad = Mat::Zero(n.value.rows(), n.value.cols());
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

int Graph::input(Mat value) {
  Node n;
  n.op = Op::kInput;
  n.value = std::move(value);
  return push(std::move(n));
}

int Graph::param(Param& p) {
  Node n;
  n.op = Op::kParam;
  n.value = p.value;
  n.param = &p;
  return push(std::move(n));
}

int Graph::matmul(int a, int b) {
  const Mat& A = value(a);
  const Mat& B = value(b);
  if (A.cols() != B.rows()) shape_fail(Op::kMatMul, A, B);
  Node n;
  n.op = Op::kMatMul;
  n.args = {a, b};
  n.value = A * B;
  return push(std::move(n));
}

int Graph::transpose(int a) {
  Node n;
  n.op = Op::kTranspose;
  n.args = {a};
  n.value = value(a).transpose();
  return push(std::move(n));
}

int Graph::add(int a, int b) {
  const Mat& A = value(a);
  const Mat& B = value(b);
  if (A.rows() != B.rows() || A.cols() != B.cols()) shape_fail(Op::kAdd, A, B);
  Node n;
  n.op = Op::kAdd;
  n.args = {a, b};
  n.value = A + B;
  return push(std::move(n));
}

int Graph::add(std::span<const int> xs) {
  if (xs.empty()) throw ShapeError("add: no operands");
  int acc = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) acc = add(acc, xs[i]);
  return acc;
}

int Graph::concat(std::span<const int> xs) {
  if (xs.empty()) throw ShapeError("concat: no operands");
  Eigen::Index rows = 0;
  for (int id : xs) {
    const Mat& v = value(id);
    if (v.cols() != 1) shape_fail(Op::kConcat, v, v);
    rows += v.rows();
  }
  Node n;
  n.op = Op::kConcat;
  n.args.assign(xs.begin(), xs.end());
  n.value = Mat(rows, 1);
  Eigen::Index off = 0;
  for (int id : xs) {
    const Mat& v = value(id);
    n.value.block(off, 0, v.rows(), 1) = v;
    off += v.rows();
  }
  return push(std::move(n));
}

int Graph::hconcat(std::span<const int> xs) {
  if (xs.empty()) throw ShapeError("hconcat: no operands");
  const Eigen::Index rows = value(xs[0]).rows();
  Eigen::Index cols = 0;
  for (int id : xs) {
    if (value(id).rows() != rows) shape_fail(Op::kHConcat, value(xs[0]), value(id));
    cols += value(id).cols();
  }
  Node n;
  n.op = Op::kHConcat;
  n.args.assign(xs.begin(), xs.end());
  n.value = Mat(rows, cols);
  Eigen::Index off = 0;
  for (int id : xs) {
    const Mat& v = value(id);
    n.value.block(0, off, rows, v.cols()) = v;
    off += v.cols();
  }
  return push(std::move(n));
}

int Graph::tanh(int a) {
  Node n;
  n.op = Op::kTanh;
  n.args = {a};
  n.value = value(a).array().tanh();
  return push(std::move(n));
}

int Graph::sigmoid(int a) {
  Node n;
  n.op = Op::kSigmoid;
  n.args = {a};
  n.value = (1.0 / (1.0 + (-value(a).array()).exp()));
  return push(std::move(n));
}

int Graph::cmul(int a, int b) {
  const Mat& A = value(a);
  const Mat& B = value(b);
  if (A.rows() != B.rows() || A.cols() != B.cols()) shape_fail(Op::kCMul, A, B);
  Node n;
  n.op = Op::kCMul;
  n.args = {a, b};
  n.value = A.array() * B.array();
  return push(std::move(n));
}

int Graph::softmax(int a) {
  const Mat& v = value(a);
  if (v.cols() != 1) shape_fail(Op::kSoftmax, v, v);
  Node n;
  n.op = Op::kSoftmax;
  n.args = {a};
  n.value = softmax_values(v);
  return push(std::move(n));
}

int Graph::pick_neg_log_softmax(int logits, int index) {
  const Mat& v = value(logits);
  if (v.cols() != 1) shape_fail(Op::kPickNegLogSoftmax, v, v);
  if (index < 0 || index >= v.rows()) {
    std::ostringstream os;
    os << "pick-neg-log-softmax: index " << index << " out of range for " << v.rows() << " logits";
    throw ShapeError(os.str());
  }
  const double mx = v.maxCoeff();
  const double lse = mx + std::log((v.array() - mx).exp().sum());
  Node n;
  n.op = Op::kPickNegLogSoftmax;
  n.args = {logits};
  n.pick = index;
  n.value = Mat::Constant(1, 1, lse - v(index, 0));
  return push(std::move(n));
}

int Graph::sum(int a) {
  Node n;
  n.op = Op::kSum;
  n.args = {a};
  n.value = Mat::Constant(1, 1, value(a).sum());
  return push(std::move(n));
}

void Graph::backward(int loss) {
  Node& top = nodes_[static_cast<std::size_t>(loss)];
  if (top.value.rows() != 1 || top.value.cols() != 1) {
    throw ShapeError("backward: loss node is not a scalar");
  }
  for (auto& n : nodes_) n.grad.setZero();
  top.grad(0, 0) = 1.0;

  for (int id = loss; id >= 0; --id) {
    Node& n = nodes_[static_cast<std::size_t>(id)];
    if (n.grad.isZero(0.0) && id != loss) continue;
    const Mat& g = n.grad;
    switch (n.op) {
      case Op::kInput:
        break;
      case Op::kParam:
        n.param->grad += g;
        break;
      case Op::kMatMul: {
        Node& a = nodes_[static_cast<std::size_t>(n.args[0])];
        Node& b = nodes_[static_cast<std::size_t>(n.args[1])];
        a.grad.noalias() += g * b.value.transpose();
        b.grad.noalias() += a.value.transpose() * g;
        break;
      }
      case Op::kTranspose:
        nodes_[static_cast<std::size_t>(n.args[0])].grad += g.transpose();
        break;
      case Op::kAdd:
        nodes_[static_cast<std::size_t>(n.args[0])].grad += g;
        nodes_[static_cast<std::size_t>(n.args[1])].grad += g;
        break;
      case Op::kConcat: {
        Eigen::Index off = 0;
        for (int aid : n.args) {
          Node& a = nodes_[static_cast<std::size_t>(aid)];
          a.grad += g.block(off, 0, a.value.rows(), 1);
          off += a.value.rows();
        }
        break;
      }
      case Op::kHConcat: {
        Eigen::Index off = 0;
        for (int aid : n.args) {
          Node& a = nodes_[static_cast<std::size_t>(aid)];
          a.grad += g.block(0, off, a.value.rows(), a.value.cols());
          off += a.value.cols();
        }
        break;
      }
      case Op::kTanh: {
        Node& a = nodes_[static_cast<std::size_t>(n.args[0])];
        a.grad.array() += g.array() * (1.0 - n.value.array().square());
        break;
      }
      case Op::kSigmoid: {
        Node& a = nodes_[static_cast<std::size_t>(n.args[0])];
        a.grad.array() += g.array() * n.value.array() * (1.0 - n.value.array());
        break;
      }
      case Op::kCMul: {
        Node& a = nodes_[static_cast<std::size_t>(n.args[0])];
        Node& b = nodes_[static_cast<std::size_t>(n.args[1])];
        a.grad.array() += g.array() * b.value.array();
        b.grad.array() += g.array() * a.value.array();
        break;
      }
      case Op::kSoftmax: {
        Node& a = nodes_[static_cast<std::size_t>(n.args[0])];
        const double dot = (n.value.array() * g.array()).sum();
        a.grad.array() += n.value.array() * (g.array() - dot);
        break;
      }
      case Op::kPickNegLogSoftmax: {
        Node& a = nodes_[static_cast<std::size_t>(n.args[0])];
        Mat sm = softmax_values(a.value);
        sm(n.pick, 0) -= 1.0;
        a.grad += g(0, 0) * sm;
        break;
      }
      case Op::kSum: {
        Node& a = nodes_[static_cast<std::size_t>(n.args[0])];
        a.grad.array() += g(0, 0);
        break;
      }
    }
  }
}

}  // namespace hardmono
