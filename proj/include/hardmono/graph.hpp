#ifndef HARDMONO_GRAPH_HPP
#define HARDMONO_GRAPH_HPP

#include <Eigen/Core>
#include <span>
#include <string>
#include <vector>

#include "hardmono/errors.hpp"

namespace hardmono {

using Mat = Eigen::MatrixXd;

// A trainable tensor. `grad` is accumulated by Graph::backward and
// consumed (then cleared) by the optimizer.
struct Param {
  Mat value;
  Mat grad;

  Param() = default;
  explicit Param(Mat v) : value(std::move(v)) { grad = Mat::Zero(value.rows(), value.cols()); }

  void zero_grad() { grad.setZero(); }
};

enum class Op {
  kInput,
  kParam,
  kMatMul,
  kTranspose,
  kAdd,
  kConcat,    // vertical stack of column vectors
  kHConcat,   // horizontal stack (columns)
  kTanh,
  kSigmoid,
  kCMul,      // pointwise multiply
  kSoftmax,   // column vector -> column vector
  kPickNegLogSoftmax,  // (logits, index) -> scalar
  kSum,       // reduce all entries to 1x1
};

const char* op_name(Op op);

// Dynamically built tape: values computed eagerly on node creation,
// gradients by a single reverse sweep. One graph per example; not
// shareable while being built.
class Graph {
 public:
  int input(Mat value);
  int param(Param& p);

  int matmul(int a, int b);
  int transpose(int a);
  int add(int a, int b);
  int add(std::span<const int> xs);
  int add(std::initializer_list<int> xs) { return add(std::span<const int>(xs.begin(), xs.size())); }
  int concat(std::span<const int> xs);
  int concat(std::initializer_list<int> xs) { return concat(std::span<const int>(xs.begin(), xs.size())); }
  int hconcat(std::span<const int> xs);
  int tanh(int a);
  int sigmoid(int a);
  int cmul(int a, int b);
  int softmax(int a);
  int pick_neg_log_softmax(int logits, int index);
  int sum(int a);

  const Mat& value(int id) const { return nodes_[static_cast<std::size_t>(id)].value; }
  const Mat& grad(int id) const { return nodes_[static_cast<std::size_t>(id)].grad; }
  std::size_t size() const { return nodes_.size(); }

  // Reverse accumulation from a scalar loss node. Parameter gradients
  // are added into their Param::grad.
  void backward(int loss);

 private:
  struct Node {
    Op op;
    std::vector<int> args;
    Mat value;
    Mat grad;
    Param* param = nullptr;
    int pick = -1;  // index for kPickNegLogSoftmax
  };

  int push(Node n);
  const Node& at(int id) const { return nodes_[static_cast<std::size_t>(id)]; }

  std::vector<Node> nodes_;
};

// Numerically stable column-vector softmax on plain values.
Mat softmax_values(const Mat& v);

}  // namespace hardmono

#endif
