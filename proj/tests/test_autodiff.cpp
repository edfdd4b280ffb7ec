#include <doctest.h>

#include <cmath>

#include "fd_check.hpp"
#include "hardmono/adadelta.hpp"
#include "hardmono/lstm.hpp"

using namespace hardmono;
using hardmono::testing::fd_check;

namespace {

Mat random_mat(int rows, int cols, Rng& rng) {
  Mat m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.uniform(-1.0, 1.0);
  return m;
}

}  // namespace

TEST_CASE("softmax of equal logits is uniform") {
  Graph g;
  const int out = g.softmax(g.input(Mat::Zero(2, 1)));
  CHECK(g.value(out)(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(g.value(out)(1, 0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("softmax sums to one and stays positive") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Graph g;
    const int out = g.softmax(g.input(random_mat(6, 1, rng) * 10.0));
    const Mat& v = g.value(out);
    CHECK(std::abs(v.sum() - 1.0) < 1e-9);
    CHECK(v.minCoeff() > 0.0);
  }
}

TEST_CASE("pick-neg-log-softmax of uniform logits is ln 2") {
  Graph g;
  const int out = g.pick_neg_log_softmax(g.input(Mat::Zero(2, 1)), 0);
  CHECK(g.value(out)(0, 0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("matmul by the identity is the identity map") {
  Rng rng(3);
  Graph g;
  const Mat v = random_mat(2, 1, rng);
  const int out = g.matmul(g.input(Mat::Identity(2, 2)), g.input(v));
  CHECK((g.value(out) - v).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("shape mismatches name the op") {
  Graph g;
  const int a = g.input(Mat::Zero(2, 2));
  const int b = g.input(Mat::Zero(3, 1));
  CHECK_THROWS_WITH_AS(g.matmul(a, b), doctest::Contains("matmul"), ShapeError);
  CHECK_THROWS_WITH_AS(g.add(a, b), doctest::Contains("add"), ShapeError);
}

TEST_CASE("backward of sum is all ones") {
  Graph g;
  const int v = g.input(Mat::Zero(4, 1));
  g.backward(g.sum(v));
  CHECK(g.grad(v).isOnes(0.0));
}

TEST_CASE("backward through a squared linear term matches the chain rule") {
  // loss = (w*x - t)^2 at w=1, x=2, t=0 -> dL/dw = 8
  Graph g;
  Param w(Mat::Constant(1, 1, 1.0));
  const int wx = g.matmul(g.param(w), g.input(Mat::Constant(1, 1, 2.0)));
  const int err = g.add(wx, g.input(Mat::Constant(1, 1, -0.0)));
  const int loss = g.cmul(err, err);
  g.backward(loss);
  CHECK(w.grad(0, 0) == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("backward rejects non-scalar loss") {
  Graph g;
  const int v = g.input(Mat::Zero(3, 1));
  CHECK_THROWS_AS(g.backward(v), ShapeError);
}

TEST_CASE("gradients of each primitive match central differences") {
  Rng rng(11);
  Param a(random_mat(3, 3, rng)), b(random_mat(3, 1, rng)), c(random_mat(3, 1, rng));
  const std::vector<Param*> params = {&a, &b, &c};

  auto build = [&](Graph& g) {
    const int na = g.param(a), nb = g.param(b), nc = g.param(c);
    const int lin = g.add(g.matmul(na, nb), nc);
    const int mixed = g.concat({g.tanh(lin), g.sigmoid(lin), g.cmul(lin, nc), g.softmax(lin),
                                g.transpose(g.transpose(lin))});
    return g.add(g.sum(mixed), g.pick_neg_log_softmax(lin, 1));
  };

  for (int trial = 0; trial < 5; ++trial) {
    a.value = random_mat(3, 3, rng);
    b.value = random_mat(3, 1, rng);
    c.value = random_mat(3, 1, rng);
    for (Param* p : params) p->zero_grad();
    Graph g;
    g.backward(build(g));
    auto loss_fn = [&] {
      Graph h;
      return h.value(build(h))(0, 0);
    };
    const auto report = fd_check(params, loss_fn);
    CHECK(report.failed == 0);
  }
}

TEST_CASE("lstm_step with all-zero parameters yields zero state") {
  Rng rng(1);
  LstmLayerParams p = LstmLayerParams::create(3, 4, rng);
  p.visit("p", [](const std::string&, Param& q) { q.value.setZero(); });
  Graph g;
  const auto r = lstm_step(g, p, g.input(random_mat(3, 1, rng)), g.input(Mat::Zero(4, 1)),
                           g.input(Mat::Zero(4, 1)));
  CHECK(g.value(r.h).isZero(0.0));
  CHECK(g.value(r.c).isZero(0.0));
}

TEST_CASE("one-dimensional lstm_step matches hand evaluation") {
  // all weights 1, biases 0, x=0, h=0, c=1
  Rng rng(1);
  LstmLayerParams p = LstmLayerParams::create(1, 1, rng);
  p.visit("p", [](const std::string& name, Param& q) {
    q.value.setConstant(name.find(".b") != std::string::npos ? 0.0 : 1.0);
  });
  Graph g;
  const auto r = lstm_step(g, p, g.input(Mat::Zero(1, 1)), g.input(Mat::Zero(1, 1)),
                           g.input(Mat::Ones(1, 1)));
  const double gate = 1.0 / (1.0 + std::exp(-1.0));   // i = f = sigma(1)
  const double c_t = gate;                            // c*f + 0*i
  const double o = 1.0 / (1.0 + std::exp(-c_t));
  CHECK(g.value(r.c)(0, 0) == doctest::Approx(c_t).epsilon(1e-12));
  CHECK(g.value(r.h)(0, 0) == doctest::Approx(std::tanh(c_t) * o).epsilon(1e-12));
  CHECK(g.value(r.c)(0, 0) == doctest::Approx(0.7311).epsilon(1e-4));
  CHECK(g.value(r.h)(0, 0) == doctest::Approx(0.4200).epsilon(1e-3));
}

TEST_CASE("lstm_step gradients match central differences") {
  Rng rng(23);
  LstmLayerParams p = LstmLayerParams::create(3, 4, rng);
  std::vector<Param*> params;
  p.visit("p", [&](const std::string&, Param& q) { params.push_back(&q); });
  const Mat x = random_mat(3, 1, rng), h0 = random_mat(4, 1, rng), c0 = random_mat(4, 1, rng);

  auto build = [&](Graph& g) {
    const auto r = lstm_step(g, p, g.input(x), g.input(h0), g.input(c0));
    return g.sum(g.cmul(r.h, r.h));
  };
  Graph g;
  g.backward(build(g));
  const auto report = fd_check(params, [&] {
    Graph h;
    return h.value(build(h))(0, 0);
  });
  CHECK(report.failed == 0);
}

TEST_CASE("lstm output stays inside the tanh-sigmoid envelope") {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    LstmLayerParams p = LstmLayerParams::create(2, 3, rng);
    Graph g;
    const auto r = lstm_step(g, p, g.input(random_mat(2, 1, rng)), g.input(random_mat(3, 1, rng)),
                             g.input(random_mat(3, 1, rng)));
    CHECK(g.value(r.h).cwiseAbs().maxCoeff() <= 1.0);
  }
}

TEST_CASE("forward pass is deterministic for a fixed seed") {
  auto run = [] {
    Rng rng(42);
    LstmLayerParams p = LstmLayerParams::create(3, 3, rng);
    Graph g;
    const auto r = lstm_step(g, p, g.input(random_mat(3, 1, rng)), g.input(Mat::Zero(3, 1)),
                             g.input(Mat::Zero(3, 1)));
    return Mat(g.value(r.h));
  };
  const Mat a = run(), b = run();
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("adadelta leaves parameters alone on a zero gradient") {
  Param w(Mat::Constant(2, 1, 1.5));
  Adadelta opt;
  // seed the accumulators with one real update
  w.grad.setConstant(0.2);
  opt.update({&w});
  const Mat before = w.value;
  const AdadeltaState s0 = *opt.state_of(&w);
  w.zero_grad();
  opt.update({&w});
  CHECK((w.value - before).cwiseAbs().maxCoeff() == 0.0);
  CHECK((opt.state_of(&w)->sq_grad - 0.95 * s0.sq_grad).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("adadelta first step from zeroed state matches the recurrence") {
  const double grad = 0.7, rho = 0.95, eps = 1e-6;
  Param w(Mat::Zero(1, 1));
  w.grad.setConstant(grad);
  Adadelta opt(rho, eps);
  opt.update({&w});
  const double expected = -std::sqrt(eps) / std::sqrt(eps + (1.0 - rho) * grad * grad) * grad;
  CHECK(w.value(0, 0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("adadelta descends on a quadratic") {
  Param w(Mat::Zero(1, 1));
  Adadelta opt;
  std::vector<double> losses;
  for (int step = 0; step < 200; ++step) {
    const double diff = w.value(0, 0) - 3.0;
    losses.push_back(diff * diff);
    w.grad.setConstant(2.0 * diff);
    opt.update({&w});
  }
  CHECK(std::abs(w.value(0, 0) - 3.0) < 3.0);
  for (std::size_t i = 10; i < losses.size(); i += 10) {
    CHECK(losses[i] < losses[i - 10]);
  }
}
