#ifndef HARDMONO_ADADELTA_HPP
#define HARDMONO_ADADELTA_HPP

#include <unordered_map>
#include <vector>

#include "hardmono/graph.hpp"

namespace hardmono {

struct AdadeltaState {
  Mat sq_grad;    // E[g^2]
  Mat sq_update;  // E[dx^2]
};

// ADADELTA with the original defaults, no weight decay.
class Adadelta {
 public:
  explicit Adadelta(double rho = 0.95, double eps = 1e-6) : rho_(rho), eps_(eps) {}

  // Applies accumulated gradients and clears them.
  void update(const std::vector<Param*>& params);

  double rho() const { return rho_; }
  double eps() const { return eps_; }
  const AdadeltaState* state_of(const Param* p) const;

 private:
  double rho_;
  double eps_;
  std::unordered_map<const Param*, AdadeltaState> state_;
};

}  // namespace hardmono

#endif
