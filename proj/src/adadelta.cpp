#include "hardmono/adadelta.hpp"

namespace hardmono {

const AdadeltaState* Adadelta::state_of(const Param* p) const {
  auto it = state_.find(p);
  return it == state_.end() ? nullptr : &it->second;
}

void Adadelta::update(const std::vector<Param*>& params) {
  for (Param* p : params) {
    auto [it, inserted] = state_.try_emplace(p);
    AdadeltaState& s = it->second;
    if (inserted) {
      s.sq_grad = Mat::Zero(p->value.rows(), p->value.cols());
      s.sq_update = Mat::Zero(p->value.rows(), p->value.cols());
    }
    const auto g = p->grad.array();
    s.sq_grad = rho_ * s.sq_grad.array() + (1.0 - rho_) * g.square();
    Mat delta = -((s.sq_update.array() + eps_).sqrt() / (s.sq_grad.array() + eps_).sqrt()) * g;
    s.sq_update = rho_ * s.sq_update.array() + (1.0 - rho_) * delta.array().square();
    p->value += delta;
    p->zero_grad();
  }
}

}  // namespace hardmono
