#include "osc/pool.hpp"

namespace osc {

ControllerPool::ControllerPool(std::size_t capacity, ControllerConfig cfg)
    : capacity_(capacity), cfg_(std::move(cfg)) {}

Controller* ControllerPool::allocate() {
  if (active_.size() >= capacity_) return nullptr;
  std::size_t id = next_id_++;
  auto ctrl = std::make_unique<Controller>(id, cfg_, blacklist_);
  Controller* raw = ctrl.get();
  active_.emplace(id, std::move(ctrl));
  return raw;
}

void ControllerPool::release(std::size_t controller_id) {
  auto it = active_.find(controller_id);
  if (it == active_.end()) return;
  retired_.push_back(std::move(it->second));
  active_.erase(it);
}

}  // namespace osc
