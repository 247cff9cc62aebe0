#pragma once

#include <map>
#include <memory>
#include <set>
#include <vector>

#include "osc/controller.hpp"

namespace osc {

// Fixed-capacity supply of controllers operated by the community. Fresh
// allocations inherit the community blacklist, so a revoked certificate is
// refused even by a controller spun up after the revocation. Released
// controllers free capacity but stay owned here, keeping handed-out pointers
// valid for the pool's lifetime.
class ControllerPool {
public:
  ControllerPool(std::size_t capacity, ControllerConfig cfg);

  Controller* allocate();  // nullptr when the pool is exhausted
  void release(std::size_t controller_id);

  void add_blacklist(const Digest& fp) { blacklist_.insert(fp); }
  const std::set<Digest>& blacklist() const { return blacklist_; }

  std::size_t capacity() const { return capacity_; }
  std::size_t in_use() const { return active_.size(); }
  std::size_t allocated_total() const { return next_id_; }

private:
  std::size_t capacity_;
  ControllerConfig cfg_;
  std::set<Digest> blacklist_;
  std::size_t next_id_ = 0;
  std::map<std::size_t, std::unique_ptr<Controller>> active_;
  std::vector<std::unique_ptr<Controller>> retired_;
};

}  // namespace osc
