#pragma once

#include <functional>
#include <future>
#include <map>
#include <mutex>

namespace qlie::detail {

/// Thread-safe memo table. The first caller computes; concurrent callers
/// for the same key wait on the published result.
template <class Key, class Value>
class Memo {
 public:
  Value get(const Key& key, const std::function<Value()>& compute) {
    std::shared_future<Value> fut;
    std::promise<Value> promise;
    bool owner = false;
    {
      std::lock_guard lock(mutex_);
      auto it = table_.find(key);
      if (it != table_.end()) {
        fut = it->second;
      } else {
        fut = promise.get_future().share();
        table_.emplace(key, fut);
        owner = true;
      }
    }
    if (owner) {
      try {
        promise.set_value(compute());
      } catch (...) {
        promise.set_exception(std::current_exception());
        std::lock_guard lock(mutex_);
        table_.erase(key);
      }
    }
    return fut.get();
  }

 private:
  std::mutex mutex_;
  std::map<Key, std::shared_future<Value>> table_;
};

}  // namespace qlie::detail
