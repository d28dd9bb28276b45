#pragma once

#include <cstddef>
#include <future>
#include <vector>

namespace qclab::detail {

/// Runs fn(items[k]) concurrently and returns the results in input order.
template <class T, class Fn>
auto ordered_parallel_map(const std::vector<T>& items, Fn fn) {
  using R = decltype(fn(items.front()));
  std::vector<std::future<R>> futures;
  futures.reserve(items.size());
  for (const auto& item : items) futures.push_back(std::async(std::launch::async, fn, item));
  std::vector<R> out;
  out.reserve(items.size());
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

}  // namespace qclab::detail
