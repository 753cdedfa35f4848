#pragma once

#include <algorithm>
#include <span>
#include <vector>

namespace blastertrace::detail {

/// Pointers to `records` sorted by timestamp; equal timestamps keep file order.
template <class T>
std::vector<const T*> chronological(std::span<const T> records) {
  std::vector<const T*> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(&r);
  std::stable_sort(out.begin(), out.end(), [](const T* a, const T* b) { return a->ts < b->ts; });
  return out;
}

}  // namespace blastertrace::detail
