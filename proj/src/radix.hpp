#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

namespace bicon::detail {

// LSD radix sort on an unsigned key of `bytes` bytes. Stable. Short inputs
// fall back to a comparison sort, whose cost is then bounded by a constant
// per element.
template <class T, class Key>
void radix_sort(std::vector<T>& v, Key key, int bytes = 4) {
    if (v.size() < 64) {
        std::stable_sort(v.begin(), v.end(), [&](const T& x, const T& y) { return key(x) < key(y); });
        return;
    }
    std::vector<T> buf(v.size());
    for (int pass = 0; pass < bytes; ++pass) {
        const int shift = 8 * pass;
        std::array<std::size_t, 257> count{};
        for (const T& x : v) ++count[((static_cast<std::uint64_t>(key(x)) >> shift) & 0xff) + 1];
        if (std::find(count.begin() + 1, count.end(), v.size()) != count.end()) continue;  // constant byte
        for (int i = 0; i < 256; ++i) count[i + 1] += count[i];
        for (T& x : v) buf[count[(static_cast<std::uint64_t>(key(x)) >> shift) & 0xff]++] = std::move(x);
        v.swap(buf);
    }
}

inline void radix_sort(std::vector<std::uint32_t>& v) {
    radix_sort(v, [](std::uint32_t x) { return x; });
}

}  // namespace bicon::detail
