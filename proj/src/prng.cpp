#include "sudocrypt/prng.hpp"

#include <algorithm>
#include <numeric>

#include "sudocrypt/errors.hpp"

namespace sudocrypt {

std::pair<PrngState, std::uint64_t> next_u64(PrngState s) noexcept {
    s.state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = s.state;
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return {s, z};
}

std::uint64_t draw(PrngState& s) noexcept {
    auto [next, out] = next_u64(s);
    s = next;
    return out;
}

Permutation::Permutation(std::vector<std::size_t> map) : map_(std::move(map)) {
    std::vector<bool> seen(map_.size(), false);
    for (std::size_t v : map_) {
        if (v >= map_.size() || seen[v]) throw InvalidArgument("permutation map is not a bijection");
        seen[v] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::size_t> map(n);
    std::iota(map.begin(), map.end(), std::size_t{0});
    Permutation p;
    p.map_ = std::move(map);
    return p;
}

bool Permutation::is_identity() const noexcept {
    for (std::size_t i = 0; i < map_.size(); ++i)
        if (map_[i] != i) return false;
    return true;
}

Permutation fisher_yates(PrngState& s, std::size_t n) {
    if (n == 0) throw InvalidArgument("permutation length must be positive");
    std::vector<std::size_t> map(n);
    std::iota(map.begin(), map.end(), std::size_t{0});
    for (std::size_t i = n - 1; i >= 1; --i) {
        const std::size_t j = static_cast<std::size_t>(draw(s) % (static_cast<std::uint64_t>(i) + 1));
        std::swap(map[i], map[j]);
    }
    return Permutation(std::move(map));
}

Permutation derive_permutation(std::uint64_t seed, std::size_t n) {
    PrngState s{seed};
    return fisher_yates(s, n);
}

Permutation invert_permutation(const Permutation& p) {
    std::vector<std::size_t> inv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = i;
    return Permutation(std::move(inv));
}

}  // namespace sudocrypt
