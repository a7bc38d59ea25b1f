#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace sudocrypt {

/// SplitMix64 state. A plain value: copy it to fork a stream.
struct PrngState {
    std::uint64_t state = 0;
    friend bool operator==(const PrngState&, const PrngState&) = default;
};

/// Advances the state and returns the next SplitMix64 output.
std::pair<PrngState, std::uint64_t> next_u64(PrngState s) noexcept;

/// Convenience form that advances `s` in place.
std::uint64_t draw(PrngState& s) noexcept;

/// A bijection on {0..n-1}. `map[i]` is the source index feeding position i.
class Permutation {
public:
    Permutation() = default;

    /// Throws InvalidArgument unless `map` is a bijection on {0..map.size()-1}.
    explicit Permutation(std::vector<std::size_t> map);

    static Permutation identity(std::size_t n);

    std::size_t size() const noexcept { return map_.size(); }
    std::size_t operator[](std::size_t i) const noexcept { return map_[i]; }
    std::span<const std::size_t> map() const noexcept { return map_; }

    bool is_identity() const noexcept;

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<std::size_t> map_;
};

/// Fisher-Yates over SplitMix64: for i = n-1..1, j = next_u64 mod (i+1), swap.
/// Consumes n-1 outputs from `s`.
Permutation fisher_yates(PrngState& s, std::size_t n);

/// Deterministic permutation seeded from `seed`. Throws InvalidArgument for n == 0.
Permutation derive_permutation(std::uint64_t seed, std::size_t n);

/// result[p[i]] = i.
Permutation invert_permutation(const Permutation& p);

/// Gathers `in` through `p`: out[i] = in[p[i]].
template <typename T>
std::vector<T> apply_permutation(const Permutation& p, std::span<const T> in) {
    std::vector<T> out(in.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = in[p[i]];
    return out;
}

}  // namespace sudocrypt
