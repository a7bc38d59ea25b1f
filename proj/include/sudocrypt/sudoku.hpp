#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sudocrypt/prng.hpp"

namespace sudocrypt {

/// N x N Sudoku grid with sqrt(N) x sqrt(N) boxes. Cell value 0 means empty.
/// Supported sizes are perfect squares from 4 to 64.
class SudokuGrid {
public:
    using Cell = std::uint8_t;

    SudokuGrid() = default;

    /// Empty grid. Throws InvalidArgument if n is not a supported perfect square.
    explicit SudokuGrid(std::size_t n);

    /// Row-major cells. Throws InvalidArgument on wrong length or values > n.
    SudokuGrid(std::size_t n, std::vector<Cell> cells);

    static bool is_supported_size(std::size_t n) noexcept;

    std::size_t n() const noexcept { return n_; }
    std::size_t box() const noexcept { return box_; }

    Cell at(std::size_t row, std::size_t col) const noexcept { return cells_[row * n_ + col]; }
    void set(std::size_t row, std::size_t col, Cell v);

    std::span<const Cell> cells() const noexcept { return cells_; }
    std::span<const Cell> row(std::size_t r) const noexcept { return {cells_.data() + r * n_, n_}; }

    std::size_t empty_count() const noexcept;

    friend bool operator==(const SudokuGrid&, const SudokuGrid&) = default;

private:
    std::size_t n_ = 0;
    std::size_t box_ = 0;
    std::vector<Cell> cells_;
};

enum class ValidationMode {
    partial,  // zeros allowed, filled cells must not conflict
    strict,   // additionally no zeros
};

bool validate(const SudokuGrid& g, ValidationMode mode = ValidationMode::strict);

inline bool is_solved(const SudokuGrid& g) { return validate(g, ValidationMode::strict); }

/// First solution by backtracking (row-major cell scan, ascending candidates).
/// std::nullopt when the givens conflict or admit no completion.
std::optional<SudokuGrid> solve(const SudokuGrid& g);

/// Number of completions, counting stops at `limit`.
std::size_t count_solutions(const SudokuGrid& g, std::size_t limit = 2);

struct GenerationStats {
    SudokuGrid grid;
    std::size_t attempts = 0;  // diagonal fills tried, >= 1
};

/// Seeds the diagonal boxes with random permutations of 1..n, then completes the
/// grid by backtracking on the most constrained empty cell (row-major tie break,
/// ascending candidates). A fresh diagonal fill is drawn from the same stream when
/// an attempt exceeds 16*n*n placements. Deterministic in (n, seed).
GenerationStats generate_with_stats(std::size_t n, std::uint64_t seed);

inline SudokuGrid generate(std::size_t n, std::uint64_t seed) { return generate_with_stats(n, seed).grid; }

/// Row `row` of a solved grid, shifted to 0-based. Throws TamperedKey if the grid
/// is not solved, InvalidArgument if row is out of range.
Permutation row_permutation(const SudokuGrid& g, std::size_t row);

/// "sudoku n=<N>" followed by N lines of space-separated values, LF-terminated.
std::string to_text(const SudokuGrid& g);

/// Parses the block produced by to_text. Lines are numbered from `first_line`
/// in error messages. Throws KeyParseError for syntax and TamperedKey for
/// values outside 0..n.
SudokuGrid grid_from_text(std::span<const std::string_view> lines, std::size_t first_line = 1);
SudokuGrid grid_from_text(std::string_view text);

/// Displays values through `alphabet` (alphabet[v-1]); empty cells print '.'.
/// Throws InvalidArgument if the alphabet has fewer than n symbols.
std::string render(const SudokuGrid& g, std::string_view alphabet);

}  // namespace sudocrypt
