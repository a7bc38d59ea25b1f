#include "sudocrypt/sudoku.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <limits>

#include "sudocrypt/errors.hpp"

namespace sudocrypt {

namespace {

constexpr std::size_t kMaxSize = 64;

std::size_t integer_sqrt(std::size_t n) {
    std::size_t r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::uint64_t full_mask(std::size_t n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

// Bits for values strictly greater than v (bit v-1 stands for value v).
std::uint64_t above(unsigned v) { return v >= 64 ? 0 : ~((std::uint64_t{1} << v) - 1); }

enum class SearchOutcome { completed, budget_exceeded };

struct SearchResult {
    SearchOutcome outcome = SearchOutcome::completed;
    std::size_t solutions = 0;
    std::optional<SudokuGrid> first;
};

// Deterministic backtracking: empty cells in row-major order, candidates ascending.
// The grid must already pass partial validation.
SearchResult backtrack(const SudokuGrid& grid, std::size_t max_solutions, std::uint64_t node_budget) {
    const std::size_t n = grid.n();
    const std::size_t box = grid.box();
    std::vector<SudokuGrid::Cell> cells(grid.cells().begin(), grid.cells().end());
    std::vector<std::uint64_t> rows(n, 0), cols(n, 0), boxes(n, 0);
    std::vector<std::size_t> empties;

    auto box_of = [box](std::size_t r, std::size_t c) { return (r / box) * box + c / box; };

    for (std::size_t i = 0; i < n * n; ++i) {
        const std::size_t r = i / n, c = i % n;
        if (cells[i] == 0) {
            empties.push_back(i);
            continue;
        }
        const std::uint64_t bit = std::uint64_t{1} << (cells[i] - 1);
        rows[r] |= bit;
        cols[c] |= bit;
        boxes[box_of(r, c)] |= bit;
    }

    SearchResult result;
    const std::uint64_t full = full_mask(n);
    std::vector<unsigned> placed(empties.size(), 0);
    std::size_t k = 0;
    std::uint64_t nodes = 0;

    while (true) {
        if (k == empties.size()) {
            ++result.solutions;
            if (result.solutions == 1) result.first = SudokuGrid(n, cells);
            if (result.solutions >= max_solutions || k == 0) return result;
            --k;
        }
        const std::size_t cell = empties[k];
        const std::size_t r = cell / n, c = cell % n, b = box_of(r, c);
        const unsigned current = placed[k];
        if (current != 0) {
            const std::uint64_t bit = ~(std::uint64_t{1} << (current - 1));
            rows[r] &= bit;
            cols[c] &= bit;
            boxes[b] &= bit;
        }
        const std::uint64_t avail = ~(rows[r] | cols[c] | boxes[b]) & full & above(current);
        if (avail == 0) {
            placed[k] = 0;
            cells[cell] = 0;
            if (k == 0) return result;
            --k;
            continue;
        }
        const unsigned v = static_cast<unsigned>(std::countr_zero(avail)) + 1;
        const std::uint64_t bit = std::uint64_t{1} << (v - 1);
        rows[r] |= bit;
        cols[c] |= bit;
        boxes[b] |= bit;
        cells[cell] = static_cast<SudokuGrid::Cell>(v);
        placed[k] = v;
        ++k;
        if (++nodes > node_budget) {
            result.outcome = SearchOutcome::budget_exceeded;
            return result;
        }
    }
}

// Completion search for generation: always branches on the empty cell with the
// fewest candidates (lowest index on ties), candidates ascending.
std::optional<SudokuGrid> complete_most_constrained(const SudokuGrid& grid, std::uint64_t node_budget) {
    const std::size_t n = grid.n();
    const std::size_t box = grid.box();
    std::vector<SudokuGrid::Cell> cells(grid.cells().begin(), grid.cells().end());
    std::vector<std::uint64_t> rows(n, 0), cols(n, 0), boxes(n, 0);
    auto box_of = [box](std::size_t r, std::size_t c) { return (r / box) * box + c / box; };
    auto toggle = [&](std::size_t cell, unsigned v) {
        const std::uint64_t bit = std::uint64_t{1} << (v - 1);
        const std::size_t r = cell / n, c = cell % n;
        rows[r] ^= bit;
        cols[c] ^= bit;
        boxes[box_of(r, c)] ^= bit;
    };
    for (std::size_t i = 0; i < n * n; ++i)
        if (cells[i] != 0) toggle(i, cells[i]);

    const std::uint64_t full = full_mask(n);
    auto candidates = [&](std::size_t cell) {
        const std::size_t r = cell / n, c = cell % n;
        return ~(rows[r] | cols[c] | boxes[box_of(r, c)]) & full;
    };

    struct Frame {
        std::size_t cell;
        unsigned value;
    };
    std::vector<Frame> stack;
    std::uint64_t nodes = 0;
    bool descend = true;

    while (true) {
        if (descend) {
            std::size_t best = n * n;
            int best_count = std::numeric_limits<int>::max();
            for (std::size_t i = 0; i < n * n && best_count > 0; ++i) {
                if (cells[i] != 0) continue;
                const int count = std::popcount(candidates(i));
                if (count < best_count) {
                    best = i;
                    best_count = count;
                }
            }
            if (best == n * n) return SudokuGrid(n, cells);
            if (best_count > 0) stack.push_back({best, 0});
        }
        if (stack.empty()) return std::nullopt;
        Frame& top = stack.back();
        if (top.value != 0) toggle(top.cell, top.value);
        const std::uint64_t avail = candidates(top.cell) & above(top.value);
        if (avail == 0) {
            cells[top.cell] = 0;
            stack.pop_back();
            if (stack.empty()) return std::nullopt;
            descend = false;
            continue;
        }
        top.value = static_cast<unsigned>(std::countr_zero(avail)) + 1;
        toggle(top.cell, top.value);
        cells[top.cell] = static_cast<SudokuGrid::Cell>(top.value);
        descend = true;
        if (++nodes > node_budget) return std::nullopt;
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace

bool SudokuGrid::is_supported_size(std::size_t n) noexcept {
    if (n < 4 || n > kMaxSize) return false;
    const std::size_t r = integer_sqrt(n);
    return r * r == n;
}

SudokuGrid::SudokuGrid(std::size_t n) : SudokuGrid(n, std::vector<Cell>(n * n, 0)) {}

SudokuGrid::SudokuGrid(std::size_t n, std::vector<Cell> cells) : n_(n), box_(0), cells_(std::move(cells)) {
    if (!is_supported_size(n)) throw InvalidArgument("grid size " + std::to_string(n) + " is not a perfect square in 4..64");
    box_ = integer_sqrt(n);
    if (cells_.size() != n * n) throw InvalidArgument("grid cell count does not match n*n");
    for (Cell v : cells_)
        if (v > n) throw InvalidArgument("grid value " + std::to_string(v) + " exceeds n");
}

void SudokuGrid::set(std::size_t row, std::size_t col, Cell v) {
    if (row >= n_ || col >= n_) throw InvalidArgument("grid index out of range");
    if (v > n_) throw InvalidArgument("grid value exceeds n");
    cells_[row * n_ + col] = v;
}

std::size_t SudokuGrid::empty_count() const noexcept {
    std::size_t count = 0;
    for (Cell v : cells_) count += v == 0;
    return count;
}

bool validate(const SudokuGrid& g, ValidationMode mode) {
    const std::size_t n = g.n();
    if (n == 0) return false;
    const std::size_t box = g.box();
    std::vector<std::uint64_t> rows(n, 0), cols(n, 0), boxes(n, 0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const auto v = g.at(r, c);
            if (v == 0) {
                if (mode == ValidationMode::strict) return false;
                continue;
            }
            const std::uint64_t bit = std::uint64_t{1} << (v - 1);
            const std::size_t b = (r / box) * box + c / box;
            if ((rows[r] & bit) || (cols[c] & bit) || (boxes[b] & bit)) return false;
            rows[r] |= bit;
            cols[c] |= bit;
            boxes[b] |= bit;
        }
    }
    return true;
}

std::optional<SudokuGrid> solve(const SudokuGrid& g) {
    if (!validate(g, ValidationMode::partial)) return std::nullopt;
    auto result = backtrack(g, 1, std::numeric_limits<std::uint64_t>::max());
    return std::move(result.first);
}

std::size_t count_solutions(const SudokuGrid& g, std::size_t limit) {
    if (limit == 0 || !validate(g, ValidationMode::partial)) return 0;
    return backtrack(g, limit, std::numeric_limits<std::uint64_t>::max()).solutions;
}

GenerationStats generate_with_stats(std::size_t n, std::uint64_t seed) {
    if (!SudokuGrid::is_supported_size(n)) throw InvalidArgument("grid size " + std::to_string(n) + " is not a perfect square in 4..64");
    const std::size_t box = integer_sqrt(n);
    const std::uint64_t budget = 16 * n * n;
    PrngState stream{seed};

    for (std::size_t attempt = 1;; ++attempt) {
        SudokuGrid grid(n);
        for (std::size_t b = 0; b < box; ++b) {
            const Permutation fill = fisher_yates(stream, n);
            for (std::size_t k = 0; k < n; ++k)
                grid.set(b * box + k / box, b * box + k % box, static_cast<SudokuGrid::Cell>(fill[k] + 1));
        }
        if (auto solved = complete_most_constrained(grid, budget)) return {std::move(*solved), attempt};
    }
}

Permutation row_permutation(const SudokuGrid& g, std::size_t row) {
    if (row >= g.n()) throw InvalidArgument("permutation row out of range");
    if (!is_solved(g)) throw TamperedKey("permutation row requires a solved grid");
    std::vector<std::size_t> map(g.n());
    const auto values = g.row(row);
    for (std::size_t i = 0; i < g.n(); ++i) map[i] = static_cast<std::size_t>(values[i]) - 1;
    return Permutation(std::move(map));
}

std::string to_text(const SudokuGrid& g) {
    std::string out = "sudoku n=" + std::to_string(g.n()) + "\n";
    for (std::size_t r = 0; r < g.n(); ++r) {
        for (std::size_t c = 0; c < g.n(); ++c) {
            if (c) out += ' ';
            out += std::to_string(g.at(r, c));
        }
        out += '\n';
    }
    return out;
}

SudokuGrid grid_from_text(std::span<const std::string_view> lines, std::size_t first_line) {
    if (lines.empty()) throw KeyParseError(first_line, "missing grid header");
    const std::string_view header = trim(lines[0]);
    constexpr std::string_view prefix = "sudoku n=";
    if (!header.starts_with(prefix)) throw KeyParseError(first_line, "expected 'sudoku n=<N>'");
    std::size_t n = 0;
    const auto digits = header.substr(prefix.size());
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) throw KeyParseError(first_line, "bad grid size");
    if (!SudokuGrid::is_supported_size(n)) throw KeyParseError(first_line, "unsupported grid size " + std::to_string(n));
    if (lines.size() < n + 1) throw KeyParseError(first_line + lines.size(), "grid truncated");
    for (std::size_t extra = n + 1; extra < lines.size(); ++extra)
        if (!trim(lines[extra]).empty()) throw KeyParseError(first_line + extra, "unexpected content after grid");

    std::vector<SudokuGrid::Cell> cells;
    cells.reserve(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t line_no = first_line + 1 + r;
        std::string_view rest = trim(lines[r + 1]);
        std::size_t count = 0;
        while (!rest.empty()) {
            const std::size_t end = rest.find_first_of(" \t");
            const std::string_view token = rest.substr(0, end);
            unsigned long v = 0;
            auto [p, e] = std::from_chars(token.data(), token.data() + token.size(), v);
            if (e != std::errc{} || p != token.data() + token.size()) throw KeyParseError(line_no, "bad grid value '" + std::string(token) + "'");
            if (v > n) throw TamperedKey("grid value " + std::to_string(v) + " out of range on line " + std::to_string(line_no));
            cells.push_back(static_cast<SudokuGrid::Cell>(v));
            ++count;
            rest = end == std::string_view::npos ? std::string_view{} : trim(rest.substr(end));
        }
        if (count != n) throw KeyParseError(line_no, "expected " + std::to_string(n) + " grid values, got " + std::to_string(count));
    }
    return SudokuGrid(n, std::move(cells));
}

SudokuGrid grid_from_text(std::string_view text) {
    std::vector<std::string_view> lines;
    while (!text.empty()) {
        const std::size_t nl = text.find('\n');
        lines.push_back(text.substr(0, nl));
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
    }
    return grid_from_text(lines, 1);
}

std::string render(const SudokuGrid& g, std::string_view alphabet) {
    if (alphabet.size() < g.n()) throw InvalidArgument("display alphabet shorter than grid size");
    std::string out;
    for (std::size_t r = 0; r < g.n(); ++r) {
        for (std::size_t c = 0; c < g.n(); ++c) {
            if (c) out += ' ';
            const auto v = g.at(r, c);
            out += v == 0 ? '.' : alphabet[v - 1];
        }
        out += '\n';
    }
    return out;
}

}  // namespace sudocrypt
