#include <doctest.h>

#include <random>
#include <string_view>

#include "golden.hpp"
#include "sudocrypt/errors.hpp"
#include "sudocrypt/sudoku.hpp"

using namespace sudocrypt;

namespace {

SudokuGrid grid_of(std::size_t n, std::initializer_list<int> values) {
    std::vector<SudokuGrid::Cell> cells;
    for (int v : values) cells.push_back(static_cast<SudokuGrid::Cell>(v));
    return SudokuGrid(n, std::move(cells));
}

template <std::size_t N>
SudokuGrid grid_of(std::size_t n, const std::array<std::uint8_t, N>& values) {
    return SudokuGrid(n, std::vector<SudokuGrid::Cell>(values.begin(), values.end()));
}

}  // namespace

TEST_SUITE("sudoku") {
    TEST_CASE("grid construction") {
        CHECK_THROWS_AS(SudokuGrid(7), InvalidArgument);
        CHECK_THROWS_AS(SudokuGrid(1), InvalidArgument);
        CHECK_THROWS_AS(SudokuGrid(4, std::vector<SudokuGrid::Cell>(15, 0)), InvalidArgument);
        CHECK_THROWS_AS(SudokuGrid(4, std::vector<SudokuGrid::Cell>(16, 5)), InvalidArgument);
        for (std::size_t n : {4u, 9u, 16u, 25u, 36u, 64u}) CHECK(SudokuGrid::is_supported_size(n));
        CHECK(SudokuGrid(9).box() == 3);
    }

    TEST_CASE("validate") {
        const auto solved = grid_of(4, {1, 2, 3, 4, 3, 4, 1, 2, 2, 1, 4, 3, 4, 3, 2, 1});
        CHECK(validate(solved));
        const auto dup_row = grid_of(4, {1, 1, 3, 4, 3, 4, 1, 2, 2, 3, 4, 1, 4, 2, 2, 3});
        CHECK_FALSE(validate(dup_row));
        CHECK_FALSE(validate(dup_row, ValidationMode::partial));

        auto partial = solved;
        partial.set(2, 2, 0);
        CHECK_FALSE(validate(partial));
        CHECK(validate(partial, ValidationMode::partial));

        // Box conflict only: rows and columns are permutations but boxes repeat.
        const auto latin = grid_of(4, {1, 2, 3, 4, 2, 3, 4, 1, 3, 4, 1, 2, 4, 1, 2, 3});
        CHECK_FALSE(validate(latin));
    }

    TEST_CASE("validate rejects every single-cell corruption") {
        const auto g = generate(9, 31337);
        for (std::size_t r = 0; r < 9; ++r)
            for (std::size_t c = 0; c < 9; ++c)
                for (SudokuGrid::Cell v = 1; v <= 9; ++v) {
                    if (v == g.at(r, c)) continue;
                    auto bad = g;
                    bad.set(r, c, v);
                    REQUIRE_FALSE(validate(bad));
                }
    }

    TEST_CASE("generate golden grids") {
        CHECK(generate(4, 2024) == grid_of(4, golden::kGrid4Seed2024));
        CHECK(generate(4, 1700000000) == grid_of(4, golden::kGrid4Seed1700000000));
        CHECK(generate(9, 1700000000) == grid_of(9, golden::kGrid9Seed1700000000));
    }

    TEST_CASE("generate is deterministic and always valid") {
        for (std::size_t n : {4u, 9u, 16u}) {
            for (std::uint64_t seed = 0; seed < 100; ++seed) {
                const auto stats = generate_with_stats(n, seed * 1000003 + 7);
                REQUIRE(is_solved(stats.grid));
                CHECK(stats.attempts >= 1);
            }
            CHECK(generate(n, 5) == generate(n, 5));
        }
        CHECK(generate(9, 1) != generate(9, 2));
        CHECK_THROWS_AS(generate(10, 0), InvalidArgument);
    }

    TEST_CASE("generate keeps the seeded diagonal boxes as permutations") {
        const auto g = generate(16, 77);
        for (std::size_t b = 0; b < 4; ++b) {
            std::vector<bool> seen(17, false);
            for (std::size_t k = 0; k < 16; ++k) seen[g.at(b * 4 + k / 4, b * 4 + k % 4)] = true;
            for (std::size_t v = 1; v <= 16; ++v) CHECK(seen[v]);
        }
    }

    TEST_CASE("solve") {
        const auto g = generate(9, 4242);
        CHECK(solve(g) == g);

        auto one = g;
        one.set(4, 4, 0);
        CHECK(solve(one) == g);

        auto contradictory = g;
        contradictory.set(0, 0, 0);
        contradictory.set(0, 1, g.at(0, 1) == 1 ? 2 : 1);
        CHECK_FALSE(solve(contradictory).has_value());

        // Givens that pass partial validation but cannot be completed:
        // row 0 leaves only value 4 for cell (0,3), but column 3 already has 4.
        const auto stuck = grid_of(4, {1, 2, 3, 0, 0, 0, 0, 4, 0, 0, 0, 0, 0, 0, 0, 0});
        CHECK(validate(stuck, ValidationMode::partial));
        CHECK_FALSE(solve(stuck).has_value());
        CHECK(count_solutions(stuck) == 0);
    }

    TEST_CASE("solve restores uniquely determined blanks") {
        std::mt19937 rng(8);
        for (std::size_t n : {4u, 9u, 16u}) {
            for (int trial = 0; trial < 20; ++trial) {
                const auto g = generate(n, rng());
                auto puzzle = g;
                const std::size_t k = 1 + rng() % 5;
                for (std::size_t i = 0; i < k; ++i) puzzle.set(rng() % n, rng() % n, 0);
                if (count_solutions(puzzle, 2) != 1) continue;
                REQUIRE(solve(puzzle) == g);
            }
        }
    }

    TEST_CASE("count_solutions") {
        CHECK(count_solutions(SudokuGrid(4), 1000) == 288);
        CHECK(count_solutions(generate(9, 3)) == 1);
    }

    TEST_CASE("row_permutation") {
        const auto g = grid_of(4, {2, 1, 4, 3, 4, 3, 2, 1, 1, 2, 3, 4, 3, 4, 1, 2});
        CHECK(row_permutation(g, 0) == Permutation({1, 0, 3, 2}));
        CHECK(row_permutation(g, 2) == Permutation::identity(4));
        CHECK_THROWS_AS(row_permutation(g, 4), InvalidArgument);
        auto unsolved = g;
        unsolved.set(1, 1, 0);
        CHECK_THROWS_AS(row_permutation(unsolved, 0), TamperedKey);
        const auto big = generate(25, 11);
        for (std::size_t r = 0; r < 25; ++r) CHECK(row_permutation(big, r).size() == 25);
    }

    TEST_CASE("grid text format") {
        const auto g = grid_of(4, golden::kGrid4Seed2024);
        const std::string text = to_text(g);
        CHECK(text == "sudoku n=4\n1 4 2 3\n3 2 4 1\n2 3 1 4\n4 1 3 2\n");
        CHECK(grid_from_text(text) == g);
        CHECK_THROWS_AS(grid_from_text("sudoku n=4\n1 2 3 4\n"), KeyParseError);
        CHECK_THROWS_AS(grid_from_text("sudoku n=5\n"), KeyParseError);
        CHECK_THROWS_AS(grid_from_text("sudoku n=4\n1 2 3\n1 2 3 4\n1 2 3 4\n1 2 3 4\n"), KeyParseError);
        CHECK_THROWS_AS(grid_from_text("sudoku n=4\n1 2 3 9\n1 2 3 4\n1 2 3 4\n1 2 3 4\n"), TamperedKey);
        try {
            (void)grid_from_text("sudoku n=4\n1 2 3 4\n1 x 3 4\n1 2 3 4\n1 2 3 4\n");
            FAIL("expected parse error");
        } catch (const KeyParseError& e) {
            CHECK(e.line() == 3);
        }
    }

    TEST_CASE("render with a display alphabet") {
        auto g = grid_of(4, golden::kGrid4Seed2024);
        g.set(0, 0, 0);
        CHECK(render(g, "ABCD") == ". D B C\nC B D A\nB C A D\nD A C B\n");
        CHECK_THROWS_AS(render(g, "ABC"), InvalidArgument);
    }
}
