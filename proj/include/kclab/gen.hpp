#pragma once

#include <cstdint>
#include <vector>

#include "kclab/boolfun.hpp"
#include "kclab/codes.hpp"
#include "kclab/gf2.hpp"
#include "kclab/rect.hpp"
#include "kclab/rng.hpp"

namespace kclab::gen {

/// Seeded instance generators shared by the experiment suites and tests.

boolfun::TruthTable random_truth_table(unsigned n, Rng& rng);
boolfun::TruthTable random_nonconstant_truth_table(unsigned n, Rng& rng);

/// k distinct values below n, sorted.
std::vector<unsigned> random_subset(Rng& rng, unsigned n, unsigned k);

rect::Partition random_balanced_partition(unsigned n, Rng& rng);

/// Nonempty random subset of the 2^side_vars local assignments, inclusion
/// probability 1/2 (retries until nonempty).
std::vector<std::uint32_t> random_side_set(Rng& rng, unsigned side_vars);

/// Rectangle over a random balanced partition with random side sets.
rect::Rectangle random_rectangle(unsigned n, Rng& rng);

/// Rectangle whose partition is exactly (first nx variables, rest).
rect::Rectangle random_block_rectangle(unsigned nx, unsigned ny, Rng& rng);

/// Rectangle biased toward true positives on the code: sides are drawn mostly
/// from projections of actual code words, with a few arbitrary extras.
rect::Rectangle random_code_heavy_rectangle(const codes::LinearCode& code, Rng& rng);

}  // namespace kclab::gen
