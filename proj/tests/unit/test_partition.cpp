#include <doctest.h>

#include <algorithm>
#include <set>

#include "generators.hpp"
#include "qclab/error.hpp"
#include "qclab/partition.hpp"

using namespace qclab;

namespace {

RegionPartition partition_of(std::vector<Interval> atomistic, int m = 4, int reach = 2) {
  RegionPartition p;
  p.atomistic = std::move(atomistic);
  p.interface_width = m;
  p.reach = reach;
  return p;
}

std::vector<long> range(long a, long b) {
  std::vector<long> out;
  for (long i = a; i <= b; ++i) out.push_back(i);
  return out;
}

}  // namespace

TEST_SUITE("partition") {
  TEST_CASE("N=16 half-chain labels") {
    const AtomLabels labels = classify(partition_of({{0.0, 0.5}}), ChainConfig(16, 1.0));
    CHECK(labels.atoms_with(AtomLabel::InteriorAtomistic) == range(3, 6));
    CHECK(labels.atoms_with(AtomLabel::InteriorContinuum) == range(11, 14));
    CHECK(labels.atoms_with(AtomLabel::Interface) == std::vector<long>{1, 2, 7, 8, 9, 10, 15, 16});
    for (long i = 1; i <= 8; ++i) CHECK(labels.in_atomistic(i));
    for (long i = 9; i <= 16; ++i) CHECK_FALSE(labels.in_atomistic(i));

    // Local index 1 sits on the continuum side of each boundary.
    REQUIRE(labels.blocks().size() == 2);
    const auto& first = labels.blocks()[0];
    CHECK(first.first == 15);
    CHECK(first.orientation == 1);
    CHECK(first.atom(4) == 18);
    const auto& second = labels.blocks()[1];
    CHECK(second.first == 10);
    CHECK(second.orientation == -1);
    CHECK(second.atom(4) == 7);
  }

  TEST_CASE("whole period atomistic") {
    const AtomLabels labels = classify(partition_of({{0.0, 1.0}}), ChainConfig(32, 1.0));
    CHECK(labels.atoms_with(AtomLabel::InteriorAtomistic).size() == 32);
    CHECK(labels.blocks().empty());
  }

  TEST_CASE("no atomistic region") {
    const AtomLabels labels = classify(partition_of({}), ChainConfig(32, 1.0));
    CHECK(labels.atoms_with(AtomLabel::InteriorContinuum).size() == 32);
  }

  TEST_CASE("collars that overlap are rejected") {
    CHECK_THROWS_AS(classify(partition_of({{0.0, 0.5}}), ChainConfig(8, 1.0)), InvalidArgument);
    CHECK_THROWS_AS(classify(partition_of({{0.0, 0.5}, {0.5, 0.4}}), ChainConfig(64, 1.0)), InvalidArgument);
  }

  TEST_CASE("validate") {
    CHECK(validate(partition_of({{0.0, 0.5}, {0.25, 0.75}})).size() == 1);
    CHECK(validate(partition_of({{0.0, 0.5}})).empty());
    CHECK(validate(partition_of({})).empty());
    CHECK(validate(partition_of({{0.5, 0.5}})).size() == 1);
    CHECK(validate(partition_of({{-0.1, 0.5}})).size() == 1);
    CHECK(validate(partition_of({{0.2, 0.4}}, 0, 0)).size() == 2);
    // Touching intervals do not overlap.
    CHECK(validate(partition_of({{0.0, 0.5}, {0.5, 0.75}})).empty());
  }

  TEST_CASE("property: labels cover the chain and classification is repeatable") {
    int classified = 0;
    for (int trial = 0; trial < 300; ++trial) {
      const long n = testing::uniform_int(32, 512);
      std::vector<Interval> ivs;
      double lo = testing::uniform(0.0, 0.3);
      const int count = static_cast<int>(testing::uniform_int(0, 2));
      for (int k = 0; k < count; ++k) {
        const double hi = lo + testing::uniform(0.05, 0.3);
        if (hi > 1.0) break;
        ivs.push_back({lo, hi});
        lo = hi + testing::uniform(0.05, 0.2);
      }
      const RegionPartition p = partition_of(ivs, static_cast<int>(testing::uniform_int(1, 6)),
                                             static_cast<int>(testing::uniform_int(1, 3)));
      const ChainConfig c(n, 1.0);
      AtomLabels labels({}, {}, {}, 1);
      try {
        labels = classify(p, c);
      } catch (const InvalidArgument&) {
        continue;
      }
      ++classified;
      CHECK(classify(p, c) == labels);
      const std::size_t total = labels.atoms_with(AtomLabel::InteriorAtomistic).size() +
                                labels.atoms_with(AtomLabel::InteriorContinuum).size() +
                                labels.atoms_with(AtomLabel::Interface).size();
      CHECK(total == static_cast<std::size_t>(n));

      // Every block atom is an interface atom, and blocks straddle a boundary.
      for (const auto& b : labels.blocks()) {
        for (int j = 1; j <= p.interface_width; ++j) CHECK(labels.label(b.atom(j)) == AtomLabel::Interface);
        const int half_c = p.interface_width / 2;
        for (int j = 1; j <= half_c; ++j) CHECK_FALSE(labels.in_atomistic(b.atom(j)));
        for (int j = half_c + 1; j <= p.interface_width; ++j) CHECK(labels.in_atomistic(b.atom(j)));
      }
    }
    CHECK(classified > 100);
  }

  TEST_CASE("property: interface size does not grow with N") {
    for (int m : {1, 2, 4, 5, 8}) {
      for (int reach : {1, 2, 3}) {
        const RegionPartition p = partition_of({{0.25, 0.75}}, m, reach);
        std::set<std::size_t> sizes;
        for (long n = 64; n <= 4096; n *= 2) {
          sizes.insert(classify(p, ChainConfig(n, 1.0)).atoms_with(AtomLabel::Interface).size());
        }
        CHECK(sizes.size() == 1);
        // Per boundary: the block plus whatever of the collar sticks out of it.
        const std::size_t half_a = static_cast<std::size_t>(m - m / 2);
        const std::size_t half_c = static_cast<std::size_t>(m / 2);
        const std::size_t r = static_cast<std::size_t>(reach);
        CHECK(*sizes.begin() == 2 * (std::max(half_a, r) + std::max(half_c, r)));
      }
    }
  }
}
