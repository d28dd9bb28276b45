#include "qclab/partition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qclab/error.hpp"

namespace qclab {

bool RegionPartition::is_atomistic(double x) const noexcept {
  return std::any_of(atomistic.begin(), atomistic.end(), [x](const Interval& iv) { return iv.contains(x); });
}

std::vector<std::string> validate(const RegionPartition& partition) {
  std::vector<std::string> problems;
  const auto& ivs = partition.atomistic;
  for (std::size_t k = 0; k < ivs.size(); ++k) {
    const auto& iv = ivs[k];
    const std::string name = "interval " + std::to_string(k + 1);
    if (!std::isfinite(iv.lower) || !std::isfinite(iv.upper)) {
      problems.push_back(name + " has a non-finite endpoint");
      continue;
    }
    if (iv.lower >= iv.upper) problems.push_back(name + " is empty");
    if (iv.lower < 0.0 || iv.upper > 1.0) problems.push_back(name + " is not contained in (0,1]");
  }
  for (std::size_t a = 0; a < ivs.size(); ++a) {
    for (std::size_t b = a + 1; b < ivs.size(); ++b) {
      if (std::max(ivs[a].lower, ivs[b].lower) < std::min(ivs[a].upper, ivs[b].upper)) {
        problems.push_back("intervals " + std::to_string(a + 1) + " and " + std::to_string(b + 1) + " overlap");
      }
    }
  }
  if (partition.interface_width < 1) problems.push_back("interface width m must be positive");
  if (partition.reach < 1) problems.push_back("reach must be positive");
  return problems;
}

AtomLabels::AtomLabels(std::vector<AtomLabel> labels, std::vector<bool> atomistic, std::vector<InterfaceBlock> blocks,
                       int width)
    : labels_(std::move(labels)), atomistic_(std::move(atomistic)), blocks_(std::move(blocks)), width_(width) {}

std::vector<long> AtomLabels::atoms_with(AtomLabel label) const {
  std::vector<long> out;
  for (long i = 1; i <= size(); ++i) {
    if (labels_[static_cast<std::size_t>(i - 1)] == label) out.push_back(i);
  }
  return out;
}

AtomLabels classify(const RegionPartition& partition, const ChainConfig& config) {
  if (auto problems = validate(partition); !problems.empty()) {
    std::string msg = "invalid partition:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw InvalidArgument(msg);
  }
  const long n = config.atoms();
  const int m = partition.interface_width;
  const int reach = partition.reach;

  std::vector<bool> in_a(static_cast<std::size_t>(n));
  for (long i = 1; i <= n; ++i) {
    in_a[static_cast<std::size_t>(i - 1)] =
        partition.is_atomistic(static_cast<double>(i) / static_cast<double>(n));
  }
  auto atomistic = [&](long i) {
    long r = (i - 1) % n;
    if (r < 0) r += n;
    return static_cast<bool>(in_a[static_cast<std::size_t>(r)]);
  };

  // A boundary at b separates atom b-1 from atom b.
  std::vector<long> boundaries;
  for (long b = 1; b <= n; ++b) {
    if (atomistic(b - 1) != atomistic(b)) boundaries.push_back(b);
  }

  const long half_c = m / 2;
  const long half_a = m - half_c;
  const long reach_a = std::max<long>(reach, half_a) + reach;
  const long reach_c = std::max<long>(reach, half_c) + reach;
  for (std::size_t k = 0; k < boundaries.size(); ++k) {
    const long start = boundaries[k];
    const long stop = k + 1 < boundaries.size() ? boundaries[k + 1] : boundaries.front() + n;
    const long need = 2 * (atomistic(start) ? reach_a : reach_c);
    if (stop - start < need) {
      throw InvalidArgument("interface collars overlap: region of " + std::to_string(stop - start) +
                            " atoms starting at atom " + std::to_string(start) + " needs at least " +
                            std::to_string(need) + " (increase N)");
    }
  }

  std::vector<InterfaceBlock> blocks;
  std::vector<bool> in_block(static_cast<std::size_t>(n), false);
  auto slot = [n](long i) {
    long r = (i - 1) % n;
    if (r < 0) r += n;
    return static_cast<std::size_t>(r);
  };
  for (long b : boundaries) {
    InterfaceBlock block = atomistic(b) ? InterfaceBlock{b - half_c, +1} : InterfaceBlock{b + half_c - 1, -1};
    block.first = static_cast<long>(slot(block.first)) + 1;
    for (int j = 1; j <= m; ++j) in_block[slot(block.atom(j))] = true;
    blocks.push_back(block);
  }

  std::vector<AtomLabel> labels(static_cast<std::size_t>(n));
  for (long i = 1; i <= n; ++i) {
    const bool mine = atomistic(i);
    bool interior = !in_block[slot(i)];
    for (long j = i - reach; interior && j <= i + reach; ++j) interior = atomistic(j) == mine;
    labels[slot(i)] = !interior ? AtomLabel::Interface
                      : mine    ? AtomLabel::InteriorAtomistic
                                : AtomLabel::InteriorContinuum;
  }
  return AtomLabels(std::move(labels), std::move(in_a), std::move(blocks), m);
}

}  // namespace qclab
