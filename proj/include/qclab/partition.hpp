#pragma once

#include <string>
#include <vector>

#include "qclab/chain.hpp"

namespace qclab {

/// Half-open subinterval (lower, upper] of the unit period.
struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  bool contains(double x) const noexcept { return lower < x && x <= upper; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Atomistic/continuum decomposition of (0,1]. The atomistic region is the
/// union of `atomistic`; everything else is continuum.
struct RegionPartition {
  std::vector<Interval> atomistic;
  int interface_width = 4;  ///< m, atoms per interface block
  int reach = 2;            ///< range of interfacial interactions

  bool is_atomistic(double x) const noexcept;
};

/// Every problem with the partition; empty means valid. An empty interval
/// list is valid (pure continuum chain).
std::vector<std::string> validate(const RegionPartition& partition);

enum class AtomLabel { InteriorAtomistic, InteriorContinuum, Interface };

/// The m atoms around one region boundary. Local interface index j = 1..m
/// sits at atom `first + orientation * (j - 1)`; local index 1 is on the
/// continuum side, so orientation is +1 when the continuum lies to the left
/// of the boundary and -1 for the mirrored boundary.
struct InterfaceBlock {
  long first = 1;
  int orientation = 1;

  long atom(int local) const noexcept { return first + orientation * static_cast<long>(local - 1); }

  friend bool operator==(const InterfaceBlock&, const InterfaceBlock&) = default;
};

/// Per-atom classification of a chain against a partition.
class AtomLabels {
public:
  AtomLabels(std::vector<AtomLabel> labels, std::vector<bool> atomistic, std::vector<InterfaceBlock> blocks,
             int width);

  long size() const noexcept { return static_cast<long>(labels_.size()); }
  /// Periodic, 1-based.
  AtomLabel label(long i) const noexcept { return labels_[slot(i)]; }
  bool in_atomistic(long i) const noexcept { return atomistic_[slot(i)]; }

  const std::vector<AtomLabel>& labels() const noexcept { return labels_; }
  const std::vector<InterfaceBlock>& blocks() const noexcept { return blocks_; }
  int interface_width() const noexcept { return width_; }

  std::vector<long> atoms_with(AtomLabel label) const;

  friend bool operator==(const AtomLabels&, const AtomLabels&) = default;

private:
  std::size_t slot(long i) const noexcept {
    const long n = size();
    long r = (i - 1) % n;
    if (r < 0) r += n;
    return static_cast<std::size_t>(r);
  }

  std::vector<AtomLabel> labels_;
  std::vector<bool> atomistic_;
  std::vector<InterfaceBlock> blocks_;
  int width_;
};

/// Classify atoms 1..N. Atom i is interior atomistic iff every atom within
/// `reach` of it lies in the atomistic region and it belongs to no interface
/// block; symmetrically for the continuum. Interface blocks put ceil(m/2)
/// atoms on the atomistic side of each boundary.
///
/// Throws InvalidArgument for an invalid partition or when the collars of
/// two boundaries overlap: each region between consecutive boundaries must
/// hold both neighbouring interface segments plus a `reach` collar on each.
AtomLabels classify(const RegionPartition& partition, const ChainConfig& config);

}  // namespace qclab
