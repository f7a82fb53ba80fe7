#pragma once

#include <filesystem>
#include <istream>
#include <span>
#include <vector>

namespace aitest {

/// Full-support probability vector over a finite space. Entries must be
/// finite and strictly positive; they are normalized to sum to 1 on
/// construction.
class DiscreteDist {
 public:
  /// Throws DomainError on non-positive or non-finite entries and
  /// ShapeError when empty.
  explicit DiscreteDist(std::vector<double> probs);

  std::span<const double> probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

  /// One probability per line; blank lines and lines starting with '#'
  /// are skipped. Throws ValidationError on unparsable lines.
  static DiscreteDist read(std::istream& in);
  static DiscreteDist load(const std::filesystem::path& path);

 private:
  std::vector<double> probs_;
};

/// Reads one number per line (same rules as DiscreteDist::read) without
/// normalizing.
std::vector<double> read_column(std::istream& in);
std::vector<double> load_column(const std::filesystem::path& path);

}  // namespace aitest
