#pragma once

#include <string>
#include <vector>

namespace borel {

/// A connected compact Lie group, recorded by the codegrees of the polynomial generators of
/// its rational cohomology ring H*(BG).
class GroupData {
 public:
  GroupData() = default;
  /// Throws OddCodegree unless every codegree is even and at least 2.
  explicit GroupData(std::vector<int> codegrees, std::string name = {});

  const std::vector<int>& codegrees() const { return codegrees_; }
  int codegree(int i) const { return codegrees_[static_cast<std::size_t>(i)]; }
  int rank() const { return static_cast<int>(codegrees_.size()); }
  /// dim G = sum of (d_i - 1).
  int dim() const;
  /// Homological degree of the i-th polynomial generator x_i, i.e. -d_i.
  int poly_degree(int i) const { return -codegree(i); }
  /// Degree of the i-th exterior generator a_i of H_*(G), i.e. d_i - 1.
  int ext_degree(int i) const { return codegree(i) - 1; }
  int max_codegree() const;

  const std::string& name() const { return name_; }
  /// Name if one was given, otherwise the codegree list.
  std::string describe() const;

  bool operator==(const GroupData& other) const { return codegrees_ == other.codegrees_; }

 private:
  std::vector<int> codegrees_;
  std::string name_;
};

struct CatalogEntry {
  std::string name;
  GroupData group;
};

/// Reference groups: tori, SU(n), Sp(n), U(n) and SO(3).
std::vector<CatalogEntry> group_catalog();

/// Accepts a codegree list ("4,6"), "trivial", or a catalog name: T, T^r, SU(n), Sp(n), U(n),
/// SO(3). Throws UnknownGroup otherwise.
GroupData parse_group(const std::string& text);

}  // namespace borel
