#include "borel/group.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <sstream>

#include "borel/error.hpp"

namespace borel {

GroupData::GroupData(std::vector<int> codegrees, std::string name)
    : codegrees_(std::move(codegrees)), name_(std::move(name)) {
  for (int d : codegrees_) {
    if (d < 2 || d % 2 != 0) {
      fail(ErrorCode::odd_codegree,
           "polynomial generator codegrees must be even and >= 2, got " + std::to_string(d));
    }
  }
}

int GroupData::dim() const {
  int total = 0;
  for (int d : codegrees_) total += d - 1;
  return total;
}

int GroupData::max_codegree() const {
  return codegrees_.empty() ? 0 : *std::max_element(codegrees_.begin(), codegrees_.end());
}

std::string GroupData::describe() const {
  if (!name_.empty()) return name_;
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < codegrees_.size(); ++i) out << (i ? "," : "") << codegrees_[i];
  out << "]";
  return out.str();
}

namespace {

GroupData torus(int r) {
  return GroupData(std::vector<int>(static_cast<std::size_t>(r), 2),
                   r == 1 ? "T" : "T^" + std::to_string(r));
}

GroupData special_unitary(int n) {
  std::vector<int> c;
  for (int k = 2; k <= n; ++k) c.push_back(2 * k);
  return GroupData(c, "SU(" + std::to_string(n) + ")");
}

GroupData unitary(int n) {
  std::vector<int> c;
  for (int k = 1; k <= n; ++k) c.push_back(2 * k);
  return GroupData(c, "U(" + std::to_string(n) + ")");
}

GroupData symplectic(int n) {
  std::vector<int> c;
  for (int k = 1; k <= n; ++k) c.push_back(4 * k);
  return GroupData(c, "Sp(" + std::to_string(n) + ")");
}

}  // namespace

std::vector<CatalogEntry> group_catalog() {
  std::vector<CatalogEntry> out;
  out.push_back({"trivial", GroupData({}, "trivial")});
  for (int r = 1; r <= 3; ++r) {
    auto g = torus(r);
    out.push_back({g.name(), g});
  }
  for (int n = 2; n <= 4; ++n) {
    auto g = special_unitary(n);
    out.push_back({g.name(), g});
  }
  for (int n = 1; n <= 3; ++n) {
    auto g = unitary(n);
    out.push_back({g.name(), g});
  }
  for (int n = 1; n <= 2; ++n) {
    auto g = symplectic(n);
    out.push_back({g.name(), g});
  }
  out.push_back({"SO(3)", GroupData({4}, "SO(3)")});
  return out;
}

GroupData parse_group(const std::string& raw) {
  std::string text;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) text += ch;

  if (text == "trivial" || text == "1" || text == "e") return GroupData({}, "trivial");
  if (text == "T") return torus(1);
  if (text == "SO(3)") return GroupData({4}, "SO(3)");

  static const std::regex torus_re(R"(T\^([0-9]+))");
  static const std::regex family_re(R"((SU|Sp|U)\(([0-9]+)\))");
  static const std::regex list_re(R"([0-9]+(,[0-9]+)*)");
  std::smatch m;
  if (std::regex_match(text, m, torus_re)) return torus(std::stoi(m[1]));
  if (std::regex_match(text, m, family_re)) {
    const int n = std::stoi(m[2]);
    if (n >= 1) {
      if (m[1] == "SU") return special_unitary(n);
      if (m[1] == "U") return unitary(n);
      return symplectic(n);
    }
  }
  if (std::regex_match(text, list_re)) {
    std::vector<int> c;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) c.push_back(std::stoi(item));
    return GroupData(c);
  }
  fail(ErrorCode::unknown_group, "unknown group '" + raw + "'");
}

}  // namespace borel
