#pragma once

#include <cstddef>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace twistcoh {

/// One failed axiom instance, e.g. associativity at basis triple (i, j, k).
struct Violation {
  std::string axiom;
  std::vector<std::size_t> indices;
  std::string detail;

  std::string str() const {
    std::ostringstream os;
    os << axiom << " (";
    for (std::size_t n = 0; n < indices.size(); ++n) os << (n ? "," : "") << indices[n];
    os << ")";
    if (!detail.empty()) os << ": " << detail;
    return os.str();
  }
};

/// Collects every violated axiom instance instead of stopping at the first.
class ValidationReport {
 public:
  void add(std::string axiom, std::vector<std::size_t> indices, std::string detail = {}) {
    violations_.push_back({std::move(axiom), std::move(indices), std::move(detail)});
  }
  void merge(const ValidationReport& other, const std::string& prefix = {}) {
    for (const auto& v : other.violations_)
      violations_.push_back({prefix + v.axiom, v.indices, v.detail});
  }

  bool ok() const { return violations_.empty(); }
  explicit operator bool() const { return ok(); }
  const std::vector<Violation>& violations() const { return violations_; }
  std::size_t size() const { return violations_.size(); }

  std::size_t count(const std::string& axiom) const {
    std::size_t n = 0;
    for (const auto& v : violations_) n += (v.axiom == axiom);
    return n;
  }

  /// True when every violation belongs to one of the listed axiom names.
  bool only(const std::vector<std::string>& axioms) const {
    for (const auto& v : violations_) {
      bool listed = false;
      for (const auto& a : axioms) listed = listed || v.axiom == a;
      if (!listed) return false;
    }
    return true;
  }

  std::string str() const {
    std::ostringstream os;
    for (const auto& v : violations_) os << v.str() << "\n";
    return os.str();
  }

 private:
  std::vector<Violation> violations_;
};

}  // namespace twistcoh
