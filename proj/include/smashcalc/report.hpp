#pragma once

#include <string>
#include <vector>

namespace smashcalc {

//! One named check with an optional witness for failures (typically the
//! basis tuple where an identity first broke).
struct CheckItem {
  std::string id;
  bool pass = false;
  std::string witness;  // empty when pass or self-explanatory
};

struct Report {
  std::vector<CheckItem> items;

  void add(std::string id, bool pass, std::string witness = "") {
    items.push_back({std::move(id), pass, std::move(witness)});
  }
  void merge(const Report& other, const std::string& prefix = "") {
    for (const auto& it : other.items) items.push_back({prefix + it.id, it.pass, it.witness});
  }
  bool all_pass() const {
    for (const auto& it : items)
      if (!it.pass) return false;
    return true;
  }
  const CheckItem* first_failure() const {
    for (const auto& it : items)
      if (!it.pass) return &it;
    return nullptr;
  }
  std::string text() const {
    std::string out;
    for (const auto& it : items) {
      out += it.pass ? "PASS " : "FAIL ";
      out += it.id;
      if (!it.witness.empty()) out += "  [" + it.witness + "]";
      out += "\n";
    }
    return out;
  }
};

}  // namespace smashcalc
