#ifndef WSCK_BASIS_HPP
#define WSCK_BASIS_HPP

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace wsck {

struct BasisElement {
  std::string name;
  int parity = 0;  // 0 even, 1 odd
  std::optional<std::vector<Rational>> weight;
};

/// Ordered basis of a free C[d]-module, with parity and optional weight tags.
class GradedBasis {
 public:
  int add(const std::string& name, int parity,
          std::optional<std::vector<Rational>> weight = std::nullopt) {
    if (index_.count(name))
      throw std::invalid_argument("duplicate basis id: " + name);
    index_[name] = static_cast<int>(elems_.size());
    elems_.push_back({name, parity & 1, std::move(weight)});
    return static_cast<int>(elems_.size()) - 1;
  }

  int size() const { return static_cast<int>(elems_.size()); }
  const BasisElement& at(int id) const { return elems_.at(id); }
  int parity(int id) const { return elems_.at(id).parity; }
  const std::string& name(int id) const { return elems_.at(id).name; }

  int find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::out_of_range("no basis id: " + name);
    return it->second;
  }
  bool has(const std::string& name) const { return index_.count(name) != 0; }

  bool weights_complete() const {
    for (auto& e : elems_)
      if (!e.weight) return false;
    return !elems_.empty();
  }

 private:
  std::vector<BasisElement> elems_;
  std::map<std::string, int> index_;
};

using BasisPtr = std::shared_ptr<const GradedBasis>;

}  // namespace wsck

#endif
