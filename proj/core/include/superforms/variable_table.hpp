#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace superforms {

enum class Parity { Even = 0, Odd = 1 };
enum class Role { Coordinate, Differential, Auxiliary, ParameterDual };

inline Parity flip(Parity p) { return p == Parity::Even ? Parity::Odd : Parity::Even; }
inline int bit(Parity p) { return p == Parity::Odd ? 1 : 0; }
const char* role_name(Role r);

struct Generator {
  std::string name;
  Parity parity = Parity::Even;
  Role role = Role::Coordinate;
  // For differentials: the coordinate this is d of.
  std::string base;
};

class VariableTable;
using TablePtr = std::shared_ptr<const VariableTable>;

// Ordered generator list; immutable once built, so sharing through TablePtr is safe.
// Odd generators are numbered 0..63 in table order and stored as bitmasks.
class VariableTable {
 public:
  static TablePtr make(std::vector<Generator> gens);
  // Table order: this table's generators followed by `more`.
  TablePtr extended(std::vector<Generator> more) const;
  // Generators of this table without the named ones.
  TablePtr without(const std::vector<std::string>& names) const;

  const std::vector<Generator>& generators() const { return gens_; }
  size_t size() const { return gens_.size(); }
  size_t n_odd() const { return odd_.size(); }
  size_t n_even() const { return even_.size(); }

  // Throws UnknownGenerator.
  size_t index_of(const std::string& name) const;
  std::optional<size_t> find(const std::string& name) const;
  const Generator& at(size_t k) const { return gens_[k]; }
  const Generator& get(const std::string& name) const { return gens_[index_of(name)]; }

  // Position of generator k among generators of the same parity.
  size_t slot(size_t k) const { return slot_[k]; }
  // Generator index of the j-th odd (even) generator.
  size_t odd_generator(size_t j) const { return odd_[j]; }
  size_t even_generator(size_t j) const { return even_[j]; }
  const std::string& odd_name(size_t j) const { return gens_[odd_[j]].name; }
  const std::string& even_name(size_t j) const { return gens_[even_[j]].name; }

  std::string differential_of(const std::string& coordinate) const;

  bool same_as(const VariableTable& o) const;

 private:
  VariableTable() = default;
  std::vector<Generator> gens_;
  std::vector<size_t> slot_;
  std::vector<size_t> odd_;
  std::vector<size_t> even_;
};

bool same_table(const TablePtr& a, const TablePtr& b);

}  // namespace superforms
