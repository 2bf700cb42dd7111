#include "superforms/variable_table.hpp"

#include <algorithm>
#include <set>

#include "superforms/errors.hpp"

namespace superforms {

const char* role_name(Role r) {
  switch (r) {
    case Role::Coordinate:
      return "coordinate";
    case Role::Differential:
      return "differential";
    case Role::Auxiliary:
      return "auxiliary";
    case Role::ParameterDual:
      return "parameter-dual";
  }
  return "coordinate";
}

TablePtr VariableTable::make(std::vector<Generator> gens) {
  std::shared_ptr<VariableTable> t(new VariableTable());
  std::set<std::string> seen;
  for (const auto& g : gens) {
    if (g.name.empty()) throw Error(ErrorCode::InvalidArgument, "generator with empty name");
    if (!seen.insert(g.name).second) throw Error(ErrorCode::InvalidArgument, "duplicate generator " + g.name);
  }
  t->gens_ = std::move(gens);
  for (size_t k = 0; k < t->gens_.size(); ++k) {
    auto& list = t->gens_[k].parity == Parity::Odd ? t->odd_ : t->even_;
    t->slot_.push_back(list.size());
    list.push_back(k);
  }
  if (t->odd_.size() > 64) throw Error(ErrorCode::InvalidArgument, "at most 64 odd generators per table");
  for (const auto& g : t->gens_) {
    if (g.role != Role::Differential) continue;
    auto it = std::find_if(t->gens_.begin(), t->gens_.end(), [&](const Generator& h) { return h.name == g.base; });
    if (it != t->gens_.end() && it->parity == g.parity)
      throw Error(ErrorCode::ParityMismatch, "differential " + g.name + " must have parity opposite to " + g.base);
  }
  return t;
}

TablePtr VariableTable::extended(std::vector<Generator> more) const {
  std::vector<Generator> all = gens_;
  all.insert(all.end(), more.begin(), more.end());
  return make(std::move(all));
}

TablePtr VariableTable::without(const std::vector<std::string>& names) const {
  std::vector<Generator> kept;
  for (const auto& g : gens_)
    if (std::find(names.begin(), names.end(), g.name) == names.end()) kept.push_back(g);
  return make(std::move(kept));
}

std::optional<size_t> VariableTable::find(const std::string& name) const {
  for (size_t k = 0; k < gens_.size(); ++k)
    if (gens_[k].name == name) return k;
  return std::nullopt;
}

size_t VariableTable::index_of(const std::string& name) const {
  auto k = find(name);
  if (!k) throw Error(ErrorCode::UnknownGenerator, "no generator named " + name);
  return *k;
}

std::string VariableTable::differential_of(const std::string& coordinate) const {
  for (const auto& g : gens_)
    if (g.role == Role::Differential && g.base == coordinate) return g.name;
  throw Error(ErrorCode::MissingDifferential, "no differential registered for " + coordinate);
}

bool VariableTable::same_as(const VariableTable& o) const {
  if (gens_.size() != o.gens_.size()) return false;
  for (size_t k = 0; k < gens_.size(); ++k) {
    const auto& a = gens_[k];
    const auto& b = o.gens_[k];
    if (a.name != b.name || a.parity != b.parity || a.role != b.role || a.base != b.base) return false;
  }
  return true;
}

bool same_table(const TablePtr& a, const TablePtr& b) { return a == b || (a && b && a->same_as(*b)); }

}  // namespace superforms
