#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cmv::match {

// Flat taxonomy: a forest of term classes plus disjoint equivalence
// groups. Stands in for the ontology attachments; the classifier below
// answers the same six-way relation queries.
class Taxonomy {
public:
  void add_class(const std::string& name,
                 const std::optional<std::string>& parent = std::nullopt);
  void add_equivalence(const std::vector<std::string>& terms);

  bool known(const std::string& term) const;
  std::optional<std::string> parent_of(const std::string& term) const;
  bool same_group(const std::string& a, const std::string& b) const;
  // Root of the tree containing term (term itself when parentless).
  std::string root_of(const std::string& term) const;

  static Taxonomy parse(const std::string& document,
                        const std::string& origin = "<taxonomy>");
  static Taxonomy load_file(const std::string& path);

private:
  std::map<std::string, std::optional<std::string>> classes_;
  std::vector<std::set<std::string>> groups_;
};

enum class SemanticRelation {
  Exact,
  Equivalent,
  DirectParent, // a is a direct parent of b
  DirectChild,  // a is a direct child of b
  Indirect,     // same tree, neither exact nor direct
  None,
};

const char* to_string(SemanticRelation r);

// Total and deterministic for any pair of terms; unknown terms relate
// None unless the strings are equal.
SemanticRelation semantic_relation(const std::string& a, const std::string& b,
                                   const Taxonomy& taxonomy);

} // namespace cmv::match
