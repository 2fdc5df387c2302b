#include "cmv/match/taxonomy.hpp"

#include "cmv/diag.hpp"
#include "cmv/text.hpp"

namespace cmv::match {

void Taxonomy::add_class(const std::string& name,
                         const std::optional<std::string>& parent) {
  if (classes_.count(name))
    fail(ErrorKind::DuplicateId, "class '" + name + "' declared twice");
  classes_[name] = parent;
  // no cycles: walk up and make sure we do not meet the new node
  std::optional<std::string> cur = parent;
  while (cur) {
    if (*cur == name)
      fail(ErrorKind::Reference, "class '" + name + "' creates a parent cycle");
    auto it = classes_.find(*cur);
    cur = it == classes_.end() ? std::nullopt : it->second;
  }
}

void Taxonomy::add_equivalence(const std::vector<std::string>& terms) {
  std::set<std::string> group(terms.begin(), terms.end());
  if (group.size() < 2)
    fail(ErrorKind::Reference, "equivalence groups need at least two terms");
  for (const auto& g : groups_)
    for (const auto& t : group)
      if (g.count(t))
        fail(ErrorKind::DuplicateId,
             "term '" + t + "' already belongs to an equivalence group");
  groups_.push_back(std::move(group));
}

bool Taxonomy::known(const std::string& term) const {
  if (classes_.count(term)) return true;
  for (const auto& g : groups_)
    if (g.count(term)) return true;
  return false;
}

std::optional<std::string> Taxonomy::parent_of(const std::string& term) const {
  auto it = classes_.find(term);
  if (it == classes_.end()) return std::nullopt;
  return it->second;
}

bool Taxonomy::same_group(const std::string& a, const std::string& b) const {
  for (const auto& g : groups_)
    if (g.count(a) && g.count(b)) return true;
  return false;
}

std::string Taxonomy::root_of(const std::string& term) const {
  std::string cur = term;
  for (;;) {
    auto it = classes_.find(cur);
    if (it == classes_.end() || !it->second) return cur;
    cur = *it->second;
  }
}

Taxonomy Taxonomy::parse(const std::string& document,
                         const std::string& origin) {
  Taxonomy t;
  text::Scanner s(document, origin);
  for (;;) {
    s.skip_ws();
    if (s.at_end()) break;
    if (s.try_keyword("class")) {
      std::string name =
          s.peek_string() ? s.expect_string() : s.expect_identifier("class name");
      std::optional<std::string> parent;
      if (s.try_keyword("parent"))
        parent = s.peek_string() ? s.expect_string()
                                 : s.expect_identifier("parent name");
      t.add_class(name, parent);
    } else if (s.try_keyword("equiv")) {
      std::vector<std::string> terms;
      for (;;) {
        terms.push_back(s.peek_string() ? s.expect_string()
                                        : s.expect_identifier("term"));
        if (!s.try_consume(',')) break;
      }
      t.add_equivalence(terms);
    } else {
      fail(ErrorKind::Syntax, "expected 'class' or 'equiv' at " + s.context());
    }
  }
  return t;
}

Taxonomy Taxonomy::load_file(const std::string& path) {
  return parse(text::read_file(path), path);
}

const char* to_string(SemanticRelation r) {
  switch (r) {
    case SemanticRelation::Exact: return "Exact";
    case SemanticRelation::Equivalent: return "Equivalent";
    case SemanticRelation::DirectParent: return "DirectParent";
    case SemanticRelation::DirectChild: return "DirectChild";
    case SemanticRelation::Indirect: return "Indirect";
    case SemanticRelation::None: return "None";
  }
  return "?";
}

SemanticRelation semantic_relation(const std::string& a, const std::string& b,
                                   const Taxonomy& taxonomy) {
  if (a == b) return SemanticRelation::Exact;
  if (taxonomy.same_group(a, b)) return SemanticRelation::Equivalent;
  if (!taxonomy.known(a) || !taxonomy.known(b)) return SemanticRelation::None;
  if (taxonomy.parent_of(b) == std::optional<std::string>(a))
    return SemanticRelation::DirectParent;
  if (taxonomy.parent_of(a) == std::optional<std::string>(b))
    return SemanticRelation::DirectChild;
  if (taxonomy.parent_of(a) || taxonomy.parent_of(b)) {
    if (taxonomy.root_of(a) == taxonomy.root_of(b))
      return SemanticRelation::Indirect;
  }
  return SemanticRelation::None;
}

} // namespace cmv::match
