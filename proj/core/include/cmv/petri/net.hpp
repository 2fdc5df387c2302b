#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace cmv::petri {

// Token count that may be the coverability symbol omega. Omega absorbs
// addition and subtraction and dominates every finite count.
class Tokens {
public:
  Tokens() = default;
  Tokens(std::int64_t v) : v_(v) {}
  static Tokens omega() { return Tokens(kOmega); }

  bool is_omega() const { return v_ == kOmega; }
  std::int64_t count() const { return v_; }

  Tokens operator+(std::int64_t d) const {
    return is_omega() ? omega() : Tokens(v_ + d);
  }
  bool operator>=(std::int64_t w) const { return is_omega() || v_ >= w; }
  bool operator==(const Tokens& o) const { return v_ == o.v_; }
  bool operator!=(const Tokens& o) const { return v_ != o.v_; }

  // Covering order: omega >= everything; finite compare by count.
  bool covers(const Tokens& o) const {
    if (is_omega()) return true;
    if (o.is_omega()) return false;
    return v_ >= o.v_;
  }

  std::string render() const {
    return is_omega() ? "w" : std::to_string(v_);
  }

private:
  static constexpr std::int64_t kOmega = std::numeric_limits<std::int64_t>::max();
  std::int64_t v_ = 0;
};

// Marking indexed by the net's place order.
struct Marking {
  std::vector<Tokens> counts;

  bool operator==(const Marking& o) const { return counts == o.counts; }
  bool covers(const Marking& o) const;
  bool strictly_covers(const Marking& o) const;
  std::string render() const;
};

// Flat place/transition net <P, T, F, W, M0>. Arcs connect only nodes of
// opposite kinds; weights are >= 1.
class PlaceTransitionNet {
public:
  struct Arc {
    int place = 0;
    int transition = 0;
    std::int64_t weight = 1;
    bool place_to_transition = true;
  };

  int add_place(const std::string& name, std::int64_t initial_tokens = 0);
  int add_transition(const std::string& name);
  void add_arc_pt(const std::string& place, const std::string& transition,
                  std::int64_t weight = 1);
  void add_arc_tp(const std::string& transition, const std::string& place,
                  std::int64_t weight = 1);
  void add_arc_pt(int place, int transition, std::int64_t weight = 1);
  void add_arc_tp(int transition, int place, std::int64_t weight = 1);

  size_t place_count() const { return places_.size(); }
  size_t transition_count() const { return transitions_.size(); }
  const std::vector<std::string>& places() const { return places_; }
  const std::vector<std::string>& transitions() const { return transitions_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  int place_index(const std::string& name) const;
  int transition_index(const std::string& name) const;

  const Marking& initial_marking() const { return m0_; }
  void set_initial(const std::string& place, std::int64_t tokens);

  // W(p,t) / W(t,p); 0 when no arc.
  std::int64_t weight_pt(int place, int transition) const;
  std::int64_t weight_tp(int transition, int place) const;

private:
  std::vector<std::string> places_;
  std::vector<std::string> transitions_;
  std::map<std::string, int> place_index_;
  std::map<std::string, int> transition_index_;
  std::vector<Arc> arcs_;
  Marking m0_;
};

} // namespace cmv::petri
