#include "cmv/petri/pnml.hpp"

#include <map>
#include <sstream>

#include "cmv/diag.hpp"
#include "cmv/text.hpp"

namespace cmv::petri {

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string xml_unescape(const std::string& s) {
  std::string out;
  for (size_t i = 0; i < s.size();) {
    if (s[i] == '&') {
      if (s.compare(i, 4, "&lt;") == 0) { out += '<'; i += 4; continue; }
      if (s.compare(i, 4, "&gt;") == 0) { out += '>'; i += 4; continue; }
      if (s.compare(i, 5, "&amp;") == 0) { out += '&'; i += 5; continue; }
      if (s.compare(i, 6, "&quot;") == 0) { out += '"'; i += 6; continue; }
    }
    out += s[i++];
  }
  return out;
}

// Just enough XML scanning for the PNML P/T subset: a stream of elements
// with attributes; <name>/<initialMarking>/<inscription> inner text is
// captured via their <text> child.
struct Element {
  std::string tag;
  std::map<std::string, std::string> attrs;
  bool closing = false;
  bool self_closing = false;
};

class XmlScanner {
public:
  explicit XmlScanner(const std::string& doc) : doc_(doc) {}

  bool next(Element& out) {
    size_t lt = doc_.find('<', pos_);
    while (lt != std::string::npos &&
           (doc_.compare(lt, 4, "<!--") == 0 || doc_.compare(lt, 2, "<?") == 0)) {
      size_t end = doc_.compare(lt, 4, "<!--") == 0 ? doc_.find("-->", lt)
                                                    : doc_.find("?>", lt);
      if (end == std::string::npos) return false;
      lt = doc_.find('<', end);
    }
    if (lt == std::string::npos) return false;
    size_t gt = doc_.find('>', lt);
    if (gt == std::string::npos)
      fail(ErrorKind::Syntax, "unterminated XML tag");
    text_before_ = text::trim(doc_.substr(pos_, lt - pos_));
    std::string body = doc_.substr(lt + 1, gt - lt - 1);
    pos_ = gt + 1;

    out = Element{};
    if (!body.empty() && body.front() == '/') {
      out.closing = true;
      body = body.substr(1);
    }
    if (!body.empty() && body.back() == '/') {
      out.self_closing = true;
      body.pop_back();
    }
    size_t i = 0;
    while (i < body.size() && !isspace(static_cast<unsigned char>(body[i]))) ++i;
    out.tag = body.substr(0, i);
    while (i < body.size()) {
      while (i < body.size() && isspace(static_cast<unsigned char>(body[i]))) ++i;
      size_t eq = body.find('=', i);
      if (eq == std::string::npos) break;
      std::string key = text::trim(body.substr(i, eq - i));
      size_t q1 = body.find('"', eq);
      if (q1 == std::string::npos) break;
      size_t q2 = body.find('"', q1 + 1);
      if (q2 == std::string::npos)
        fail(ErrorKind::Syntax, "unterminated attribute in <" + out.tag + ">");
      out.attrs[key] = xml_unescape(body.substr(q1 + 1, q2 - q1 - 1));
      i = q2 + 1;
    }
    return true;
  }

  // Text content that appeared immediately before the element just read.
  const std::string& text_before() const { return text_before_; }

private:
  const std::string& doc_;
  size_t pos_ = 0;
  std::string text_before_;
};

} // namespace

std::string to_pnml(const PlaceTransitionNet& net, const std::string& net_id) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<pnml xmlns=\"http://www.pnml.org/version-2009/grammar/pnml\">\n";
  out << "  <net id=\"" << xml_escape(net_id)
      << "\" type=\"http://www.pnml.org/version-2009/grammar/ptnet\">\n";
  out << "    <page id=\"page0\">\n";
  for (size_t p = 0; p < net.place_count(); ++p) {
    out << "      <place id=\"p" << p << "\">\n";
    out << "        <name><text>" << xml_escape(net.places()[p])
        << "</text></name>\n";
    const Tokens& m0 = net.initial_marking().counts[p];
    if (m0.count() > 0)
      out << "        <initialMarking><text>" << m0.count()
          << "</text></initialMarking>\n";
    out << "      </place>\n";
  }
  for (size_t t = 0; t < net.transition_count(); ++t) {
    out << "      <transition id=\"t" << t << "\">\n";
    out << "        <name><text>" << xml_escape(net.transitions()[t])
        << "</text></name>\n";
    out << "      </transition>\n";
  }
  int arc_id = 0;
  for (const auto& arc : net.arcs()) {
    std::string src = arc.place_to_transition ? "p" + std::to_string(arc.place)
                                              : "t" + std::to_string(arc.transition);
    std::string dst = arc.place_to_transition ? "t" + std::to_string(arc.transition)
                                              : "p" + std::to_string(arc.place);
    out << "      <arc id=\"a" << arc_id++ << "\" source=\"" << src
        << "\" target=\"" << dst << "\">\n";
    if (arc.weight != 1)
      out << "        <inscription><text>" << arc.weight
          << "</text></inscription>\n";
    out << "      </arc>\n";
  }
  out << "    </page>\n  </net>\n</pnml>\n";
  return out.str();
}

PlaceTransitionNet from_pnml(const std::string& document) {
  struct NodeInfo {
    std::string id, name;
    bool is_place = false;
    std::int64_t marking = 0;
  };
  struct ArcInfo {
    std::string source, target;
    std::int64_t weight = 1;
  };
  std::vector<NodeInfo> nodes;
  std::vector<ArcInfo> arcs;

  XmlScanner scan(document);
  Element el;
  NodeInfo* current = nullptr;
  ArcInfo* current_arc = nullptr;
  enum class TextSlot { None, Name, Marking, Inscription } slot = TextSlot::None;

  while (scan.next(el)) {
    if (el.closing) {
      if (el.tag == "text" && slot != TextSlot::None) {
        const std::string raw = xml_unescape(scan.text_before());
        if (slot == TextSlot::Name && current) {
          current->name = raw;
        } else if (slot == TextSlot::Marking && current) {
          current->marking = std::stoll(raw);
        } else if (slot == TextSlot::Inscription && current_arc) {
          current_arc->weight = std::stoll(raw);
        }
      }
      if (el.tag == "name" || el.tag == "initialMarking" ||
          el.tag == "inscription")
        slot = TextSlot::None;
      if (el.tag == "place" || el.tag == "transition") current = nullptr;
      if (el.tag == "arc") current_arc = nullptr;
      continue;
    }
    if (el.tag == "place" || el.tag == "transition") {
      NodeInfo info;
      info.id = el.attrs.count("id") ? el.attrs["id"] : "";
      if (info.id.empty())
        fail(ErrorKind::Syntax, "PNML node without id");
      info.is_place = el.tag == "place";
      nodes.push_back(info);
      current = el.self_closing ? nullptr : &nodes.back();
    } else if (el.tag == "arc") {
      ArcInfo arc;
      if (!el.attrs.count("source") || !el.attrs.count("target"))
        fail(ErrorKind::Syntax, "PNML arc without source/target");
      arc.source = el.attrs["source"];
      arc.target = el.attrs["target"];
      arcs.push_back(arc);
      current_arc = el.self_closing ? nullptr : &arcs.back();
    } else if (el.tag == "name") {
      slot = TextSlot::Name;
    } else if (el.tag == "initialMarking") {
      slot = TextSlot::Marking;
    } else if (el.tag == "inscription") {
      slot = TextSlot::Inscription;
    }
  }

  PlaceTransitionNet net;
  std::map<std::string, std::pair<bool, int>> by_id; // id -> (is_place, index)
  std::map<std::string, int> name_taken;
  for (auto& n : nodes) {
    std::string display = n.name.empty() ? n.id : n.name;
    // Keep display names unique; PNML ids already are.
    if (name_taken.count(display))
      display += "/" + n.id;
    name_taken[display] = 1;
    if (n.is_place)
      by_id[n.id] = {true, net.add_place(display, n.marking)};
    else
      by_id[n.id] = {false, net.add_transition(display)};
  }
  for (const auto& a : arcs) {
    auto s = by_id.find(a.source);
    auto t = by_id.find(a.target);
    if (s == by_id.end() || t == by_id.end())
      fail(ErrorKind::Reference,
           "PNML arc references unknown node " + a.source + "->" + a.target);
    if (s->second.first == t->second.first)
      fail(ErrorKind::Syntax, "PNML arc connects nodes of the same kind");
    if (s->second.first)
      net.add_arc_pt(s->second.second, t->second.second, a.weight);
    else
      net.add_arc_tp(s->second.second, t->second.second, a.weight);
  }
  return net;
}

PlaceTransitionNet load_pnml_file(const std::string& path) {
  return from_pnml(text::read_file(path));
}

void save_pnml_file(const PlaceTransitionNet& net, const std::string& path) {
  text::write_file(path, to_pnml(net));
}

} // namespace cmv::petri
