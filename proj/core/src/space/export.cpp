#include "cmv/space/export.hpp"

#include <algorithm>
#include <sstream>

namespace cmv::space {

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

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

} // namespace

std::string describe_marking(const StateGraph& g, int node,
                             const ExportOptions& options) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [place, tokens] : g.nodes[node].tokens) {
    if (options.trim_to_top_level &&
        std::find(g.top_level_places.begin(), g.top_level_places.end(),
                  place) == g.top_level_places.end())
      continue;
    if (!first) out << " ";
    first = false;
    out << g.place_names[place] << ":";
    for (size_t i = 0; i < tokens.size(); ++i) {
      if (i) out << "+";
      out << tokens[i].render();
    }
  }
  return out.str();
}

std::string to_graphml(const StateGraph& g, const ExportOptions& options) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
  out << "  <key id=\"marking\" for=\"node\" attr.name=\"marking\" "
         "attr.type=\"string\"/>\n";
  out << "  <key id=\"retained\" for=\"node\" attr.name=\"retained\" "
         "attr.type=\"boolean\"/>\n";
  out << "  <key id=\"event\" for=\"edge\" attr.name=\"event\" "
         "attr.type=\"string\"/>\n";
  out << "  <graph id=\"statespace\" edgedefault=\"directed\">\n";
  for (size_t n = 0; n < g.nodes.size(); ++n) {
    if (!g.nodes[n].alive) continue;
    out << "    <node id=\"n" << n << "\">\n";
    out << "      <data key=\"marking\">"
        << xml_escape(describe_marking(g, static_cast<int>(n), options))
        << "</data>\n";
    out << "      <data key=\"retained\">true</data>\n";
    out << "    </node>\n";
  }
  size_t edge_id = 0;
  for (const auto& a : g.arcs) {
    if (!g.nodes[a.from].alive || !g.nodes[a.to].alive) continue;
    out << "    <edge id=\"e" << edge_id++ << "\" source=\"n" << a.from
        << "\" target=\"n" << a.to << "\">\n";
    out << "      <data key=\"event\">" << xml_escape(a.label) << "</data>\n";
    out << "    </edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
  return out.str();
}

std::string to_dot(const StateGraph& g, const ExportOptions& options) {
  std::ostringstream out;
  out << "digraph statespace {\n";
  for (size_t n = 0; n < g.nodes.size(); ++n) {
    if (!g.nodes[n].alive) continue;
    out << "  n" << n << " [label=\"" << n << "\" tooltip=\""
        << dot_escape(describe_marking(g, static_cast<int>(n), options))
        << "\"];\n";
  }
  for (const auto& a : g.arcs) {
    if (!g.nodes[a.from].alive || !g.nodes[a.to].alive) continue;
    out << "  n" << a.from << " -> n" << a.to << " [label=\""
        << dot_escape(a.label) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

} // namespace cmv::space
