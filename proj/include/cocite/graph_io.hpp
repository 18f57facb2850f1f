#pragma once

#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "cocite/graph.hpp"
#include "cocite/text.hpp"

namespace cocite {

using AttrValue = std::variant<std::string, double>;
using NodeAttrs = std::map<NodeId, std::map<std::string, AttrValue>>;

namespace detail {

inline std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string xml_unescape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '&') {
            out += s[i];
            continue;
        }
        auto rest = s.substr(i);
        if (rest.rfind("&amp;", 0) == 0) { out += '&'; i += 4; }
        else if (rest.rfind("&lt;", 0) == 0) { out += '<'; i += 3; }
        else if (rest.rfind("&gt;", 0) == 0) { out += '>'; i += 3; }
        else if (rest.rfind("&quot;", 0) == 0) { out += '"'; i += 5; }
        else if (rest.rfind("&apos;", 0) == 0) { out += '\''; i += 5; }
        else out += s[i];
    }
    return out;
}

}  // namespace detail

/// GraphML with typed node-attribute keys and the edge weight key "weight".
/// Nodes and edges are emitted in sorted order, attribute keys alphabetical.
inline std::string graphml_string(const Graph& g, const NodeAttrs& attrs) {
    // collect attribute names and their types; a name used with both types is string
    std::map<std::string, bool> is_double;
    for (const auto& [_, kv] : attrs)
        for (const auto& [name, value] : kv) {
            bool d = std::holds_alternative<double>(value);
            auto it = is_double.find(name);
            if (it == is_double.end()) is_double[name] = d;
            else if (it->second != d) it->second = false;
        }

    std::ostringstream xml;
    xml << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
    std::map<std::string, std::string> key_of;
    int next = 0;
    for (const auto& [name, d] : is_double) {
        std::string id = "k" + std::to_string(next++);
        key_of[name] = id;
        xml << "  <key id=\"" << id << "\" for=\"node\" attr.name=\"" << detail::xml_escape(name)
            << "\" attr.type=\"" << (d ? "double" : "string") << "\"/>\n";
    }
    xml << "  <key id=\"w\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
        << "  <graph id=\"G\" edgedefault=\"undirected\">\n";
    for (const auto& id : g.nodes()) {
        auto it = attrs.find(id);
        if (it == attrs.end() || it->second.empty()) {
            xml << "    <node id=\"" << detail::xml_escape(id) << "\"/>\n";
        } else {
            xml << "    <node id=\"" << detail::xml_escape(id) << "\">\n";
            for (const auto& [name, value] : it->second) {
                xml << "      <data key=\"" << key_of.at(name) << "\">";
                if (std::holds_alternative<double>(value) && is_double.at(name))
                    xml << format_double(std::get<double>(value));
                else if (std::holds_alternative<double>(value))
                    xml << detail::xml_escape(format_double(std::get<double>(value)));
                else
                    xml << detail::xml_escape(std::get<std::string>(value));
                xml << "</data>\n";
            }
            xml << "    </node>\n";
        }
    }
    for (const auto& [u, v, w] : g.edges()) {
        xml << "    <edge source=\"" << detail::xml_escape(g.id_of(u)) << "\" target=\""
            << detail::xml_escape(g.id_of(v)) << "\"><data key=\"w\">" << format_double(w)
            << "</data></edge>\n";
    }
    xml << "  </graph>\n</graphml>\n";
    return xml.str();
}

inline void export_graphml(const Graph& g, const NodeAttrs& attrs, const std::string& path) {
    write_file(path, graphml_string(g, attrs));
}

/// Reads the GraphML subset this toolkit writes (round-trip safe with
/// export_graphml); not a general-purpose XML parser.
inline std::pair<Graph, NodeAttrs> import_graphml(const std::string& path) {
    std::string xml = read_file(path);
    Graph::Builder builder;
    NodeAttrs attrs;
    std::map<std::string, std::pair<std::string, bool>> keys;  // key id -> (name, is_double)

    auto attr_of = [](std::string_view tag, const std::string& name) -> std::string {
        std::string needle = name + "=\"";
        auto pos = tag.find(needle);
        if (pos == std::string_view::npos) throw ParseError("missing attribute '" + name + "' in GraphML tag", 0);
        pos += needle.size();
        auto end = tag.find('"', pos);
        return detail::xml_unescape(tag.substr(pos, end - pos));
    };

    std::size_t pos = 0;
    while (true) {
        auto open = xml.find('<', pos);
        if (open == std::string::npos) break;
        auto close = xml.find('>', open);
        if (close == std::string::npos) break;
        std::string_view tag(xml.data() + open + 1, close - open - 1);
        pos = close + 1;
        if (tag.rfind("key ", 0) == 0) {
            std::string id = attr_of(tag, "id");
            if (id == "w") continue;
            keys[id] = {attr_of(tag, "attr.name"), attr_of(tag, "attr.type") == "double"};
        } else if (tag.rfind("node ", 0) == 0) {
            bool self_closing = tag.back() == '/';
            std::string id = attr_of(tag, "id");
            builder.add_node(id);
            if (self_closing) continue;
            auto node_end = xml.find("</node>", pos);
            std::string_view body(xml.data() + pos, node_end - pos);
            std::size_t dpos = 0;
            while (true) {
                auto dopen = body.find("<data", dpos);
                if (dopen == std::string_view::npos) break;
                auto dclose = body.find('>', dopen);
                auto dend = body.find("</data>", dclose);
                std::string_view dtag = body.substr(dopen + 1, dclose - dopen - 1);
                std::string key = attr_of(dtag, "key");
                std::string raw = detail::xml_unescape(body.substr(dclose + 1, dend - dclose - 1));
                const auto& [name, is_double] = keys.at(key);
                if (is_double) attrs[id][name] = parse_double(raw);
                else attrs[id][name] = raw;
                dpos = dend + 7;
            }
            pos = node_end + 7;
        } else if (tag.rfind("edge ", 0) == 0) {
            std::string source = attr_of(tag, "source");
            std::string target = attr_of(tag, "target");
            double w = 1.0;
            if (tag.back() != '/') {
                auto eend = xml.find("</edge>", pos);
                std::string_view body(xml.data() + pos, eend - pos);
                auto dclose = body.find('>');
                auto dend = body.find("</data>");
                if (dend != std::string_view::npos)
                    w = parse_double(detail::xml_unescape(body.substr(dclose + 1, dend - dclose - 1)));
                pos = eend + 7;
            }
            builder.add_edge(source, target, w);
        }
    }
    return {std::move(builder).build(), std::move(attrs)};
}

/// Edge-list CSV `source,target,weight`; isolated nodes are not representable
/// in this format, use GraphML for a lossless export.
inline std::string edge_csv_string(const Graph& g) {
    std::string out = "source,target,weight\n";
    for (const auto& [u, v, w] : g.edges()) {
        out += csv_quote(g.id_of(u));
        out += ',';
        out += csv_quote(g.id_of(v));
        out += ',';
        out += format_double(w);
        out += '\n';
    }
    return out;
}

inline void export_edge_csv(const Graph& g, const std::string& path) { write_file(path, edge_csv_string(g)); }

inline Graph import_edge_csv(const std::string& path) {
    DelimitedReader reader(path);
    auto cs = reader.column("source");
    auto ct = reader.column("target");
    auto cw = reader.column("weight");
    Graph::Builder builder;
    std::vector<std::string> row;
    while (reader.next(row)) builder.add_edge(row[cs], row[ct], parse_double(row[cw], reader.line()));
    return std::move(builder).build();
}

/// Bipartite edge list `left,right`.
inline std::string bipartite_csv_string(const BipartiteGraph& b) {
    std::string out = "left,right\n";
    for (const auto& [l, r] : b.edge_list()) {
        out += csv_quote(l);
        out += ',';
        out += csv_quote(r);
        out += '\n';
    }
    return out;
}

inline void export_bipartite_csv(const BipartiteGraph& b, const std::string& path) {
    write_file(path, bipartite_csv_string(b));
}

/// Graphviz DOT with weight labels.
inline std::string dot_string(const Graph& g, const std::string& name = "G") {
    std::string out = "graph " + name + " {\n";
    for (const auto& id : g.nodes()) out += "  \"" + id + "\";\n";
    for (const auto& [u, v, w] : g.edges())
        out += "  \"" + g.id_of(u) + "\" -- \"" + g.id_of(v) + "\" [weight=" + format_double(w) + "];\n";
    out += "}\n";
    return out;
}

inline void export_dot(const Graph& g, const std::string& path) { write_file(path, dot_string(g)); }

}  // namespace cocite
