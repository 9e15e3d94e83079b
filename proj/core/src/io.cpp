#include "covlab/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace covlab {

using nlohmann::json;
using nlohmann::ordered_json;

std::string graph_to_json(const Graph& g) {
    ordered_json j;
    j["vertices"] = ordered_json::array();
    for (const Vertex& v : g.vertices()) {
        ordered_json jv;
        jv["id"] = v.id;
        if (!v.label.empty()) jv["label"] = v.label;
        j["vertices"].push_back(jv);
    }
    j["edges"] = ordered_json::array();
    for (const Edge& e : g.edges()) {
        ordered_json je;
        je["id"] = e.id;
        je["ends"] = {g.vertex(e.u).id, g.vertex(e.v).id};
        je["kind"] = e.kind == EdgeKind::dashed ? "dashed" : "solid";
        if (!e.label.empty()) je["label"] = e.label;
        j["edges"].push_back(je);
    }
    return j.dump(2) + "\n";
}

Graph graph_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(std::string("graph: JSON parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
        throw IoError("graph: expected object with 'vertices' and 'edges'");
    Graph g;
    for (const auto& jv : j["vertices"]) {
        if (!jv.contains("id")) throw IoError("graph: vertex without 'id'");
        if (g.vertex_index(jv["id"].get<std::string>()) >= 0)
            throw IoError("graph: duplicate vertex id " + jv["id"].get<std::string>());
        g.add_vertex(jv["id"].get<std::string>(), jv.value("label", ""));
    }
    for (const auto& je : j["edges"]) {
        if (!je.contains("id") || !je.contains("ends") || je["ends"].size() != 2)
            throw IoError("graph: edge needs 'id' and two 'ends'");
        std::string id = je["id"].get<std::string>();
        if (g.edge_index(id) >= 0) throw IoError("graph: duplicate edge id " + id);
        int u = g.vertex_index(je["ends"][0].get<std::string>());
        int v = g.vertex_index(je["ends"][1].get<std::string>());
        if (u < 0 || v < 0)
            throw IoError("graph: edge " + id + " references unknown vertex");
        std::string kind = je.value("kind", "solid");
        if (kind != "solid" && kind != "dashed")
            throw IoError("graph: edge " + id + " has unknown kind '" + kind + "'");
        g.add_edge(id, u, v, kind == "dashed" ? EdgeKind::dashed : EdgeKind::solid,
                   je.value("label", ""));
    }
    return g;
}

std::string morphism_to_json(const Morphism& m) {
    ordered_json j;
    j["vmap"] = ordered_json::object();
    for (int v = 0; v < m.src->num_vertices(); ++v)
        j["vmap"][m.src->vertex(v).id] = m.dst->vertex(m.vmap[v]).id;
    j["dmap"] = ordered_json::object();
    for (int d = 0; d < m.src->num_darts(); ++d)
        j["dmap"][m.src->dart_id(d)] = m.dst->dart_id(m.dmap[d]);
    return j.dump(2) + "\n";
}

Morphism morphism_from_json(const std::string& text, GraphPtr src, GraphPtr dst) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(std::string("morphism: JSON parse error: ") + e.what());
    }
    if (!j.contains("vmap") || !j.contains("dmap"))
        throw IoError("morphism: expected 'vmap' and 'dmap'");
    Morphism m;
    m.src = src;
    m.dst = dst;
    m.vmap.assign(src->num_vertices(), -1);
    m.dmap.assign(src->num_darts(), -1);
    for (auto it = j["vmap"].begin(); it != j["vmap"].end(); ++it) {
        int v = src->vertex_index(it.key());
        int w = dst->vertex_index(it.value().get<std::string>());
        if (v < 0 || w < 0) throw IoError("morphism: unknown vertex in vmap: " + it.key());
        m.vmap[v] = w;
    }
    for (auto it = j["dmap"].begin(); it != j["dmap"].end(); ++it) {
        int d = src->dart_index(it.key());
        int e = dst->dart_index(it.value().get<std::string>());
        if (d < 0 || e < 0) throw IoError("morphism: unknown dart in dmap: " + it.key());
        m.dmap[d] = e;
    }
    std::string why;
    if (!m.valid(&why)) throw IoError("morphism: invalid: " + why);
    return m;
}

std::string graph_to_dot(const Graph& g) {
    std::ostringstream out;
    out << "graph {\n";
    for (const Vertex& v : g.vertices()) {
        out << "  \"" << v.id << "\"";
        if (!v.label.empty()) out << " [label=\"" << v.id << ":" << v.label << "\"]";
        out << ";\n";
    }
    for (const Edge& e : g.edges()) {
        out << "  \"" << g.vertex(e.u).id << "\" -- \"" << g.vertex(e.v).id << "\"";
        out << " [label=\"" << e.id << "\"";
        if (e.kind == EdgeKind::dashed) out << ", style=dashed";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << content;
}

}  // namespace covlab
