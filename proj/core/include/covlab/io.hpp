#pragma once

#include <stdexcept>
#include <string>

#include "covlab/graph.hpp"
#include "covlab/morphism.hpp"

namespace covlab {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Graph interchange: {"vertices":[{"id","label"?}],
//                     "edges":[{"id","ends":[u,v],"kind":"solid"|"dashed","label"?}]}
// Dart ids are edgeid+"+" / edgeid+"-".
std::string graph_to_json(const Graph& g);
Graph graph_from_json(const std::string& text);

// Morphism interchange: {"vmap":{v:v'},"dmap":{d:d'}} with graph ids.
std::string morphism_to_json(const Morphism& m);
Morphism morphism_from_json(const std::string& text, GraphPtr src, GraphPtr dst);

// DOT export; dashed kind rendered with style=dashed.
std::string graph_to_dot(const Graph& g);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace covlab
