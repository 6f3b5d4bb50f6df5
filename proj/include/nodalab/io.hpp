#pragma once

#include <string>

#include "nodalab/nodal2d.hpp"
#include "nodalab/nodal3d.hpp"

namespace nodalab {

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// label image as ASCII PGM (ids mapped into 0..65535)
std::string components_to_pgm(const SignedComponents& comps);

// curve polylines with adjacent domains, as a JSON document
std::string curves_to_json(const NodalCurveSet& curves);

// OFF text mesh for external viewers
std::string mesh_to_off(const TriangleMesh& mesh);

// locale-independent float formatting used by all CSV emitters
std::string format_double(double v);

}  // namespace nodalab
