#include "nodalab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace nodalab {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

std::string components_to_pgm(const SignedComponents& comps) {
    std::ostringstream ss;
    ss << "P2\n" << comps.cols << " " << comps.rows << "\n65535\n";
    for (int r = 0; r < comps.rows; ++r) {
        for (int c = 0; c < comps.cols; ++c) {
            if (c) ss << ' ';
            ss << (comps.label[(std::size_t)r * comps.cols + c] % 65536);
        }
        ss << '\n';
    }
    return ss.str();
}

std::string curves_to_json(const NodalCurveSet& curves) {
    nlohmann::json j;
    j["discarded_open"] = curves.discarded_open;
    j["degenerate_saddles"] = curves.degenerate_saddles;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : curves.curves) {
        nlohmann::json jc;
        jc["domain_pos"] = c.domain_pos;
        jc["domain_neg"] = c.domain_neg;
        jc["length"] = c.length;
        jc["closed"] = c.closed;
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& p : c.points) pts.push_back({p[0], p[1]});
        jc["points"] = pts;
        arr.push_back(jc);
    }
    j["curves"] = arr;
    return j.dump();
}

std::string mesh_to_off(const TriangleMesh& mesh) {
    std::ostringstream ss;
    ss << "OFF\n" << mesh.vertices.size() << " " << mesh.triangles.size() << " 0\n";
    for (const auto& v : mesh.vertices)
        ss << format_double(v[0]) << " " << format_double(v[1]) << " " << format_double(v[2])
           << "\n";
    for (const auto& t : mesh.triangles) ss << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
    return ss.str();
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace nodalab
