#include "hrcp/solution_io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace hrcp {

using ordered_json = nlohmann::ordered_json;

void write_solution(const Clustering& clustering, std::ostream& out) {
    ordered_json doc;
    doc["p"] = clustering.p;
    doc["span"] = total_span(clustering);
    ordered_json clusters = ordered_json::array();
    ordered_json boxes = ordered_json::array();
    for (size_t c = 0; c < clustering.members.size(); ++c) {
        if (clustering.members[c].empty()) continue;
        clusters.push_back(clustering.members[c]);
        const auto& box = clustering.boxes[c];
        if (!box) throw std::logic_error("nonempty cluster without a box");
        boxes.push_back(ordered_json{{"l", box->l}, {"r", box->r}});
    }
    doc["clusters"] = std::move(clusters);
    doc["boxes"] = std::move(boxes);
    out << doc.dump(2) << '\n';
}

void write_solution(const Clustering& clustering, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_solution(clustering, out);
    if (!out) throw std::runtime_error("failed writing " + path);
}

SolutionFile read_solution(std::istream& in) {
    ordered_json doc;
    try {
        in >> doc;
    } catch (const ordered_json::parse_error& e) {
        throw std::runtime_error(std::string("solution file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("p") || !doc.contains("clusters") || !doc.contains("boxes"))
        throw std::runtime_error("solution file needs p, clusters and boxes fields");

    SolutionFile sol;
    sol.p = doc.at("p").get<int>();
    if (sol.p < 1) throw std::runtime_error("solution file has p < 1");
    sol.span = doc.value("span", 0.0);

    const auto& clusters = doc.at("clusters");
    const auto& boxes = doc.at("boxes");
    if (!clusters.is_array() || !boxes.is_array() || clusters.size() != boxes.size())
        throw std::runtime_error("clusters and boxes must be arrays of equal length");
    if (static_cast<int>(clusters.size()) > sol.p)
        throw std::runtime_error("solution file lists more clusters than p");

    sol.clustering.p = sol.p;
    sol.clustering.members.resize(sol.p);
    sol.clustering.boxes.resize(sol.p);
    for (size_t c = 0; c < clusters.size(); ++c) {
        sol.clustering.members[c] = clusters[c].get<std::vector<int>>();
        ClusterBox box;
        box.l = boxes[c].at("l").get<std::vector<double>>();
        box.r = boxes[c].at("r").get<std::vector<double>>();
        if (box.l.size() != box.r.size()) throw std::runtime_error("box with mismatched l/r lengths");
        for (size_t t = 0; t < box.l.size(); ++t)
            if (box.l[t] > box.r[t]) throw std::runtime_error("box with l > r");
        sol.clustering.boxes[c] = std::move(box);
    }
    return sol;
}

SolutionFile read_solution(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_solution(in);
}

}  // namespace hrcp
