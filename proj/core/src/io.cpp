#include "polytree/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace polytree {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
}

// nlohmann type errors surface as invalid_argument so callers see one
// exception family for bad input files.
template <typename F>
auto translate(F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("invalid JSON document: ") + e.what());
    }
}

std::string chars17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string model_to_json(const GaussianSem& sem) {
    json j;
    j["d"] = sem.node_count();
    json edges = json::array();
    const auto& e = sem.graph().edges();
    for (std::size_t i = 0; i < e.size(); ++i)
        edges.push_back({e[i].first, e[i].second, sem.edge_betas()[i]});
    j["edges"] = std::move(edges);
    j["noise_var"] = sem.noise_variances();
    return j.dump(2);
}

GaussianSem model_from_json(const std::string& text) {
    const json j = parse(text);
    return translate([&] {
        const int d = j.at("d").get<int>();
        std::vector<Edge> edges;
        std::vector<double> betas;
        for (const auto& row : j.at("edges")) {
            if (!row.is_array() || row.size() != 3)
                throw std::invalid_argument("model edges must be [parent, child, beta] triples");
            edges.emplace_back(row[0].get<int>(), row[1].get<int>());
            betas.push_back(row[2].get<double>());
        }
        auto noise = j.at("noise_var").get<std::vector<double>>();
        // Dag sorts its edges; keep the betas aligned.
        std::vector<std::size_t> order(edges.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
        std::vector<Edge> sorted_edges;
        std::vector<double> sorted_betas;
        for (std::size_t i : order) {
            sorted_edges.push_back(edges[i]);
            sorted_betas.push_back(betas[i]);
        }
        return GaussianSem(Dag(d, std::move(sorted_edges)), std::move(sorted_betas),
                           std::move(noise));
    });
}

std::string directed_tree_to_json(const DirectedTree& tree) {
    json j;
    j["d"] = tree.node_count();
    j["root"] = tree.root();
    json edges = json::array();
    for (const auto& [p, c] : tree.dag().edges()) edges.push_back({p, c});
    j["edges"] = std::move(edges);
    return j.dump(2);
}

DirectedTree directed_tree_from_json(const std::string& text) {
    const json j = parse(text);
    return translate([&] {
        const int d = j.at("d").get<int>();
        const int root = j.at("root").get<int>();
        std::vector<Edge> edges;
        for (const auto& row : j.at("edges"))
            edges.emplace_back(row.at(0).get<int>(), row.at(1).get<int>());
        return DirectedTree(root, Dag(d, std::move(edges)));
    });
}

std::string skeleton_to_json(const Skeleton& skeleton) {
    json j;
    j["d"] = skeleton.node_count();
    json edges = json::array();
    for (const auto& [a, b] : skeleton.edges()) edges.push_back({a, b});
    j["edges"] = std::move(edges);
    return j.dump(2);
}

Skeleton skeleton_from_json(const std::string& text) {
    const json j = parse(text);
    return translate([&] {
        const int d = j.at("d").get<int>();
        std::vector<Edge> edges;
        for (const auto& row : j.at("edges"))
            edges.emplace_back(row.at(0).get<int>(), row.at(1).get<int>());
        return Skeleton(d, std::move(edges));
    });
}

std::string cpdag_to_json(const Cpdag& cpdag) {
    json j;
    j["d"] = cpdag.node_count();
    json dir = json::array();
    for (const auto& [a, b] : cpdag.directed_edges()) dir.push_back({a, b});
    json und = json::array();
    for (const auto& [a, b] : cpdag.undirected_edges()) und.push_back({a, b});
    j["directed"] = std::move(dir);
    j["undirected"] = std::move(und);
    return j.dump(2);
}

Cpdag cpdag_from_json(const std::string& text) {
    const json j = parse(text);
    return translate([&] {
        const int d = j.at("d").get<int>();
        std::vector<Edge> dir, und;
        for (const auto& row : j.at("directed"))
            dir.emplace_back(row.at(0).get<int>(), row.at(1).get<int>());
        for (const auto& row : j.at("undirected"))
            und.emplace_back(row.at(0).get<int>(), row.at(1).get<int>());
        return Cpdag(d, std::move(dir), std::move(und));
    });
}

std::string gadget_pair_to_json(const GadgetPair& pair) {
    json j;
    j["epsilon"] = pair.epsilon;
    j["d"] = pair.sigma1.dim();
    auto dump_matrix = [](const CovarianceMatrix& m) {
        json rows = json::array();
        for (int i = 0; i < m.dim(); ++i) {
            json row = json::array();
            for (int k = 0; k < m.dim(); ++k) row.push_back(m(i, k));
            rows.push_back(std::move(row));
        }
        return rows;
    };
    j["sigma1"] = dump_matrix(pair.sigma1);
    j["sigma2"] = dump_matrix(pair.sigma2);
    return j.dump(2);
}

void write_sample_csv(const SampleMatrix& data, std::ostream& out, bool with_header) {
    const int d = data.cols();
    if (with_header) {
        for (int c = 0; c < d; ++c) out << (c ? ",x" : "x") << c;
        out << '\n';
    }
    const auto& m = data.matrix();
    for (long r = 0; r < data.rows(); ++r) {
        for (int c = 0; c < d; ++c) {
            if (c) out << ',';
            out << chars17(m(r, c));
        }
        out << '\n';
    }
}

SampleMatrix read_sample_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream fields(line);
        std::string field;
        bool ok = true;
        while (std::getline(fields, field, ',')) {
            try {
                std::size_t pos = 0;
                const double v = std::stod(field, &pos);
                while (pos < field.size() && std::isspace(static_cast<unsigned char>(field[pos])))
                    ++pos;
                if (pos != field.size()) throw std::invalid_argument(field);
                row.push_back(v);
            } catch (const std::exception&) {
                ok = false;
                break;
            }
        }
        if (!ok) {
            if (first) {
                first = false;  // header line
                continue;
            }
            throw std::invalid_argument("non-numeric CSV field: " + field);
        }
        first = false;
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::invalid_argument("ragged CSV rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("empty CSV input");
    Eigen::MatrixXd m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            m(static_cast<long>(r), static_cast<long>(c)) = rows[r][c];
    return SampleMatrix(std::move(m));
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open file for writing: " + path);
    out << content;
}

}  // namespace polytree
