#include "rbm/skorokhod.hpp"

#include <fstream>
#include <sstream>

namespace rbm {

void DrivingPath::validate() const {
    if (t.size() != gamma.size()) throw ConfigError("path time/position length mismatch");
    if (t.size() < 2) throw ConfigError("path needs at least two samples");
    for (std::size_t k = 1; k < t.size(); ++k)
        if (!(t[k] > t[k - 1])) throw ConfigError("path time grid must be strictly increasing");
}

DrivingPath read_path_csv(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) throw ConfigError("cannot open path file: " + filename);
    DrivingPath p;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first && line.find("t,") == 0) { // header
            first = false;
            continue;
        }
        first = false;
        std::istringstream ls(line);
        std::string cell;
        double v[3];
        for (int i = 0; i < 3; ++i) {
            if (!std::getline(ls, cell, ',')) throw ConfigError("bad path row: " + line);
            v[i] = std::stod(cell);
        }
        p.t.push_back(v[0]);
        p.gamma.push_back({v[1], v[2]});
    }
    p.validate();
    return p;
}

void write_reflected_csv(const std::string& filename, const ReflectedPath& path) {
    std::ofstream out(filename);
    if (!out) throw ConfigError("cannot write: " + filename);
    out.precision(17);
    out << "t,x,y,local_time\n";
    for (std::size_t k = 0; k < path.t.size(); ++k)
        out << path.t[k] << ',' << path.beta[k].x << ',' << path.beta[k].y << ','
            << path.local_time[k] << '\n';
}

} // namespace rbm
