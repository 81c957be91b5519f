#include "grmr/io.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "grmr/rng.h"

namespace grmr {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(trim(cur));
    return fields;
}

bool parse_index(const std::string& s, int& out) {
    if (s.empty()) return false;
    for (char ch : s)
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    out = std::atoi(s.c_str());
    return true;
}

void check_dims(int n, int d, const char* who) {
    if (n < 1) throw ConfigError(std::string(who) + ": need at least one row");
    if (d < 1) throw ConfigError(std::string(who) + ": need at least one column");
}

}  // namespace

std::string RunConfig::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    if (!input.empty()) j["input"] = input;
    if (!distribution.empty()) j["distribution"] = distribution;
    j["n"] = n;
    j["d"] = d;
    j["seed"] = seed;
    j["eps"] = eps_list;
    if (r > 0) j["r"] = r;
    j["ipdg_m"] = ipdg_m;
    j["ipdg_k"] = ipdg_k;
    j["eta_multiplier"] = eta_multiplier;
    j["eval_samples"] = eval_samples;
    if (!method.empty()) j["method"] = method;
    if (!output.empty()) j["output"] = output;
    j["threads"] = threads;
    return j.dump();
}

Dataset generate_normal(int n, int d, std::uint64_t seed) {
    check_dims(n, d, "generate_normal");
    Dataset ds(n, d);
    for (int i = 0; i < n; ++i) rng::gauss_vector(seed, i, d, &ds.at(i, 0));
    return normalize_dataset(ds);
}

Dataset generate_uniform(int n, int d, std::uint64_t seed) {
    check_dims(n, d, "generate_uniform");
    Dataset ds(n, d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j)
            ds.at(i, j) = rng::uniform(seed, i, j, -1.0, 1.0);
    return normalize_dataset(ds);
}

void write_csv(const std::string& path, const Dataset& ds,
               const std::vector<std::string>& comments) {
    std::ofstream out(path);
    if (!out) throw ConfigError("write_csv: cannot open '" + path + "' for writing");
    for (const auto& c : comments) out << "# " << c << "\n";
    for (int j = 0; j < ds.d; ++j) out << (j ? "," : "") << "x" << j;
    out << "\n";
    out.precision(17);
    for (int i = 0; i < ds.n; ++i) {
        for (int j = 0; j < ds.d; ++j) {
            if (j) out << ",";
            out << ds.at(i, j);
        }
        out << "\n";
    }
    if (!out) throw ConfigError("write_csv: write to '" + path + "' failed");
}

Dataset read_csv(const std::string& path, const std::vector<std::string>& columns,
                 bool header) {
    std::ifstream in(path);
    if (!in) throw ConfigError("read_csv: cannot open '" + path + "'");

    std::string line;
    int lineno = 0;
    std::vector<std::string> names;   // header names, empty without a header
    std::vector<int> take;            // source column index per output column
    int arity = -1;
    std::vector<double> values;
    int nrows = 0;

    auto resolve_columns = [&](int ncols, int atline) {
        if (columns.empty()) {
            take.resize(ncols);
            for (int j = 0; j < ncols; ++j) take[j] = j;
            return;
        }
        for (const auto& want : columns) {
            int idx = -1;
            if (!names.empty()) {
                const auto it = std::find(names.begin(), names.end(), trim(want));
                if (it != names.end()) idx = static_cast<int>(it - names.begin());
            }
            if (idx < 0 && parse_index(trim(want), idx)) {
                // numeric selector
            } else if (idx < 0) {
                std::ostringstream msg;
                msg << "read_csv: '" << path << "': unknown column '" << want << "'";
                if (!names.empty()) {
                    msg << "; available:";
                    for (const auto& nm : names) msg << " " << nm;
                } else {
                    msg << "; the file has no header, use 0-based indices";
                }
                throw ConfigError(msg.str());
            }
            if (idx < 0 || idx >= ncols)
                throw ConfigError("read_csv: '" + path + "' line " +
                                  std::to_string(atline) + ": column index " +
                                  std::to_string(idx) + " outside [0, " +
                                  std::to_string(ncols) + ")");
            take.push_back(idx);
        }
    };

    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto fields = split_csv_line(stripped);
        if (arity < 0) {
            arity = static_cast<int>(fields.size());
            if (header) {
                names = fields;
                resolve_columns(arity, lineno);
                continue;
            }
            resolve_columns(arity, lineno);
        }
        if (static_cast<int>(fields.size()) != arity)
            throw ConfigError("read_csv: '" + path + "' line " + std::to_string(lineno) +
                              ": expected " + std::to_string(arity) + " fields, got " +
                              std::to_string(fields.size()));
        for (int j : take) {
            const std::string& cell = fields[j];
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (cell.empty() || end != cell.c_str() + cell.size() || !std::isfinite(v)) {
                std::string colname = names.empty() ? std::to_string(j) : names[j];
                throw ConfigError("read_csv: '" + path + "' line " +
                                  std::to_string(lineno) + ", column " + colname +
                                  ": '" + cell + "' is not a finite number");
            }
            values.push_back(v);
        }
        ++nrows;
    }
    if (arity < 0 || nrows == 0)
        throw ConfigError("read_csv: '" + path + "' has no data rows");

    Dataset ds(nrows, static_cast<int>(take.size()));
    std::copy(values.begin(), values.end(), ds.v.begin());
    return ds;
}

}  // namespace grmr
