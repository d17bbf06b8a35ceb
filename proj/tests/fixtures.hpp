#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fixture {

using Row = std::vector<std::string>;

// Header line dropped.
inline std::vector<Row> read_csv(const std::string& name)
{
    std::ifstream in(std::string(PM_FIXTURES) + "/" + name);
    if (!in)
        throw std::runtime_error("missing fixture " + name);
    std::vector<Row> rows;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        Row r;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            r.push_back(cell);
        rows.push_back(std::move(r));
    }
    return rows;
}

inline std::string read_text(const std::string& name)
{
    std::ifstream in(std::string(PM_FIXTURES) + "/" + name);
    if (!in)
        throw std::runtime_error("missing fixture " + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace fixture
