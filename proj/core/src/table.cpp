#include "entanglecert/table.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "entanglecert/errors.hpp"

namespace entanglecert {

void ResultTable::add_meta(const std::string& key, const std::string& value) {
    metadata.emplace_back(key, value);
}

void ResultTable::add_info(const std::string& key, const std::string& value) {
    metadata.emplace_back("out_" + key, value);
}

std::string format_value(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.12g", v);
    return buffer;
}

void emit_csv(const ResultTable& table, std::ostream& os) {
    for (const auto& [key, value] : table.metadata) os << "# " << key << "=" << value << "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) os << ",";
        os << table.columns[c];
    }
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << ",";
            os << format_value(row[c]);
        }
        os << "\n";
    }
}

void emit_jsonl(const ResultTable& table, std::ostream& os) {
    nlohmann::ordered_json meta;
    for (const auto& [key, value] : table.metadata) meta[key] = value;
    os << meta.dump() << "\n";
    for (const auto& row : table.rows) {
        nlohmann::ordered_json record;
        for (std::size_t c = 0; c < row.size() && c < table.columns.size(); ++c)
            record[table.columns[c]] = row[c];
        os << record.dump() << "\n";
    }
}

void emit(const ResultTable& table, const std::string& path, OutputFormat format) {
    const auto write = [&](std::ostream& os) {
        if (format == OutputFormat::csv)
            emit_csv(table, os);
        else
            emit_jsonl(table, os);
    };
    if (path.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream file(path);
    if (!file) throw IoError("emit: cannot open '" + path + "' for writing");
    write(file);
    if (!file.good()) throw IoError("emit: write to '" + path + "' failed");
}

ResultTable parse_csv(std::istream& is) {
    ResultTable table;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.front() == '#') {
            std::string body = line.substr(1);
            if (!body.empty() && body.front() == ' ') body.erase(0, 1);
            const auto eq = body.find('=');
            if (eq != std::string::npos)
                table.metadata.emplace_back(body.substr(0, eq), body.substr(eq + 1));
            continue;
        }
        std::stringstream cells(line);
        std::string cell;
        if (!header_seen) {
            while (std::getline(cells, cell, ',')) table.columns.push_back(cell);
            header_seen = true;
            continue;
        }
        std::vector<double> row;
        while (std::getline(cells, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ParseError("parse_csv: non-numeric cell '" + cell + "'");
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace entanglecert
