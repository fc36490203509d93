#include "fibercav/table.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "fibercav/errors.hpp"

namespace fibercav {

void ResultTable::add_param(const std::string& name, const std::string& value) {
    params.emplace_back(name, value);
}

void ResultTable::add_param(const std::string& name, double value,
                            int precision) {
    params.emplace_back(name, format_sig(value, precision));
}

std::string format_sig(double value, int precision) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0.0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
    return buf;
}

void write_csv(std::ostream& out, const ResultTable& table, int precision) {
    for (const auto& [name, value] : table.params)
        out << "# " << name << " = " << value << "\n";
    out << "# units:";
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << (i == 0 ? " " : ",") << table.columns[i].unit;
    out << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << (i == 0 ? "" : ",") << table.columns[i].name;
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i == 0 ? "" : ",") << format_sig(row[i], precision);
        out << "\n";
    }
}

void write_json(std::ostream& out, const ResultTable& table, int precision) {
    nlohmann::ordered_json doc;
    auto& params = doc["params"] = nlohmann::ordered_json::object();
    for (const auto& [name, value] : table.params) params[name] = value;
    auto& columns = doc["columns"] = nlohmann::ordered_json::array();
    for (const auto& col : table.columns)
        columns.push_back({{"name", col.name}, {"unit", col.unit}});
    auto& rows = doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json jrow = nlohmann::ordered_json::array();
        for (const double v : row) {
            if (!std::isfinite(v)) {
                jrow.push_back(nullptr);
            } else {
                // round through the fixed-precision text form so csv and
                // json report identical digits
                jrow.push_back(std::stod(format_sig(v, precision)));
            }
        }
        rows.push_back(std::move(jrow));
    }
    out << doc.dump(1) << "\n";
}

void write_table(std::ostream& out, const ResultTable& table,
                 const std::string& format, int precision) {
    if (format == "csv") {
        write_csv(out, table, precision);
    } else if (format == "json") {
        write_json(out, table, precision);
    } else {
        throw ConfigError("unknown output format '" + format + "'");
    }
}

}  // namespace fibercav
