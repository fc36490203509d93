#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace fibercav {

// One output table: parameter context (emitted as header comments / the
// "params" object), labeled columns with units, and numeric rows.
struct Column {
    std::string name;
    std::string unit;
};

struct ResultTable {
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<Column> columns;
    std::vector<std::vector<double>> rows;

    void add_param(const std::string& name, const std::string& value);
    void add_param(const std::string& name, double value, int precision = 9);
};

// value formatted to the given number of significant digits; non-finite
// values become "inf", "-inf", or "nan"
std::string format_sig(double value, int precision);

void write_csv(std::ostream& out, const ResultTable& table, int precision);

// single object {"params": {...}, "columns": [{name, unit}...], "rows":
// [[...]...]}; non-finite values are serialized as null
void write_json(std::ostream& out, const ResultTable& table, int precision);

void write_table(std::ostream& out, const ResultTable& table,
                 const std::string& format, int precision);

}  // namespace fibercav
