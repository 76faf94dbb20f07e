// report.hpp
// RFC-4180 CSV emission with deterministic column order and floats at 17
// significant digits, so identical runs produce byte-identical files.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vpl {

std::string format_double(double v);
std::string csv_escape(const std::string& field);

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void row(const std::vector<std::string>& fields);

private:
    std::ostream& out_;
};

} // namespace vpl
