// CSV emission and parsing for the CLI.  Floating-point cells are printed
// with 9 significant digits so identical runs produce byte-identical files.

#pragma once

#include <string>
#include <vector>

namespace specmom {

std::string format_double(double v);  // %.9g

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

}  // namespace specmom
