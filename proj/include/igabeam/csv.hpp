#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace igabeam {

/// 9 significant digits, '.' decimal separator regardless of locale.
std::string format_number(double v);

/// Minimal CSV emitter: header row, comma separated, LF line endings.
class CsvWriter {
public:
    CsvWriter(std::ostream& out, const std::vector<std::string>& header);

    CsvWriter& cell(double v);
    CsvWriter& cell(int v);
    CsvWriter& cell(const std::string& v);
    void end_row();

private:
    std::ostream& out_;
    std::size_t columns_;
    std::size_t filled_ = 0;
};

} // namespace igabeam
