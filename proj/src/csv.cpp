#include "igabeam/csv.hpp"

#include <charconv>
#include <stdexcept>

namespace igabeam {

std::string format_number(double v) {
    // to_chars is locale-independent, unlike printf.
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
    if (ec != std::errc()) throw std::runtime_error("format_number: conversion failed");
    return std::string(buf, ptr);
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
    for (const std::string& h : header) cell(h);
    end_row();
}

CsvWriter& CsvWriter::cell(double v) { return cell(format_number(v)); }

CsvWriter& CsvWriter::cell(int v) { return cell(std::to_string(v)); }

CsvWriter& CsvWriter::cell(const std::string& v) {
    if (filled_ > 0) out_ << ',';
    out_ << v;
    ++filled_;
    return *this;
}

void CsvWriter::end_row() {
    if (filled_ != columns_) throw std::logic_error("CsvWriter: row width does not match header");
    out_ << '\n';
    filled_ = 0;
}

} // namespace igabeam
