#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace shadowtc::cli {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void JsonWriter::comma() {
    if (need_comma_) out_ += ',';
    need_comma_ = true;
}

void JsonWriter::key(std::string_view k) {
    comma();
    out_ += '"';
    out_ += k;
    out_ += "\":";
}

void JsonWriter::raw_number(double v) {
    if (std::isnan(v)) {
        out_ += "\"nan\"";
    } else if (std::isinf(v)) {
        out_ += v > 0 ? "\"inf\"" : "\"-inf\"";
    } else {
        out_ += format_double(v);
    }
}

void JsonWriter::begin_object() {
    comma();
    out_ += '{';
    need_comma_ = false;
}

void JsonWriter::end_object() {
    out_ += '}';
    need_comma_ = true;
}

void JsonWriter::key_object(std::string_view k) {
    key(k);
    out_ += '{';
    need_comma_ = false;
}

void JsonWriter::begin_array(std::string_view k) {
    key(k);
    out_ += '[';
    need_comma_ = false;
}

void JsonWriter::end_array() {
    out_ += ']';
    need_comma_ = true;
}

void JsonWriter::field(std::string_view k, double v) {
    key(k);
    raw_number(v);
}

void JsonWriter::field(std::string_view k, long long v) {
    key(k);
    out_ += std::to_string(v);
}

void JsonWriter::field(std::string_view k, unsigned long long v) {
    key(k);
    out_ += std::to_string(v);
}

void JsonWriter::field(std::string_view k, std::string_view v) {
    key(k);
    out_ += '"';
    out_ += v;
    out_ += '"';
}

void JsonWriter::field(std::string_view k, const std::vector<double>& v) {
    begin_array(k);
    for (double x : v) element(x);
    end_array();
}

void JsonWriter::element(double v) {
    comma();
    raw_number(v);
}

void JsonWriter::element(unsigned long long v) {
    comma();
    out_ += std::to_string(v);
}

void JsonWriter::open_object_element() {
    comma();
    out_ += '{';
    need_comma_ = false;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out_ += ',';
        out_ += header[i];
    }
    out_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != width_) throw std::logic_error("CsvWriter: row width mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out_ += ',';
        out_ += format_double(values[i]);
    }
    out_ += '\n';
}

void CsvWriter::raw_row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw std::logic_error("CsvWriter: row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ += ',';
        out_ += cells[i];
    }
    out_ += '\n';
}

void emit(const std::string& path, const std::string& doc) {
    if (path.empty()) {
        std::cout << doc;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << doc;
}

} // namespace shadowtc::cli
