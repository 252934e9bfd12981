#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace shadowtc::cli {

/// Formats a double with 17 significant digits (lossless round-trip).
std::string format_double(double v);

/// Minimal JSON emitter with deterministic field order and 17-digit floats.
/// Non-finite doubles are emitted as the strings "inf"/"-inf"/"nan".
class JsonWriter {
public:
    std::string take() { return std::move(out_); }

    void begin_object();
    void end_object();
    void key_object(std::string_view key); // nested object under a key
    void begin_array(std::string_view key);
    void end_array();

    void field(std::string_view key, double v);
    void field(std::string_view key, long long v);
    void field(std::string_view key, int v) { field(key, static_cast<long long>(v)); }
    void field(std::string_view key, unsigned long long v);
    void field(std::string_view key, std::string_view v);
    void field(std::string_view key, const std::vector<double>& v);

    void element(double v);
    void element(unsigned long long v);
    void open_object_element(); // object inside an array

private:
    void comma();
    void key(std::string_view k);
    void raw_number(double v);

    std::string out_;
    bool need_comma_ = false;
};

/// Minimal CSV emitter; 17-digit floats, header row first.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    void row(const std::vector<double>& values);
    void raw_row(const std::vector<std::string>& cells);
    std::string take() { return std::move(out_); }

private:
    std::string out_;
    std::size_t width_;
};

/// Writes to path, or to stdout when path is empty.
void emit(const std::string& path, const std::string& doc);

} // namespace shadowtc::cli
