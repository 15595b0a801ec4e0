#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace globsci::csv {

// Reads a whole UTF-8, comma-delimited file with a header row. Quoted fields
// (RFC 4180 style) are supported; LF and CRLF line endings are accepted.
class Reader {
public:
    explicit Reader(std::string path);

    const std::string& path() const noexcept { return path_; }
    const std::vector<std::string>& header() const noexcept { return header_; }

    // Throws DataError unless the header is exactly `expected`.
    void expect_header(const std::vector<std::string_view>& expected) const;

    // Advances to the next non-empty record. Returns false at end of file.
    bool next();

    std::size_t line() const noexcept { return line_; }
    std::size_t size() const noexcept { return fields_.size(); }
    std::string_view field(std::size_t i) const { return fields_.at(i); }

    // Field accessors that raise DataError naming file, line and column.
    std::string_view text(std::size_t i) const;
    std::int64_t integer(std::size_t i) const;
    std::int64_t count(std::size_t i) const;  // integer >= 0
    double real(std::size_t i) const;

    [[noreturn]] void fail(std::size_t column, const std::string& what) const;

private:
    bool parse_record();

    std::string path_;
    std::string buffer_;
    std::size_t pos_ = 0;
    std::size_t line_ = 0;
    std::size_t next_line_ = 1;
    std::vector<std::string_view> fields_;
    std::deque<std::string> unescaped_;
    std::vector<std::string> header_;
};

// Buffered writer producing LF-terminated rows with minimal quoting.
class Writer {
public:
    explicit Writer(const std::string& path);
    ~Writer();

    Writer(const Writer&) = delete;
    Writer& operator=(const Writer&) = delete;

    Writer& field(std::string_view value);
    Writer& field(std::int64_t value);
    Writer& field(double value);  // shortest round-trip representation
    Writer& empty();
    void end_row();

    void row(const std::vector<std::string_view>& values);
    void close();

private:
    void separator();
    void flush_if_full();

    std::string path_;
    std::ofstream out_;
    std::string buffer_;
    bool first_in_row_ = true;
};

// Shortest representation that round-trips exactly.
std::string format_double(double value);

std::vector<std::string> split(std::string_view text, char delimiter);

}  // namespace globsci::csv
