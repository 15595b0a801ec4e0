#include "globsci/csv.hpp"

#include "globsci/error.hpp"

#include <charconv>
#include <cmath>
#include <iterator>
#include <sstream>

namespace globsci::csv {

Reader::Reader(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_, std::ios::binary);
    if (!in) {
        throw DataError("cannot open input file: " + path_);
    }
    in.seekg(0, std::ios::end);
    const auto length = in.tellg();
    in.seekg(0, std::ios::beg);
    buffer_.resize(static_cast<std::size_t>(length));
    in.read(buffer_.data(), length);
    if (buffer_.size() >= 3 && buffer_.compare(0, 3, "\xEF\xBB\xBF") == 0) {
        pos_ = 3;
    }
    if (!next()) {
        throw DataError(path_, 1, 1, "missing header row");
    }
    header_.assign(fields_.begin(), fields_.end());
}

void Reader::expect_header(const std::vector<std::string_view>& expected) const {
    bool ok = header_.size() == expected.size();
    for (std::size_t i = 0; ok && i < expected.size(); ++i) {
        ok = header_[i] == expected[i];
    }
    if (!ok) {
        std::string want;
        for (auto e : expected) {
            want += want.empty() ? "" : ",";
            want += e;
        }
        throw DataError(path_, 1, 1, "unexpected header, want '" + want + "'");
    }
}

bool Reader::next() {
    while (pos_ < buffer_.size()) {
        if (parse_record()) {
            return true;
        }
    }
    fields_.clear();
    return false;
}

bool Reader::parse_record() {
    fields_.clear();
    unescaped_.clear();
    line_ = next_line_;
    const std::size_t n = buffer_.size();
    std::size_t start = pos_;
    bool any = false;
    while (true) {
        if (pos_ < n && buffer_[pos_] == '"') {
            // Quoted field: may contain delimiters, newlines and doubled quotes.
            std::string value;
            ++pos_;
            while (true) {
                if (pos_ >= n) {
                    fail(fields_.size() + 1, "unterminated quoted field");
                }
                const char c = buffer_[pos_++];
                if (c == '"') {
                    if (pos_ < n && buffer_[pos_] == '"') {
                        value.push_back('"');
                        ++pos_;
                    } else {
                        break;
                    }
                } else {
                    if (c == '\n') {
                        ++next_line_;
                    }
                    value.push_back(c);
                }
            }
            unescaped_.push_back(std::move(value));
            fields_.emplace_back(unescaped_.back());
            any = true;
            if (pos_ < n && buffer_[pos_] == ',') {
                ++pos_;
                continue;
            }
            if (pos_ < n && buffer_[pos_] == '\r') {
                ++pos_;
            }
            if (pos_ < n && buffer_[pos_] != '\n') {
                fail(fields_.size(), "unexpected character after closing quote");
            }
            if (pos_ < n) {
                ++pos_;
            }
            ++next_line_;
            return true;
        }
        start = pos_;
        while (pos_ < n && buffer_[pos_] != ',' && buffer_[pos_] != '\n') {
            ++pos_;
        }
        std::size_t end = pos_;
        if (pos_ < n && buffer_[pos_] == ',') {
            fields_.emplace_back(buffer_.data() + start, end - start);
            ++pos_;
            any = true;
            continue;
        }
        if (end > start && buffer_[end - 1] == '\r') {
            --end;
        }
        if (end > start || any) {
            fields_.emplace_back(buffer_.data() + start, end - start);
            any = true;
        }
        if (pos_ < n) {
            ++pos_;
        }
        ++next_line_;
        return any;
    }
}

void Reader::fail(std::size_t column, const std::string& what) const {
    throw DataError(path_, line_, column, what);
}

std::string_view Reader::text(std::size_t i) const {
    if (i >= fields_.size()) {
        fail(i + 1, "missing field (expected at least " + std::to_string(i + 1) + " columns)");
    }
    return fields_[i];
}

std::int64_t Reader::integer(std::size_t i) const {
    const auto s = text(i);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        fail(i + 1, "expected an integer, got '" + std::string(s) + "'");
    }
    return value;
}

std::int64_t Reader::count(std::size_t i) const {
    const auto value = integer(i);
    if (value < 0) {
        fail(i + 1, "negative count " + std::to_string(value));
    }
    return value;
}

double Reader::real(std::size_t i) const {
    const auto s = text(i);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        fail(i + 1, "expected a number, got '" + std::string(s) + "'");
    }
    return value;
}

Writer::Writer(const std::string& path) : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) {
        throw DataError("cannot open output file: " + path);
    }
    buffer_.reserve(1 << 20);
}

Writer::~Writer() {
    try {
        close();
    } catch (...) {
    }
}

void Writer::separator() {
    if (!first_in_row_) {
        buffer_.push_back(',');
    }
    first_in_row_ = false;
}

Writer& Writer::field(std::string_view value) {
    separator();
    if (value.find_first_of(",\"\n\r") == std::string_view::npos) {
        buffer_.append(value);
    } else {
        buffer_.push_back('"');
        for (char c : value) {
            if (c == '"') {
                buffer_.push_back('"');
            }
            buffer_.push_back(c);
        }
        buffer_.push_back('"');
    }
    return *this;
}

Writer& Writer::field(std::int64_t value) {
    separator();
    char tmp[24];
    const auto [ptr, ec] = std::to_chars(tmp, tmp + sizeof tmp, value);
    buffer_.append(tmp, ptr);
    return *this;
}

Writer& Writer::field(double value) {
    separator();
    char tmp[32];
    const auto [ptr, ec] = std::to_chars(tmp, tmp + sizeof tmp, value);
    buffer_.append(tmp, ptr);
    return *this;
}

Writer& Writer::empty() {
    separator();
    return *this;
}

void Writer::end_row() {
    buffer_.push_back('\n');
    first_in_row_ = true;
    flush_if_full();
}

void Writer::row(const std::vector<std::string_view>& values) {
    for (auto v : values) {
        field(v);
    }
    end_row();
}

void Writer::flush_if_full() {
    if (buffer_.size() >= (1u << 20)) {
        out_.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
        buffer_.clear();
    }
}

void Writer::close() {
    if (!out_.is_open()) {
        return;
    }
    out_.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
    buffer_.clear();
    out_.close();
    if (out_.fail()) {
        throw DataError("failed writing output file: " + path_);
    }
}

std::string format_double(double value) {
    char tmp[32];
    const auto [ptr, ec] = std::to_chars(tmp, tmp + sizeof tmp, value);
    return std::string(tmp, ptr);
}

std::vector<std::string> split(std::string_view text, char delimiter) {
    std::vector<std::string> parts;
    if (text.empty()) {
        return parts;
    }
    std::size_t start = 0;
    while (true) {
        const auto end = text.find(delimiter, start);
        parts.emplace_back(text.substr(start, end == std::string_view::npos ? text.npos : end - start));
        if (end == std::string_view::npos) {
            break;
        }
        start = end + 1;
    }
    return parts;
}

}  // namespace globsci::csv
