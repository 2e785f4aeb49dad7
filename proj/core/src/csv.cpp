#include "dlflame/csv.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace dlflame::csv {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.8e", v);
    return buf;
}

Writer::Writer(std::ostream& out, std::initializer_list<std::string_view> header)
    : out_(out), n_columns_(header.size()) {
    for (auto h : header) {
        separator();
        out_ << h;
    }
    end_row();
}

Writer::Writer(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), n_columns_(header.size()) {
    for (const auto& h : header) {
        separator();
        out_ << h;
    }
    end_row();
}

void Writer::separator() {
    if (in_row_ > 0) out_ << ',';
    ++in_row_;
}

Writer& Writer::cell(double v) {
    separator();
    out_ << format_double(v);
    return *this;
}

Writer& Writer::cell(long long v) {
    separator();
    out_ << v;
    return *this;
}

Writer& Writer::cell(unsigned long long v) {
    separator();
    out_ << v;
    return *this;
}

Writer& Writer::cell(bool v) {
    separator();
    out_ << (v ? 1 : 0);
    return *this;
}

Writer& Writer::cell(std::string_view v) {
    separator();
    out_ << v;
    return *this;
}

void Writer::end_row() {
    if (in_row_ != n_columns_) {
        throw std::logic_error("csv::Writer: row has " + std::to_string(in_row_) +
                               " cells, header has " + std::to_string(n_columns_));
    }
    out_ << '\n';
    in_row_ = 0;
}

}  // namespace dlflame::csv
