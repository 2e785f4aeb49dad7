#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace dlflame::csv {

/// Nine significant digits, scientific notation. Locale independent.
[[nodiscard]] std::string format_double(double v);

/// Minimal comma-separated writer: header first, then rows of cells.
class Writer {
public:
    Writer(std::ostream& out, std::initializer_list<std::string_view> header);
    Writer(std::ostream& out, const std::vector<std::string>& header);

    Writer& cell(double v);
    Writer& cell(long long v);
    Writer& cell(int v) { return cell(static_cast<long long>(v)); }
    Writer& cell(unsigned long long v);
    Writer& cell(bool v);
    Writer& cell(std::string_view v);
    void end_row();

    [[nodiscard]] std::size_t columns() const { return n_columns_; }

private:
    void separator();

    std::ostream& out_;
    std::size_t n_columns_;
    std::size_t in_row_ = 0;
};

}  // namespace dlflame::csv
