#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace dlflame {

/// fig1 ... fig9.
[[nodiscard]] const std::vector<std::string>& figure_names();

struct FigureOutput {
    std::vector<std::filesystem::path> files;  ///< one CSV per panel
    std::size_t failed_points = 0;
};

/// Computes the dataset of a figure and writes one CSV per panel into
/// `out_dir` (created if needed), each with a manifest next to it.
/// Throws ConfigError for an unknown name.
FigureOutput write_figure(std::string_view name, const std::filesystem::path& out_dir,
                          unsigned workers,
                          const std::function<void(const std::string&)>& log = {});

}  // namespace dlflame
