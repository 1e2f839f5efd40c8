#pragma once

#include <string_view>
#include <vector>

#include "oscimedia/cli/config.hpp"
#include "oscimedia/cli/table.hpp"

namespace oscimedia::cli {

[[nodiscard]] std::string_view tool_version() noexcept;

// fig1 -> chart, fig2 -> compare, fig3/fig4/fig5 -> scan, fig6b/fig6c -> photons.
// Throws validation_error for unknown names.
[[nodiscard]] Command preset_command(std::string_view name);
[[nodiscard]] std::vector<std::string_view> preset_names();

// Runs the figure pipeline with its fixed physical parameters. Only periods,
// tolerance, samples_per_period and resolution are taken from `config`.
[[nodiscard]] std::vector<ResultTable> run_preset(std::string_view name, const RunConfig& config);

// Runs config.command with the config's parameters, or the preset if one is
// set. Validates the config first. Every table carries the config echo.
[[nodiscard]] std::vector<ResultTable> run(const RunConfig& config);

}  // namespace oscimedia::cli
