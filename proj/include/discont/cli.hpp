#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "discont/field.hpp"
#include "discont/netpbm.hpp"

namespace discont::cli {

enum class Subcommand { Detect, Trace, Render, RenderSeq, DetectTemporal };
enum class Mode { Multilevel, Pointwise };

enum ExitCode : int { kOk = 0, kInternalError = 1, kInputError = 2 };

struct RunConfig {
    Subcommand subcommand = Subcommand::Detect;
    std::vector<std::filesystem::path> inputs;
    std::filesystem::path output;
    std::string output_prefix;

    Intensity increment = 8;
    std::optional<Intensity> offset;  ///< defaults to the increment
    Topology topology = Topology::N4;
    Mode mode = Mode::Multilevel;
    DifferenceOperator preprocess = DifferenceOperator::Identity;
    Channel channel = Channel::Gray;
    bool filter_occluding = false;
    std::int32_t zero_tolerance = 0;
    unsigned threads = 1;

    // detect
    std::optional<std::filesystem::path> counts_output;
    // trace
    Intensity level = 0;
    std::string format;  ///< "txt" or "svg"; empty infers from the extension
    // render / render-seq
    std::filesystem::path scene;
    std::optional<std::filesystem::path> truth_output;
    std::optional<std::filesystem::path> occluding_output;
    std::optional<std::filesystem::path> discontinuity_output;
    std::string truth_prefix;
    int frames = 2;
};

/// Executes one subcommand. Returns 0 on success, 2 on bad input (unreadable
/// or malformed files, invalid parameters), 1 on an internal failure.
/// Messages go to `err`.
int run(const RunConfig& config, std::ostream& err);

/// Parses argv into a RunConfig, then runs it. Usage errors exit with 2.
int main_entry(int argc, const char* const* argv);

}  // namespace discont::cli
