#include "discont/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>

#include "discont/contour_io.hpp"
#include "discont/detector.hpp"
#include "discont/scene_config.hpp"

namespace discont::cli {

namespace {

std::string frame_path(const std::string& prefix, int index, const char* ext) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "_%03d", index);
    return prefix + buf + ext;
}

IntensityGrid load_input(const RunConfig& cfg, const std::filesystem::path& path) {
    const auto grid = decode_image(read_file(path), cfg.channel);
    return apply_operator(grid, cfg.preprocess);
}

ThresholdSchedule schedule_of(const RunConfig& cfg) {
    return ThresholdSchedule(cfg.offset.value_or(cfg.increment), cfg.increment);
}

DetectionMask detect(const RunConfig& cfg, const IntensityGrid& grid, Topology topology) {
    const DetectOptions opts{cfg.threads};
    DetectionMask mask = cfg.mode == Mode::Pointwise
                             ? detect_pointwise(grid, schedule_of(cfg), topology,
                                                CountMethod::ClosedForm, opts)
                             : detect_multilevel(grid, schedule_of(cfg), topology, opts);
    if (cfg.filter_occluding) mask = filter_zeros(mask, zero_mask(hamiltonian(grid), cfg.zero_tolerance));
    for (Eigen::Index i = 0; i < mask.shape().pixel_count(); ++i)
        if (mask.flagged[i] != (mask.level_count[i] >= 2))
            throw std::logic_error("detection mask violates flagged <=> level_count >= 2");
    return mask;
}

Mask frame_of(const Mask& m, int t) {
    Mask::Storage s = m.frame(t);
    return Mask(GridShape{m.width(), m.height(), 1}, std::move(s));
}

IntensityGrid counts_image(const DetectionMask& mask, const RunConfig& cfg, Intensity grid_max) {
    const auto levels = std::int64_t(schedule_of(cfg).levels(grid_max).size());
    const auto top = Intensity(std::clamp<std::int64_t>(levels, 1, 65535));
    PixelGrid<Intensity> v(mask.shape(), 0);
    v.matrix() = mask.level_count.matrix().cwiseMin(top);
    return IntensityGrid(std::move(v), top);
}

Mask union_of(const Mask& a, const Mask& b) {
    Mask::Storage s = (a.matrix().array() || b.matrix().array()).matrix();
    return Mask(a.shape(), std::move(s));
}

void run_detect(const RunConfig& cfg) {
    if (cfg.inputs.size() != 1) throw InputError("detect takes exactly one input image");
    const auto grid = load_input(cfg, cfg.inputs.front());
    const auto mask = detect(cfg, grid, cfg.topology);
    write_file(cfg.output, encode_pbm(mask.flagged));
    if (cfg.counts_output) write_file(*cfg.counts_output, encode_pgm(counts_image(mask, cfg, grid.max_value())));
}

void run_detect_temporal(const RunConfig& cfg) {
    if (cfg.inputs.size() < 2) throw InputError("detect-temporal needs at least two frames");
    if (cfg.topology == Topology::N8) throw InputError("detect-temporal uses the 4-neighbor topology");
    std::vector<IntensityGrid> frames;
    for (const auto& p : cfg.inputs) frames.push_back(load_input(cfg, p));
    const auto stacked = frame_stack(frames);
    const auto mask = detect(cfg, stacked, Topology::N4T);
    for (int t = 0; t < stacked.frames(); ++t)
        write_file(frame_path(cfg.output_prefix, t, ".pbm"), encode_pbm(frame_of(mask.flagged, t)));
}

void run_trace(const RunConfig& cfg) {
    if (cfg.inputs.size() != 1) throw InputError("trace takes exactly one input image");
    const auto grid = load_input(cfg, cfg.inputs.front());
    const auto contours = trace_level_contours(grid, cfg.level, cfg.topology);
    std::string format = cfg.format;
    if (format.empty()) format = cfg.output.extension() == ".svg" ? "svg" : "txt";
    const std::string text = format == "svg" ? contours_to_svg(contours, grid.width(), grid.height())
                                             : contours_to_text(contours);
    write_file(cfg.output, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

void write_truth(const GroundTruth& truth, const std::optional<std::filesystem::path>& combined,
                 const std::optional<std::filesystem::path>& occluding,
                 const std::optional<std::filesystem::path>& discontinuity) {
    if (combined) write_file(*combined, encode_pbm(union_of(truth.occluding, truth.discontinuity)));
    if (occluding) write_file(*occluding, encode_pbm(truth.occluding));
    if (discontinuity) write_file(*discontinuity, encode_pbm(truth.discontinuity));
}

void run_render(const RunConfig& cfg) {
    const auto scene = load_scene_config(cfg.scene);
    const auto r = render(scene.scene);
    write_file(cfg.output, encode_pgm(r.image));
    write_truth(r.truth, cfg.truth_output, cfg.occluding_output, cfg.discontinuity_output);
}

void run_render_seq(const RunConfig& cfg) {
    const auto scene = load_scene_config(cfg.scene);
    const auto seq = render_sequence(scene.scene, scene.motion, cfg.frames);
    for (int i = 0; i < cfg.frames; ++i) {
        write_file(frame_path(cfg.output_prefix, i, ".pgm"), encode_pgm(seq.frames[std::size_t(i)]));
        if (!cfg.truth_prefix.empty())
            write_truth(seq.truths[std::size_t(i)], frame_path(cfg.truth_prefix, i, ".pbm"), std::nullopt,
                        std::nullopt);
    }
}

// Binds a named choice to an enum. Only the listed spellings are accepted.
template <class E>
CLI::Option* add_choice(CLI::App* sub, const std::string& name, E& target, std::map<std::string, E> table,
                        const std::string& description) {
    std::vector<std::string> keys;
    for (const auto& entry : table) keys.push_back(entry.first);
    return sub
        ->add_option_function<std::string>(
            name, [&target, table](const std::string& key) { target = table.at(CLI::detail::to_lower(key)); },
            description)
        ->check(CLI::IsMember(keys, CLI::ignore_case));
}

}  // namespace

int run(const RunConfig& config, std::ostream& err) {
    try {
        if (config.increment < 1) throw InputError("--increment must be at least 1");
        if (config.zero_tolerance < 0) throw InputError("--zero-tolerance must be non-negative");
        switch (config.subcommand) {
            case Subcommand::Detect: run_detect(config); break;
            case Subcommand::DetectTemporal: run_detect_temporal(config); break;
            case Subcommand::Trace: run_trace(config); break;
            case Subcommand::Render: run_render(config); break;
            case Subcommand::RenderSeq: run_render_seq(config); break;
        }
        return kOk;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
}

int main_entry(int argc, const char* const* argv) {
    CLI::App app{"Discontinuity and occlusion detection from multi-threshold level-curve sets"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::filesystem::path single_input;

    const std::map<std::string, Topology> topologies{{"4", Topology::N4}, {"8", Topology::N8}};
    const std::map<std::string, Mode> modes{{"multilevel", Mode::Multilevel}, {"pointwise", Mode::Pointwise}};
    const std::map<std::string, DifferenceOperator> operators{
        {"none", DifferenceOperator::Identity}, {"dx", DifferenceOperator::Dx}, {"dy", DifferenceOperator::Dy}};
    const std::map<std::string, Channel> channels{
        {"gray", Channel::Gray}, {"r", Channel::Red}, {"g", Channel::Green}, {"b", Channel::Blue}};

    const auto image_options = [&](CLI::App* sub) {
        add_choice(sub, "--preprocess", cfg.preprocess, operators, "Difference operator applied first (none, dx, dy)");
        add_choice(sub, "--channel", cfg.channel, channels, "Channel of color input (gray, r, g, b)");
    };
    const auto detect_options = [&](CLI::App* sub) {
        image_options(sub);
        sub->add_option("--increment", cfg.increment, "Threshold increment")->check(CLI::PositiveNumber);
        sub->add_option("--offset", cfg.offset, "First threshold (default: the increment)");
        add_choice(sub, "--mode", cfg.mode, modes, "multilevel or pointwise");
        sub->add_flag("--filter-occluding", cfg.filter_occluding, "Drop flags where the Hamiltonian vanishes");
        sub->add_option("--zero-tolerance", cfg.zero_tolerance, "L1 tolerance for Hamiltonian zeros")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
    };

    auto* detect = app.add_subcommand("detect", "Flag pixels lying on two or more level-curve sets");
    detect_options(detect);
    add_choice(detect, "--topology", cfg.topology, topologies, "Neighbor topology (4 or 8)");
    detect->add_option("--counts", cfg.counts_output, "Also write per-pixel level counts as PGM");
    detect->add_option("input", single_input, "Input PGM/PPM")->required();
    detect->add_option("output", cfg.output, "Output PBM mask")->required();
    detect->callback([&] {
        cfg.subcommand = Subcommand::Detect;
        cfg.inputs = {single_input};
    });

    auto* temporal = app.add_subcommand("detect-temporal", "Detect on a stack of frames with temporal neighbors");
    detect_options(temporal);
    temporal->add_option("--out-prefix", cfg.output_prefix, "Masks are written to PREFIX_NNN.pbm")->required();
    temporal->add_option("frames", cfg.inputs, "Frame images in temporal order")->required()->expected(2, 1 << 20);
    temporal->callback([&] { cfg.subcommand = Subcommand::DetectTemporal; });

    auto* trace = app.add_subcommand("trace", "Trace the level-curve set of one threshold into contours");
    image_options(trace);
    trace->add_option("--level", cfg.level, "Threshold c")->required();
    add_choice(trace, "--topology", cfg.topology, topologies, "Neighbor topology (4 or 8)");
    trace->add_option("--format", cfg.format, "txt or svg (default: from the output extension)")
        ->check(CLI::IsMember({"txt", "svg"}));
    trace->add_option("input", single_input, "Input PGM/PPM")->required();
    trace->add_option("output", cfg.output, "Output contour file")->required();
    trace->callback([&] {
        cfg.subcommand = Subcommand::Trace;
        cfg.inputs = {single_input};
    });

    auto* rend = app.add_subcommand("render", "Render a synthetic scene with ground truth");
    rend->add_option("--scene", cfg.scene, "Scene config (JSON)")->required();
    rend->add_option("--out", cfg.output, "Output PGM")->required();
    rend->add_option("--truth", cfg.truth_output, "PBM of occluding or discontinuity pixels");
    rend->add_option("--occluding", cfg.occluding_output, "PBM of occluding pixels");
    rend->add_option("--discontinuity", cfg.discontinuity_output, "PBM of object-identity changes");
    rend->callback([&] { cfg.subcommand = Subcommand::Render; });

    auto* seq = app.add_subcommand("render-seq", "Render a moving scene frame by frame");
    seq->add_option("--scene", cfg.scene, "Scene config (JSON) with optional motion")->required();
    seq->add_option("--frames", cfg.frames, "Number of frames")->check(CLI::Range(2, 100000));
    seq->add_option("--out-prefix", cfg.output_prefix, "Frames are written to PREFIX_NNN.pgm")->required();
    seq->add_option("--truth-prefix", cfg.truth_prefix, "Ground truth written to PREFIX_NNN.pbm");
    seq->callback([&] { cfg.subcommand = Subcommand::RenderSeq; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }
    return run(cfg, std::cerr);
}

}  // namespace discont::cli
