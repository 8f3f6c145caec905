// esl: edge-steered loss concealment pipeline.
//
// Subcommands mirror the transmission chain: embed builds the watermarked
// stream, transmit simulates packet loss, conceal reconstructs, evaluate
// sweeps loss probabilities, pipeline chains all four for one (p, seed).
//
// Exit codes: 0 success, 2 bad arguments, 3 malformed input data,
// 4 file I/O failure, 1 anything else.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "esl/channel.hpp"
#include "esl/codec.hpp"
#include "esl/conceal.hpp"
#include "esl/error.hpp"
#include "esl/metrics.hpp"
#include "esl/pipeline.hpp"

namespace {

std::string format_psnr(double db) {
    if (std::isinf(db))
        return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", db);
    return buf;
}

std::string stem_of(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

void ensure_directory(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw esl::IoError("cannot create directory " + dir + ": " + ec.message());
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw esl::IoError("cannot open " + path + " for writing");
    out << text;
    if (!out)
        throw esl::IoError("short write to " + path);
}

struct EmbedArgs {
    std::string input;
    std::string out;
    std::string edge_map_out;
    double edge_threshold = 0.25;
    int column_offset = 4;
};

void run_embed(const EmbedArgs& args) {
    const esl::Image image = esl::read_pgm(args.input);
    const esl::EmbedResult embedded =
        esl::embed_image(image, {args.edge_threshold, args.column_offset});
    esl::write_stream(embedded.stream, args.out);
    if (!args.edge_map_out.empty())
        esl::write_edge_map_pgm(embedded.edges, args.edge_map_out);
    const double db = esl::psnr_between(image, esl::decode_full(embedded.stream));
    std::cout << "packets: " << embedded.stream.packets.size() << "\n"
              << "watermarked decode PSNR: " << format_psnr(db) << " dB\n";
}

struct TransmitArgs {
    std::string input;
    std::string out;
    std::string mask_out;
    double loss_prob = 0.10;
    std::uint64_t seed = 0;
};

void run_transmit(const TransmitArgs& args) {
    const esl::PacketStream stream = esl::read_stream(args.input);
    const esl::TransmitResult sent =
        esl::transmit(stream, {args.loss_prob, args.seed});
    esl::write_stream(sent.stream, args.out);
    const std::string mask_path = args.mask_out.empty() ? args.out + ".mask" : args.mask_out;
    esl::write_mask(sent.mask, mask_path);
    const std::size_t total = sent.mask.size();
    const std::size_t dropped = total - sent.stream.packets.size();
    char buf[96];
    std::snprintf(buf, sizeof buf, "dropped %zu/%zu packets (%.4f)\n", dropped, total,
                  esl::loss_rate(sent.mask));
    std::cout << buf;
}

struct ConcealArgs {
    std::string stream_path;
    std::string mask_path;
    std::string out;
    std::string gray_out;
};

void run_conceal(const ConcealArgs& args) {
    const esl::PacketStream stream = esl::read_stream(args.stream_path);
    const esl::LossMask mask = esl::read_mask(args.mask_path);
    const esl::ReceiverOutput output = esl::receive(stream, mask);
    esl::write_pgm(output.concealed, args.out);
    if (!args.gray_out.empty())
        esl::write_pgm(output.gray_filled, args.gray_out);
    for (const std::string& warning : output.warnings)
        std::cerr << "warning: " << warning << "\n";
}

struct EvaluateArgs {
    std::vector<std::string> inputs;
    std::string out_dir = "evaluate_out";
    std::vector<double> loss_probs;
    int trials = 20;
    std::uint64_t seed = 0;
    double edge_threshold = 0.25;
    int column_offset = 4;
};

void run_evaluate(const EvaluateArgs& args) {
    std::vector<esl::NamedImage> images;
    for (const std::string& path : args.inputs)
        images.push_back({stem_of(path), esl::read_pgm(path)});

    esl::ExperimentConfig config;
    if (!args.loss_probs.empty())
        config.loss_probabilities = args.loss_probs;
    config.trials = args.trials;
    config.base_seed = args.seed;
    config.embed = {args.edge_threshold, args.column_offset};

    const esl::SweepResult result = esl::run_sweep(images, config);

    double highlight = config.loss_probabilities.front();
    for (double p : config.loss_probabilities)
        if (p == 0.10)
            highlight = p;

    const std::string summary =
        esl::sweep_summary(result) + "\n" + esl::comparison_table(result, highlight);
    ensure_directory(args.out_dir);
    esl::write_csv(result.concealed, args.out_dir + "/results.csv");
    write_text(args.out_dir + "/summary.txt", summary);
    std::cout << summary;
}

struct PipelineArgs {
    std::string input;
    std::string out_dir = "pipeline_out";
    double loss_prob = 0.10;
    std::uint64_t seed = 0;
    double edge_threshold = 0.25;
    int column_offset = 4;
};

void run_pipeline(const PipelineArgs& args) {
    ensure_directory(args.out_dir);
    const esl::Image image = esl::read_pgm(args.input);
    const esl::EmbedResult embedded =
        esl::embed_image(image, {args.edge_threshold, args.column_offset});
    esl::write_stream(embedded.stream, args.out_dir + "/stream.esl");

    const esl::TransmitResult sent =
        esl::transmit(embedded.stream, {args.loss_prob, args.seed});
    esl::write_stream(sent.stream, args.out_dir + "/lossy.esl");
    esl::write_mask(sent.mask, args.out_dir + "/mask.bin");

    const esl::ReceiverOutput output = esl::receive(sent.stream, sent.mask);
    esl::write_pgm(output.concealed, args.out_dir + "/concealed.pgm");
    for (const std::string& warning : output.warnings)
        std::cerr << "warning: " << warning << "\n";

    esl::PsnrRecord record;
    record.image = stem_of(args.input);
    record.loss_probability = args.loss_prob;
    record.seed = args.seed;
    record.mse_value = esl::mse(image, output.concealed);
    record.psnr_db = esl::psnr(record.mse_value);
    esl::write_csv({record}, args.out_dir + "/results.csv");
    std::cout << "concealed PSNR: " << format_psnr(record.psnr_db) << " dB\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Image transmission with self-embedded edge maps: "
                 "block codec, loss simulator, edge-guided concealment"};
    app.require_subcommand(1);

    EmbedArgs embed_args;
    CLI::App* embed = app.add_subcommand("embed", "Encode a PGM into a watermarked stream");
    embed->add_option("input", embed_args.input, "Input PGM image")->required();
    embed->add_option("--out", embed_args.out, "Output stream path")->required();
    embed->add_option("--edge-threshold", embed_args.edge_threshold,
                      "Edge detector threshold, fraction of max gradient (0, 1]");
    embed->add_option("--column-offset", embed_args.column_offset,
                      "Block column carrying the edge bits [0, 7]");
    embed->add_option("--edge-map", embed_args.edge_map_out, "Also write the edge map as PGM");

    TransmitArgs transmit_args;
    CLI::App* transmit = app.add_subcommand("transmit", "Simulate packet loss on a stream");
    transmit->add_option("input", transmit_args.input, "Input stream")->required();
    transmit->add_option("--out", transmit_args.out, "Surviving-stream path")->required();
    transmit->add_option("--mask", transmit_args.mask_out,
                         "Loss mask path (default: <out>.mask)");
    transmit->add_option("--loss-prob", transmit_args.loss_prob,
                         "Per-packet drop probability [0, 1]");
    transmit->add_option("--seed", transmit_args.seed, "Channel seed");

    ConcealArgs conceal_args;
    CLI::App* conceal = app.add_subcommand("conceal", "Decode a lossy stream and conceal losses");
    conceal->add_option("stream", conceal_args.stream_path, "Surviving stream")->required();
    conceal->add_option("mask", conceal_args.mask_path, "Loss mask file")->required();
    conceal->add_option("--out", conceal_args.out, "Output PGM path")->required();
    conceal->add_option("--gray", conceal_args.gray_out,
                        "Also write the pre-concealment raster (lost blocks gray)");

    EvaluateArgs evaluate_args;
    CLI::App* evaluate = app.add_subcommand("evaluate", "Sweep loss probabilities, report PSNR");
    evaluate->add_option("inputs", evaluate_args.inputs, "Input PGM images")->required();
    evaluate->add_option("--out", evaluate_args.out_dir, "Output directory")
        ->envname("ESL_OUT_DIR");
    evaluate->add_option("--loss-prob", evaluate_args.loss_probs,
                         "Loss probabilities (default 0.01 0.05 0.10 0.20 0.30 0.50 0.70)");
    evaluate->add_option("--trials", evaluate_args.trials, "Trials per (image, p) point");
    evaluate->add_option("--seed", evaluate_args.seed, "Base seed; trial t uses seed + t");
    evaluate->add_option("--edge-threshold", evaluate_args.edge_threshold, "Edge threshold");
    evaluate->add_option("--column-offset", evaluate_args.column_offset, "Edge bit column");

    PipelineArgs pipeline_args;
    CLI::App* pipeline =
        app.add_subcommand("pipeline", "embed + transmit + conceal + PSNR in one go");
    pipeline->add_option("input", pipeline_args.input, "Input PGM image")->required();
    pipeline->add_option("--out", pipeline_args.out_dir, "Output directory")
        ->envname("ESL_OUT_DIR");
    pipeline->add_option("--loss-prob", pipeline_args.loss_prob, "Drop probability [0, 1]");
    pipeline->add_option("--seed", pipeline_args.seed, "Channel seed");
    pipeline->add_option("--edge-threshold", pipeline_args.edge_threshold, "Edge threshold");
    pipeline->add_option("--column-offset", pipeline_args.column_offset, "Edge bit column");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (embed->parsed())
            run_embed(embed_args);
        else if (transmit->parsed())
            run_transmit(transmit_args);
        else if (conceal->parsed())
            run_conceal(conceal_args);
        else if (evaluate->parsed())
            run_evaluate(evaluate_args);
        else if (pipeline->parsed())
            run_pipeline(pipeline_args);
    } catch (const esl::ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const esl::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const esl::DecodeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const esl::EncodeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const esl::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
