// esl-mkpgm: generate the synthetic grayscale test images as PGM files.

#include <iostream>

#include <CLI11.hpp>

#include "esl/error.hpp"
#include "esl/synth.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Synthetic PGM generator (scene, step, testcard)"};
    app.require_subcommand(1);

    int width = 512;
    int height = 512;
    std::string out;
    app.add_option("--width", width, "Image width")->capture_default_str();
    app.add_option("--height", height, "Image height")->capture_default_str();
    app.add_option("--out", out, "Output PGM path")->required();

    std::uint64_t seed = 1;
    CLI::App* scene = app.add_subcommand("scene", "Smooth shaded scene with disks");
    scene->fallthrough();
    scene->add_option("--seed", seed, "Scene seed")->capture_default_str();

    int step_col = 256;
    int left = 0;
    int right = 200;
    CLI::App* step = app.add_subcommand("step", "Vertical two-level step");
    step->fallthrough();
    step->add_option("--step-col", step_col, "First column of the right level");
    step->add_option("--left", left, "Left level [0, 255]");
    step->add_option("--right", right, "Right level [0, 255]");

    CLI::App* testcard = app.add_subcommand("testcard", "Fixed gradient/ring/bar card");
    testcard->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        esl::Image image;
        if (scene->parsed())
            image = esl::synth_scene(width, height, seed);
        else if (step->parsed()) {
            if (left < 0 || left > 255 || right < 0 || right > 255)
                throw esl::ArgumentError("step levels must be in [0, 255]");
            image = esl::synth_step(width, height, step_col, std::uint8_t(left),
                                    std::uint8_t(right));
        } else if (testcard->parsed())
            image = esl::synth_testcard(width, height);
        esl::write_pgm(image, out);
    } catch (const esl::ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const esl::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
