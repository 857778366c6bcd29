#include "mrdist/config.hpp"
#include "mrdist/errors.hpp"
#include "mrdist/runner.hpp"

#include <CLI11.hpp>

#include <clocale>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");

    CLI::App app{"mrdist - multiresolution analysis of distributions"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    CLI::App* run = app.add_subcommand("run", "execute a pipeline described by a config file");
    run->add_option("-c,--config", config_path, "INI config file")->required();
    run->add_option("-o,--out", out_dir, "output directory (created if missing)")->required();

    std::string what = "all";
    CLI::App* list = app.add_subcommand("list", "print the built-in catalogs");
    list->add_option("what", what, "pipelines|filters|distributions|batteries|all");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            mrdist::Config cfg = mrdist::Config::parse_file(config_path);
            return mrdist::run_pipeline(cfg, out_dir);
        }
        return mrdist::run_list(what);
    } catch (const mrdist::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const mrdist::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
