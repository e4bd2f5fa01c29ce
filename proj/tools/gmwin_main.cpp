#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gmwin/errors.hpp"
#include "gmwin/job.hpp"

namespace {

struct Args {
    std::string file;
    std::string format = "table";
    std::optional<long long> order;
    std::optional<std::string> window;
};

int execute(const std::string& op, const Args& args) {
    std::ifstream in(args.file);
    if (!in) {
        std::cerr << "cannot open " << args.file << "\n";
        return 2;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();

    gmwin::RunOptions options;
    options.machine = args.format == "machine";
    options.order = args.order;
    if (args.window) {
        const auto dots = args.window->find("..");
        try {
            if (dots == std::string::npos) throw std::invalid_argument("");
            options.window = {std::stoll(args.window->substr(0, dots)),
                              std::stoll(args.window->substr(dots + 2))};
        } catch (const std::exception&) {
            std::cerr << "--window expects lo..hi\n";
            return 2;
        }
    }

    try {
        const gmwin::JobSpec job = gmwin::parse_input(buffer.str(), op);
        const gmwin::Report report = gmwin::run(job, options);
        std::cout << report.text(options.machine);
        return 0;
    } catch (const gmwin::certification_error& e) {
        std::cerr << "certification failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact window, wall-crossing and fixed-point index computations for Gm-actions"};
    app.require_subcommand(1);

    Args args;
    std::string selected;
    for (const std::string& op : gmwin::kJobOps) {
        CLI::App* sub = app.add_subcommand(op, "run a job file with op = " + op);
        sub->add_option("file", args.file, "job input file")->required();
        sub->add_option("--format", args.format, "table or machine")
            ->check(CLI::IsMember({"table", "machine"}));
        sub->add_option("--order", args.order, "truncation / stability bound override");
        sub->add_option("--window", args.window, "weight window lo..hi");
        sub->callback([&selected, op]() { selected = op; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return execute(selected, args);
}
