#include "symkit/bench.hpp"
#include "symkit/shell.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <unistd.h>

namespace {

int run_shell(const std::string& script) {
    symkit::Session session;
    if (!script.empty()) {
        std::ifstream in(script);
        if (!in) {
            std::cerr << "cannot open " << script << '\n';
            return 1;
        }
        return session.run(in, std::cout);
    }
    const bool tty = isatty(fileno(stdin)) != 0;
    return session.run(std::cin, std::cout, tty ? "> " : "");
}

int run_bench(const std::string& id, long n, int reps, const std::string& csv_path) {
    std::ofstream csv;
    if (!csv_path.empty()) {
        const bool fresh = !std::filesystem::exists(csv_path) || std::filesystem::file_size(csv_path) == 0;
        csv.open(csv_path, std::ios::app);
        if (!csv) {
            std::cerr << "cannot open " << csv_path << '\n';
            return 1;
        }
        if (fresh) {
            csv << symkit::bench_csv_header() << '\n';
        }
    }
    std::cout << symkit::bench_csv_header() << '\n';
    for (int r = 0; r < reps; ++r) {
        symkit::BenchRecord rec;
        try {
            rec = symkit::bench_run(id, n);
        } catch (const symkit::BenchFailure& e) {
            std::cerr << "assertion failed: " << e.what() << '\n';
            return 2;
        }
        const std::string line = symkit::bench_csv_line(rec);
        std::cout << line << '\n';
        if (csv.is_open()) {
            csv << line << '\n';
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbolic computation kernel"};
    app.require_subcommand(1);

    std::string script;
    auto* shell = app.add_subcommand("shell", "interactive shell");
    shell->add_option("--script", script, "replay statements from FILE")->check(CLI::ExistingFile);

    std::string id;
    long n = -1;
    int reps = 1;
    std::string csv;
    auto* bench = app.add_subcommand("bench", "run one benchmark");
    bench->add_option("--test", id, "test id")->required();
    bench->add_option("--n", n, "size parameter (default depends on the test)");
    bench->add_option("--reps", reps, "repetitions")->check(CLI::PositiveNumber);
    bench->add_option("--csv", csv, "append records to PATH");

    auto* list = app.add_subcommand("list", "list benchmark ids");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*shell) {
            return run_shell(script);
        }
        if (*bench) {
            return run_bench(id, n < 0 ? symkit::bench_default_n(id) : n, reps, csv);
        }
        if (*list) {
            for (const auto& t : symkit::bench_tests()) {
                std::cout << t << " (default n=" << symkit::bench_default_n(t) << ")\n";
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
