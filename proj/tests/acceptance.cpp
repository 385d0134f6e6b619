// Acceptance criteria, one PASS/FAIL line each.
//   gawq_acceptance [--criterion N]...
#include "gawq/verify.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"gawq acceptance suite"};
    std::vector<int> ids;
    std::string scratch = (std::filesystem::temp_directory_path() / "gawq_acceptance").string();
    app.add_option("--criterion", ids, "criterion id (repeatable); all when omitted")->check(CLI::Range(1, 11));
    app.add_option("--scratch", scratch, "directory for intermediate files");
    CLI11_PARSE(app, argc, argv);
    if (ids.empty()) ids = gawq::criterion_ids();

    std::filesystem::create_directories(scratch);
    gawq::VerifyContext ctx(scratch);
    bool all = true;
    for (int id : ids) {
        const auto r = gawq::run_criterion(id, ctx);
        std::cout << gawq::format_result(r) << std::endl;
        all = all && r.pass;
    }
    return all ? 0 : 1;
}
