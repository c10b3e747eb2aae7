#include "semistab_app/acceptance.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App cli{"acceptance suite"};
    std::string suite = "fast";
    std::vector<int> criteria;
    cli.add_option("--suite", suite, "fast or full")->check(CLI::IsMember({"fast", "full"}));
    cli.add_option("--criterion", criteria, "criteria to run (default: all)")
        ->check(CLI::Range(1, semistab::app::kCriterionCount));
    CLI11_PARSE(cli, argc, argv);
    return semistab::app::run_check(semistab::app::parse_suite(suite), std::cout, criteria);
}
