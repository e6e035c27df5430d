#include <iostream>
#include <string>
#include <vector>

#include "motivic/report.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return motivic::run(args, std::cout, std::cerr);
}
