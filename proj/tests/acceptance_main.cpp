#include <cstring>
#include <iostream>
#include <string>

#include "muskat/acceptance.hpp"

int main(int argc, char** argv) {
    bool slow = false;
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--slow") == 0) {
            slow = true;
        } else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only = std::stoi(argv[++i]);
        } else {
            std::cerr << "usage: acceptance [--slow] [--only <id>]\n";
            return 2;
        }
    }
    return muskat::acceptance_suite(std::cout, slow, only);
}
