#include <cstdlib>
#include <iostream>
#include <set>
#include <string>

#include "criteria.hpp"

// Usage: acceptance [id ...]; no ids runs every criterion.
int main(int argc, char** argv)
{
    std::set<int> only;
    for (int i = 1; i < argc; ++i) {
        only.insert(std::atoi(argv[i]));
    }
    int failed = 0;
    int ran = 0;
    for (const auto& c : opdop::acceptance::criteria()) {
        if (!only.empty() && only.count(c.id) == 0) {
            continue;
        }
        const auto r = opdop::acceptance::run(c);
        std::cout << opdop::acceptance::format(r) << std::endl;
        failed += r.pass ? 0 : 1;
        ++ran;
    }
    std::cout << (ran - failed) << "/" << ran << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
