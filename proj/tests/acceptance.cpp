#include "ipdsaw/checks.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

// Usage: ipdsaw_acceptance [criterion ...]
int main(int argc, char** argv)
{
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
    int failures = 0;
    ipdsaw::checks::run_checks(ids, {}, [&](const ipdsaw::checks::CheckResult& r) {
        std::printf("%s\n", ipdsaw::checks::format_result(r).c_str());
        std::fflush(stdout);
        if (!r.pass) ++failures;
    });
    return failures == 0 ? 0 : 1;
}
