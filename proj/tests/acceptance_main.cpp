// Acceptance suite: one pass/fail line per criterion, full profile by
// default.  FRACSPEC_ACCEPTANCE_PROFILE=quick switches the reduced sizes;
// FRACSPEC_THREADS caps the worker count.

#include <cstdlib>
#include <cstring>
#include <iostream>

#include "fracspec/verify.hpp"

int main(int argc, char** argv) {
    using namespace fracspec;

    verify::Profile profile = verify::Profile::full;
    if (const char* env = std::getenv("FRACSPEC_ACCEPTANCE_PROFILE")) {
        if (std::strcmp(env, "quick") == 0) profile = verify::Profile::quick;
    }
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--quick") == 0) profile = verify::Profile::quick;
    }
    unsigned threads = 0;
    if (const char* env = std::getenv("FRACSPEC_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) threads = static_cast<unsigned>(v);
    }

    const auto results = verify::run_all(profile, threads, &std::cout);
    int failures = 0;
    for (const auto& r : results) failures += r.passed ? 0 : 1;
    std::cout << (failures == 0 ? "acceptance: all criteria passed"
                                : "acceptance: FAILURES") << " (" << results.size() - failures
              << "/" << results.size() << ")\n";
    return failures == 0 ? 0 : 1;
}
