// Acceptance suite: runs the whole built-in battery, one line per criterion.
// Exit code 0 iff every criterion passed (findings are allowed).

#include <chrono>
#include <cstdio>

#include "padic/battery.hpp"

int main() {
    using namespace padic;
    BatteryOptions opts;  // precision 20, trunc 64, fixed seed
    bool all_ok = true;
    auto wall0 = std::chrono::steady_clock::now();
    for (const auto& crit : example_battery()) {
        auto t0 = std::chrono::steady_clock::now();
        Certificate cert;
        try {
            cert = crit.run(opts);
        } catch (const Error& e) {
            cert.fail(crit.id, std::string("threw: ") + e.what());
        }
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                        .count();
        bool ok = cert.ok();
        std::printf("%-4s %-4s (%8.1f ms)  %s\n", crit.id.c_str(), ok ? "pass" : "FAIL", ms,
                    crit.title.c_str());
        for (const auto& c : cert.checks)
            if (c.status != CheckStatus::pass)
                std::printf("     %-8s %s%s%s\n", to_string(c.status).c_str(), c.name.c_str(),
                            c.detail.empty() ? "" : " -- ", c.detail.c_str());
        all_ok = all_ok && ok;
    }
    double total =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - wall0).count();
    std::printf("%s in %.1f ms total\n", all_ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAILED",
                total);
    return all_ok ? 0 : 1;
}
