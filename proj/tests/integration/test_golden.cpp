#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>

#include "golden_pipeline.hpp"

// Set ROADSAFE_UPDATE_GOLDEN=1 to rewrite the committed files after an
// intentional output change.
TEST(Golden, SeededScenarioIsByteExact) {
    const auto out = golden::run();
    const bool update = std::getenv("ROADSAFE_UPDATE_GOLDEN") != nullptr;
    for (std::size_t i = 0; i < std::size(golden::files); ++i) {
        const auto path = golden::dir() / golden::files[i];
        if (update) {
            std::ofstream(path, std::ios::binary) << golden::get(out, i);
            continue;
        }
        ASSERT_TRUE(std::filesystem::exists(path)) << path;
        EXPECT_TRUE(golden::slurp(path) == golden::get(out, i)) << golden::files[i] << " differs from " << path;
    }
}

TEST(Golden, RerunIsIdentical) {
    const auto a = golden::run();
    const auto b = golden::run();
    for (std::size_t i = 0; i < std::size(golden::files); ++i) EXPECT_EQ(golden::get(a, i), golden::get(b, i));
}
