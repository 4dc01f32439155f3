// One test per acceptance criterion. Each prints a single PASS/FAIL line.

#include <gtest/gtest.h>

#include <iostream>

#include "rankduel/suites.hpp"

using namespace rankduel;

namespace {

void gate(Claim (*fn)(const SuiteOptions&)) {
  const Claim c = fn(SuiteOptions{});
  std::cout << c.id << " " << (c.pass ? "PASS" : "FAIL") << "  " << c.title << "  [" << c.observed << "] ("
            << static_cast<long long>(c.runtime_ms) << " ms)" << std::endl;
  EXPECT_TRUE(c.pass) << c.id << " expected " << c.expected << "\n  params: " << c.params;
}

}  // namespace

TEST(Acceptance, AC1) { gate(claim_depth_formulas); }
TEST(Acceptance, AC2) { gate(claim_path_online); }
TEST(Acceptance, AC3) { gate(claim_cycle_online); }
TEST(Acceptance, AC4) { gate(claim_path_strategy); }
TEST(Acceptance, AC5) { gate(claim_path_sharpness); }
TEST(Acceptance, AC6) { gate(claim_low_high_split); }
TEST(Acceptance, AC7) { gate(claim_parameter_chain); }
TEST(Acceptance, AC8) { gate(claim_minor_closure); }
TEST(Acceptance, AC9) { gate(claim_star_numbers); }
TEST(Acceptance, AC10) { gate(claim_leafy_trees); }
TEST(Acceptance, AC11) { gate(claim_extraction_and_adapter); }

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  return RUN_ALL_TESTS();
}
