#include "doctest.h"
#include "seasonlv/commands.hpp"
#include "testing.hpp"

using namespace seasonlv;

TEST_CASE("classify report of the class-26 example") {
  const CommandOutput out = classify_report(testing::example("class26"), true);
  CHECK(out.status == kExitOk);
  CHECK(out.report["class_id"] == 26);
  CHECK(out.report["oracle"]["agrees"] == true);
  CHECK(out.report["degenerate_flags"].empty());
  CHECK_FALSE(out.report.contains("theta"));
  for (const char* key : {"permutation", "signature", "gammas", "betas", "detA", "r"}) CHECK(out.report.contains(key));
}

TEST_CASE("classify report carries theta for class 27") {
  const CommandOutput out = classify_report(testing::example("class27"), false);
  CHECK(out.report["class_id"] == 27);
  REQUIRE(out.report.contains("theta"));
  CHECK(std::abs(out.report["theta"]["theta"].get<double>()) < 1e-12);
}

TEST_CASE("inadmissible instances map to status 2") {
  const ModelParams p = testing::example("inadmissible");
  CHECK(classify_report(p, false).status == kExitDegenerate);
  CHECK(fixed_points_report(p, {}, 0).status == kExitDegenerate);
  CHECK(verify_index_report(p, {}, 0).status == kExitDegenerate);
}

TEST_CASE("fixed-points report includes the index formula") {
  const CommandOutput out = fixed_points_report(testing::example("class29"), {}, 0);
  CHECK(out.status == kExitOk);
  CHECK(out.report["index_formula"]["status"] == "ok");
  CHECK(out.report["index_formula"]["lhs"] == 1);
  const CommandOutput deg = fixed_points_report(testing::example("class26"), {}, 0);
  CHECK(deg.status == kExitOk);
  CHECK(deg.report["index_formula"]["status"] == "degenerate");
}

TEST_CASE("sweep is reproducible from its seed") {
  SweepSpec spec;
  spec.samples = 6;
  const SweepOutput a = sweep_report(spec, {}, 42, 1);
  const SweepOutput b = sweep_report(spec, {}, 42, 3);
  CHECK(a.samples == b.samples);
  CHECK(a.summary == b.summary);
  CHECK(a.summary["index_pass_rate"] == 1.0);
}
