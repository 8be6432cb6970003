#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "killing3/killing3.h"

TEST(CApi, SpecLifecycle) {
  k3_spec* s = nullptr;
  ASSERT_EQ(k3_spec_parse("catalog = hopf\nR = 2\n", nullptr, &s), K3_OK);
  EXPECT_STREQ(k3_spec_name(s), "hopf");
  k3_curvature c;
  ASSERT_EQ(k3_curvature_at(s, 0.5, 0.1, &c), K3_OK);
  EXPECT_NEAR(c.ric_tt, 0.5, 1e-12);
  EXPECT_NEAR(c.S, 1.5, 1e-12);
  EXPECT_NEAR(c.spectrum[0], 0.5, 1e-10);
  EXPECT_LT(c.cy_norm, 1e-10);
  ASSERT_EQ(k3_spec_set_lorentzian(s, 1), K3_OK);
  ASSERT_EQ(k3_curvature_at(s, 0.5, 0.1, &c), K3_OK);
  EXPECT_NEAR(c.S, 2.5, 1e-12);
  EXPECT_TRUE(std::isnan(c.cy_norm));
  k3_spec_free(s);
}

TEST(CApi, CatalogAndComponents) {
  const char* keys[] = {"omega0"};
  const double values[] = {1.0};
  k3_spec* s = nullptr;
  ASSERT_EQ(k3_spec_catalog("nil", keys, values, 1, &s), K3_OK);
  double g[9];
  ASSERT_EQ(k3_metric_components(s, 2.0, 0.0, g), K3_OK);
  EXPECT_NEAR(g[2], 2.0, 1e-15);
  EXPECT_EQ(g[2], g[6]);
  k3_spec_free(s);
}

TEST(CApi, ErrorsAndLastMessage) {
  k3_spec* s = nullptr;
  EXPECT_EQ(k3_spec_parse("catalog = hopf\nR = -1\n", nullptr, &s), K3_ERR_BAD_PARAMS);
  EXPECT_NE(std::string(k3_last_error()).find("radius"), std::string::npos);
  EXPECT_EQ(k3_exit_class(K3_ERR_BAD_PARAMS), 2);
  EXPECT_EQ(k3_spec_parse("catalog = cube\n", nullptr, &s), K3_ERR_UNKNOWN_CATALOG_NAME);
  EXPECT_EQ(k3_spec_parse("oops\n", nullptr, &s), K3_ERR_PARSE);
  EXPECT_STREQ(k3_status_name(K3_ERR_PARSE), "ParseError");
  EXPECT_EQ(k3_spec_load("/nonexistent/spec.k3", &s), K3_ERR_IO);
  EXPECT_EQ(k3_spec_parse(nullptr, nullptr, &s), K3_ERR_BAD_PARAMS);
  ASSERT_EQ(k3_spec_parse("catalog = hopf\n", nullptr, &s), K3_OK);
  EXPECT_STREQ(k3_last_error(), "");
  double g[9];
  EXPECT_EQ(k3_metric_components(s, 0.0, 0.0, g), K3_ERR_DOMAIN);
  EXPECT_EQ(k3_exit_class(K3_ERR_DOMAIN), 3);
  k3_spec_free(s);
}

TEST(CApi, RunAndRender) {
  k3_run_config cfg;
  k3_run_config_init(&cfg);
  EXPECT_EQ(cfg.seed, 42u);
  cfg.command = "flatness";
  cfg.spec_text = "catalog = nil\nomega0 = 1\n";
  cfg.grid = "0:1:4,0:1:4";
  cfg.expect = "flat";
  k3_report* r = nullptr;
  ASSERT_EQ(k3_run(&cfg, &r), K3_OK);
  EXPECT_EQ(k3_report_passed(r), 0);
  EXPECT_EQ(k3_report_exit_code(r), 1);
  const char* verdict = nullptr;
  ASSERT_EQ(k3_report_verdict(r, "flatness", &verdict), K3_OK);
  EXPECT_STREQ(verdict, "NotFlat");
  const char* text = nullptr;
  ASSERT_EQ(k3_report_render(r, K3_FORMAT_JSONL, &text), K3_OK);
  k3_report* back = nullptr;
  ASSERT_EQ(k3_report_parse_jsonl(text, &back), K3_OK);
  double a = 0, b = 0;
  ASSERT_EQ(k3_report_max_residual(r, "wpde", &a), K3_OK);
  ASSERT_EQ(k3_report_max_residual(back, "wpde", &b), K3_OK);
  EXPECT_EQ(a, b);
  EXPECT_EQ(k3_report_point_count(back), k3_report_point_count(r));
  EXPECT_EQ(k3_report_max_residual(r, "nope", &a), K3_ERR_BAD_PARAMS);
  k3_report_free(back);
  k3_report_free(r);
}

TEST(CApi, RunFailures) {
  k3_run_config cfg;
  k3_run_config_init(&cfg);
  cfg.command = "explode";
  cfg.spec_text = "catalog = flat\n";
  cfg.grid = "0:1:3,0:1:3";
  k3_report* r = nullptr;
  EXPECT_EQ(k3_run(&cfg, &r), K3_ERR_BAD_PARAMS);
  cfg.command = "analyze";
  cfg.grid = "0:1";
  EXPECT_EQ(k3_run(&cfg, &r), K3_ERR_PARSE);
  EXPECT_EQ(k3_run(nullptr, &r), K3_ERR_BAD_PARAMS);
}
