/* Exercises the C interface from plain C. */
#include "ncmatch/ncmatch.h"

#include <math.h>
#include <stdio.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                               \
  do {                                                             \
    if (!(cond)) {                                                 \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                  \
    }                                                              \
  } while (0)

int main(void) {
  EXPECT(strcmp(ncm_version(), "0.1.0") == 0);
  EXPECT(strcmp(ncm_status_name(NCM_OK), "ok") == 0);
  EXPECT(strcmp(ncm_status_name(NCM_E_NOT_231_AVOIDING), "Not231Avoiding") == 0);

  ncm_instance* inst = NULL;
  EXPECT(ncm_instance_generate("bnm-perm", "{\"sigma\": \"2,1,4,3\"}", 1, &inst) == NCM_OK);
  EXPECT(ncm_instance_point_count(inst) == 8);

  char* json = NULL;
  EXPECT(ncm_instance_to_json(inst, &json) == NCM_OK);
  EXPECT(json != NULL && strstr(json, "\"BNM\"") != NULL);
  ncm_instance* copy = NULL;
  EXPECT(ncm_instance_from_json(json, &copy) == NCM_OK);
  EXPECT(ncm_instance_point_count(copy) == 8);
  ncm_string_free(json);

  ncm_result* res = NULL;
  EXPECT(ncm_run(copy, "bt", &res) == NCM_OK);
  EXPECT(ncm_result_matched_points(res) == 8);
  EXPECT(ncm_result_bits_read(res) == 4);
  EXPECT(ncm_result_bits_written(res) == 4);
  EXPECT(ncm_result_is_perfect(res) == 1);
  char* report = NULL;
  EXPECT(ncm_result_report(res, &report) == NCM_OK);
  EXPECT(report != NULL && strstr(report, "\"perfect\": true") != NULL);
  ncm_string_free(report);
  char* svg = NULL;
  EXPECT(ncm_result_svg(res, &svg) == NCM_OK);
  EXPECT(svg != NULL && strstr(svg, "<svg") != NULL);
  ncm_string_free(svg);
  ncm_result_free(res);

  /* Errors come back as status codes with a message. */
  ncm_result* none = NULL;
  EXPECT(ncm_run(copy, "no-such-algorithm", &none) == NCM_E_BAD_INPUT);
  EXPECT(none == NULL);
  EXPECT(strlen(ncm_last_error()) > 0);
  EXPECT(ncm_run(copy, "asap", &none) == NCM_E_PRECONDITION);
  ncm_instance* bad = NULL;
  EXPECT(ncm_instance_generate("bnm-perm", "{\"sigma\": \"2,3,1\"}", 1, &bad) == NCM_E_NOT_231_AVOIDING);
  EXPECT(bad == NULL);
  EXPECT(ncm_instance_from_json("{not json", &bad) == NCM_E_BAD_INPUT);
  EXPECT(ncm_run(NULL, "bt", &none) == NCM_E_BAD_INPUT);
  ncm_instance_free(copy);
  ncm_instance_free(inst);

  char* out = NULL;
  int passed = 0;
  EXPECT(ncm_verify("bnm-lb", "{\"n\": 3}", &out, &passed) == NCM_OK);
  EXPECT(passed == 1);
  ncm_string_free(out);
  EXPECT(ncm_codec("catalan", "{\"n\": \"5\"}", &out) == NCM_OK);
  EXPECT(strstr(out, "42") != NULL);
  ncm_string_free(out);

  double v = 0;
  EXPECT(ncm_kl_divergence(0.125, 0.25, &v) == NCM_OK);
  EXPECT(fabs(v - 0.069593) < 1e-6);
  EXPECT(ncm_approx_lb_rate(0.95, 4, &v) == NCM_OK);
  EXPECT(fabs(v - 0.0029574666970577394) < 1e-12);
  EXPECT(ncm_approx_lb_rate(0.95, 3, &v) == NCM_E_DOMAIN_ERROR);

  ncm_instance_free(NULL);
  ncm_result_free(NULL);
  ncm_string_free(NULL);

  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  printf("C interface checks passed\n");
  return 0;
}
