#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "horadam.h"

#define CHECK(cond)                                                    \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "check failed at line %d: %s\n", __LINE__, #cond); \
      return 1;                                                        \
    }                                                                  \
  } while (0)

int main(void) {
  HoradamParamsC fib;
  CHECK(horadam_family_params(HORADAM_FAMILY_FIBONACCI, &fib) == HORADAM_STATUS_OK);

  double seq[5];
  CHECK(horadam_sequence(fib, 1.0, seq, 5) == HORADAM_STATUS_OK);
  CHECK(seq[4] == 5.0);

  HoradamSpec *spec = NULL;
  CHECK(horadam_spec_new(HORADAM_CLASS_MOCANU, 2.0, fib, 0.5, &spec) ==
        HORADAM_STATUS_ALPHA_OUT_OF_RANGE);
  CHECK(spec == NULL);
  CHECK(strstr(horadam_last_error_message(), "alpha") != NULL);

  CHECK(horadam_spec_new(HORADAM_CLASS_MOCANU, 0.5, fib, 0.5, &spec) == HORADAM_STATUS_OK);
  HoradamBounds b;
  CHECK(horadam_spec_bounds(spec, 1.0, &b) == HORADAM_STATUS_OK);
  CHECK(isfinite(b.a2_bound) && b.a2_bound > 0.0);
  CHECK(b.fs_branch == HORADAM_BRANCH_INNER);

  double nu[] = {0.0, 1.0, 3.0};
  HoradamVerifySummary s;
  CHECK(horadam_spec_verify(spec, nu, 3, 2000, 7, false, &s) == HORADAM_STATUS_OK);
  CHECK(s.trials == 2000 && s.violations == 0);

  char *json = NULL;
  CHECK(horadam_spec_verify_json(spec, nu, 3, 100, 7, true, &json) == HORADAM_STATUS_OK);
  CHECK(strstr(json, "\"violations\":0") != NULL);
  horadam_string_free(json);

  horadam_spec_free(spec);
  printf("ok %s\n", horadam_version());
  return 0;
}
